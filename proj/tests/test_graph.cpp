#include <doctest.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "kwig/graph.hpp"
#include "kwig/rng.hpp"

using namespace kwig;

namespace {

ImplicitGraph scheme_graph(std::uint64_t n, std::uint32_t k, DyadicProb p,
                           std::vector<std::uint64_t> seed) {
  VariableScheme s;
  s.M = pair_count(n);
  s.k = k;
  s.p = p;
  s.field = scheme_field(s.M, p.ell);
  s.seed = std::move(seed);
  s.orientations = OrientationMap::all_standard(s.M);
  return ImplicitGraph{GraphParams{n, p, k}, std::make_shared<SchemeOracle>(std::move(s))};
}

}  // namespace

TEST_CASE("edge indices pack pairs contiguously by upper endpoint") {
  CHECK(edge_index(0, 1, 4) == 0);
  CHECK(edge_index(0, 2, 4) == 1);
  CHECK(edge_index(1, 2, 4) == 2);
  CHECK(edge_index(0, 3, 4) == 3);
  CHECK(edge_index(1, 3, 4) == 4);
  CHECK(edge_index(2, 3, 4) == 5);
  CHECK(pair_count(4) == 6);
  CHECK(pair_count(1) == 0);
  CHECK(pair_count(65536) == 65536ull * 65535 / 2);

  // The numbering is a bijection onto 0..C(n,2)-1.
  const std::uint64_t n = 50;
  std::vector<bool> seen(pair_count(n), false);
  for (std::uint64_t v = 1; v < n; ++v)
    for (std::uint64_t u = 0; u < v; ++u) {
      const std::uint64_t idx = edge_index(u, v, n);
      REQUIRE(idx < seen.size());
      REQUIRE_FALSE(seen[idx]);
      seen[idx] = true;
    }

  CHECK_THROWS_AS(edge_index(2, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(edge_index(0, 4, 4), std::out_of_range);
}

TEST_CASE("generated graphs answer edges consistently with their scheme") {
  Rng rng(17, "gen");
  const DyadicProb p = DyadicProb::make(1, 2);
  ImplicitGraph g = make_graph(30, p, 4, rng);
  CHECK(g.params.n == 30);
  CHECK(g.params.k == 4);
  CHECK(g.params.p == p);

  ExplicitGraph mat = materialize(g);
  REQUIRE(mat.n() == 30);
  std::uint64_t edges = 0;
  for (std::uint64_t v = 1; v < 30; ++v)
    for (std::uint64_t u = 0; u < v; ++u) {
      REQUIRE(mat.edge(u, v) == g.has_edge(u, v));
      REQUIRE(mat.edge(v, u) == g.has_edge(v, u));
      edges += mat.edge(u, v);
    }
  CHECK(mat.edge_count() == edges);

  for (std::uint64_t v = 0; v < 30; ++v) {
    REQUIRE(implicit_degree(g, v) == mat.degree(v));
    const auto nbrs = implicit_neighbors(g, v);
    REQUIRE(nbrs.size() == mat.degree(v));
    for (std::size_t i = 1; i < nbrs.size(); ++i) REQUIRE(nbrs[i - 1] < nbrs[i]);
    for (std::uint64_t u : nbrs) REQUIRE(mat.edge(u, v));
  }

  CHECK_THROWS_AS(make_graph(1, p, 2, rng), std::invalid_argument);
}

TEST_CASE("edge lists come back in edge-index order") {
  ImplicitGraph g = scheme_graph(4, 2, DyadicProb::make(1, 1), {0, 1});
  // Q(j) = j over GF(8), threshold 4: exactly indices 0..3 are edges.
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(0, 3));
  CHECK_FALSE(g.has_edge(1, 3));
  CHECK_FALSE(g.has_edge(2, 3));

  ExplicitGraph mat = materialize(g);
  const auto list = mat.edge_list();
  REQUIRE(list.size() == 4);
  CHECK(list[0] == std::pair<std::uint32_t, std::uint32_t>(0, 1));
  CHECK(list[1] == std::pair<std::uint32_t, std::uint32_t>(0, 2));
  CHECK(list[2] == std::pair<std::uint32_t, std::uint32_t>(1, 2));
  CHECK(list[3] == std::pair<std::uint32_t, std::uint32_t>(0, 3));
}

TEST_CASE("intersection multiplies densities and keeps joint exactness") {
  const DyadicProb half = DyadicProb::make(1, 1);
  const std::uint64_t m = pair_count(4);
  const FieldSpec f = scheme_field(m, 1);
  REQUIRE(f.order() == 8);

  // Exhaust both coefficient spaces: 64 x 64 seed pairs, 6 potential edges.
  std::uint64_t single[6] = {};
  std::uint64_t joint[6][6][4] = {};
  for (std::uint64_t sa = 0; sa < 64; ++sa)
    for (std::uint64_t sb = 0; sb < 64; ++sb) {
      ImplicitGraph a = scheme_graph(4, 2, half, {sa & 7, sa >> 3});
      ImplicitGraph b = scheme_graph(4, 2, half, {sb & 7, sb >> 3});
      ImplicitGraph g = intersect(a, b);
      bool bit[6];
      for (std::uint64_t v = 1; v < 4; ++v)
        for (std::uint64_t u = 0; u < v; ++u) bit[edge_index(u, v, 4)] = g.has_edge(u, v);
      for (int i = 0; i < 6; ++i) {
        single[i] += bit[i];
        for (int j = i + 1; j < 6; ++j) joint[i][j][bit[i] | (bit[j] << 1)] += 1;
      }
    }
  // Product density 1/4 over 4096 equally likely seed pairs.
  for (int i = 0; i < 6; ++i) CHECK(single[i] == 1024);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      REQUIRE(joint[i][j][0] == 2304);
      REQUIRE(joint[i][j][1] == 768);
      REQUIRE(joint[i][j][2] == 768);
      REQUIRE(joint[i][j][3] == 256);
    }

  ImplicitGraph a = scheme_graph(4, 2, half, {1, 2});
  ImplicitGraph b = scheme_graph(4, 3, half, {3, 4, 0});
  ImplicitGraph g = intersect(a, b);
  CHECK(g.params.p == DyadicProb::make(1, 2));
  CHECK(g.params.k == 2);
  for (std::uint64_t v = 1; v < 4; ++v)
    for (std::uint64_t u = 0; u < v; ++u)
      REQUIRE(g.has_edge(u, v) == (a.has_edge(u, v) && b.has_edge(u, v)));
}

TEST_CASE("intersection rejects mismatched graphs and bounded tree depth") {
  Rng rng(3, "isect");
  const DyadicProb half = DyadicProb::make(1, 1);
  ImplicitGraph a = make_graph(6, half, 2, rng);
  ImplicitGraph b = make_graph(7, half, 2, rng);
  CHECK_THROWS_AS(intersect(a, b), std::invalid_argument);

  ImplicitGraph chain = make_graph(6, DyadicProb::make(1, 1), 2, rng);
  for (int depth = 2; depth <= 8; ++depth) {
    ImplicitGraph leaf = make_graph(6, DyadicProb::make(1, 1), 2, rng);
    chain = intersect(chain, leaf);
    CHECK(chain.oracle->tree_depth() == depth);
  }
  ImplicitGraph leaf = make_graph(6, DyadicProb::make(1, 1), 2, rng);
  CHECK_THROWS_AS(intersect(chain, leaf), std::length_error);
}

TEST_CASE("explicit graphs maintain degrees, counts, and complements") {
  ExplicitGraph g(5);
  CHECK(g.n() == 5);
  CHECK(g.edge_count() == 0);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(3, 1);
  CHECK(g.edge(1, 0));
  CHECK(g.edge(2, 1));
  CHECK_FALSE(g.edge(0, 2));
  CHECK(g.degree(1) == 3);
  CHECK(g.degree(4) == 0);
  CHECK(g.edge_count() == 3);
  CHECK(g.min_degree() == 0);
  CHECK(g.max_degree() == 3);

  g.remove_edge(2, 1);
  CHECK_FALSE(g.edge(1, 2));
  CHECK(g.edge_count() == 2);

  ExplicitGraph c = g.complement();
  CHECK(c.edge_count() == 10 - 2);
  for (std::uint64_t v = 1; v < 5; ++v)
    for (std::uint64_t u = 0; u < v; ++u) REQUIRE(c.edge(u, v) == !g.edge(u, v));

  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 5), std::out_of_range);
  CHECK_THROWS_AS(ExplicitGraph(0), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitGraph(65537), std::invalid_argument);
}

TEST_CASE("materialization refuses graphs beyond its budget") {
  ImplicitGraph g = scheme_graph(4, 2, DyadicProb::make(1, 1), {0, 1});
  CHECK_THROWS_AS(materialize(g, 5), std::length_error);
  CHECK_NOTHROW(materialize(g, 6));
}

TEST_CASE("independent baseline sampling is deterministic and dense as requested") {
  const DyadicProb p = DyadicProb::make(3, 3);
  Rng r1(77, "gnp");
  Rng r2(77, "gnp");
  ExplicitGraph a = sample_gnp(40, p, r1);
  ExplicitGraph b = sample_gnp(40, p, r2);
  REQUIRE(a.n() == 40);
  for (std::uint64_t v = 1; v < 40; ++v)
    for (std::uint64_t u = 0; u < v; ++u) REQUIRE(a.edge(u, v) == b.edge(u, v));
  // 780 coins at 3/8: mean 292.5, comfortably inside [180, 400].
  CHECK(a.edge_count() > 180);
  CHECK(a.edge_count() < 400);

  Rng r3(78, "gnp");
  ExplicitGraph c = sample_gnp(40, p, r3);
  std::uint64_t diff = 0;
  for (std::uint64_t v = 1; v < 40; ++v)
    for (std::uint64_t u = 0; u < v; ++u) diff += a.edge(u, v) != c.edge(u, v);
  CHECK(diff > 0);
}
