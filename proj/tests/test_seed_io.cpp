#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwig/adversarial.hpp"
#include "kwig/graph.hpp"
#include "kwig/rng.hpp"
#include "kwig/seed_io.hpp"

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

std::string serialize(const ImplicitGraph& g) {
  std::ostringstream out(std::ios::binary);
  write_graph(g, out);
  return out.str();
}

ImplicitGraph deserialize(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return read_graph(in);
}

bool same_edges(const ImplicitGraph& a, const ImplicitGraph& b) {
  if (a.params.n != b.params.n) return false;
  for (std::uint64_t v = 1; v < a.params.n; ++v)
    for (std::uint64_t u = 0; u < v; ++u)
      if (a.has_edge(u, v) != b.has_edge(u, v)) return false;
  return true;
}

// Runs fn, which must throw std::runtime_error, and returns the message.
std::string load_failure(const std::string& bytes) {
  try {
    deserialize(bytes);
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return "";
}

bool fails_with(const std::string& bytes, const std::string& needle) {
  const std::string msg = load_failure(bytes);
  return msg.rfind("bad seed file", 0) == 0 && msg.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("plain graphs survive a write/read round trip byte for byte") {
  Rng rng(99, "io");
  ImplicitGraph g = make_graph(30, DyadicProb::make(1, 2), 4, rng);
  const std::string bytes = serialize(g);

  // Header: magic, format version, then a scheme-leaf node.
  REQUIRE(bytes.size() >= 6);
  CHECK(bytes.compare(0, 4, "KWIG") == 0);
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  CHECK(bytes.compare(6, 4, "KWIV") == 0);

  // M = C(30,2) = 435, k = 4, then coefficients and ceil(435/8) = 55
  // orientation bytes.
  CHECK(bytes.size() == 6 + 4 + 1 + 8 + 2 + 8 + 1 + 1 + 4 * 8 + 55);

  ImplicitGraph back = deserialize(bytes);
  CHECK(back.params.n == g.params.n);
  CHECK(back.params.k == g.params.k);
  CHECK(back.params.p == g.params.p);
  CHECK(same_edges(g, back));
  CHECK(serialize(back) == bytes);
}

TEST_CASE("file save and load match the stream form") {
  Rng rng(12, "io-file");
  ImplicitGraph g = make_graph(12, DyadicProb::make(3, 3), 3, rng);
  const std::string path = "seed_io_roundtrip.kwig";
  save_graph(g, path);

  ImplicitGraph back = load_graph(path);
  CHECK(same_edges(g, back));
  CHECK(serialize(back) == serialize(g));

  CHECK_THROWS_AS(load_graph("seed_io_no_such_file.kwig"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("intersection trees round trip with their structure intact") {
  Rng ra(5, "left");
  Rng rb(6, "right");
  Rng rc(7, "third");
  ImplicitGraph a = make_graph(20, DyadicProb::make(1, 1), 2, ra);
  ImplicitGraph b = make_graph(20, DyadicProb::make(1, 2), 3, rb);
  ImplicitGraph c = make_graph(20, DyadicProb::make(3, 2), 2, rc);
  ImplicitGraph tree = intersect(intersect(a, b), c);

  const std::string bytes = serialize(tree);
  CHECK(bytes[5] == 1);  // root node is an intersection
  CHECK(bytes[6] == 1);  // so is its first child

  ImplicitGraph back = deserialize(bytes);
  CHECK(back.params.n == 20);
  CHECK(back.params.p == tree.params.p);
  CHECK(back.params.k == tree.params.k);
  CHECK(back.oracle->tree_depth() == 3);
  CHECK(same_edges(tree, back));
  CHECK(serialize(back) == bytes);
}

TEST_CASE("plantings round trip through the compact block record") {
  BlockPlanting planted =
      plant_pattern(100, 4, PatternGraph::complete(4), 2, DyadicProb::make(1, 1), 7);
  const std::string bytes = serialize(planted.graph);
  CHECK(bytes[5] == 2);

  ImplicitGraph back = deserialize(bytes);
  CHECK(back.params.n == 100);
  CHECK(same_edges(planted.graph, back));
  CHECK(serialize(back) == bytes);

  // The stored prime must stay consistent with the (n, s) block design.
  std::string tampered = bytes;
  tampered[16] = char(tampered[16] + 1);
  CHECK(fails_with(tampered, "prime"));
}

TEST_CASE("edge export writes zero-based pairs in edge-index order") {
  // Seed (0, 1) makes the membership value of variable j equal j itself,
  // so exactly variables 0..3 fall below the threshold 4.
  ImplicitGraph g = scheme_graph(4, 2, DyadicProb::make(1, 1), {0, 1});
  std::ostringstream out;
  export_edges(g, out);
  CHECK(out.str() == "0 1\n0 2\n1 2\n0 3\n");

  std::ostringstream small;
  CHECK_THROWS_AS(export_edges(g, small, 5), std::length_error);
}

TEST_CASE("corrupted seed files are rejected with a reason") {
  Rng rng(3, "tamper");
  ImplicitGraph g = make_graph(6, DyadicProb::make(1, 1), 2, rng);
  const std::string good = serialize(g);
  // Layout: KWIG(4) ver(1) tag(1) KWIV(4) ver(1) M(8)@11 k(2)@19 num(8)@21
  // ell(1)@29 deg(1)@30 coeffs(16)@31 orientation(2)@47.
  REQUIRE(good.size() == 49);
  REQUIRE(deserialize(good).params.n == 6);

  std::string t;

  t = good;
  t[0] = 'X';
  CHECK(fails_with(t, "magic"));

  t = good;
  t[4] = 2;
  CHECK(fails_with(t, "version"));

  t = good;
  t[5] = 3;
  CHECK(fails_with(t, "tag"));

  t = good.substr(0, good.size() - 1);
  CHECK(fails_with(t, "truncated"));

  t = good + '\0';
  CHECK(fails_with(t, "trailing"));

  // 2/2^2 is 1/2 spelled without reducing.
  t = good;
  t[21] = 2;
  t[29] = 2;
  CHECK(fails_with(t, "lowest terms"));

  // M = 15 gives a 16-element field; a coefficient of 255 is outside it.
  t = good;
  t[31] = char(0xff);
  CHECK(fails_with(t, "coefficient"));

  t = good;
  t[30] = 9;
  CHECK(fails_with(t, "field degree"));

  // M = 15 uses bits 0..14; setting bit 15 leaves a stray orientation bit.
  t = good;
  t[48] = char(t[48] | 0x80);
  CHECK(fails_with(t, "orientation"));

  // M = 16 is not any C(n, 2).
  t = good;
  t[11] = 16;
  t[48] = 0;  // keep the orientation tail clean for the widened bitmap
  CHECK(fails_with(t, "choose"));

  t = good;
  t[19] = 0;
  CHECK(fails_with(t, "k"));
}

TEST_CASE("nesting depth is enforced while reading") {
  std::string bytes = "KWIG";
  bytes += '\x01';  // format version
  for (int i = 0; i < 9; ++i) bytes += '\x01';  // nine nested intersections
  CHECK(fails_with(bytes, "deeper"));
}
