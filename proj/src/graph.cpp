#include "kwig/graph.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace kwig {

std::uint64_t edge_index(std::uint64_t u, std::uint64_t v, std::uint64_t n) {
  if (u == v) throw std::invalid_argument("self-loops are not potential edges");
  if (u > v) std::swap(u, v);
  if (v >= n) throw std::out_of_range("vertex label out of range");
  return v * (v - 1) / 2 + u;
}

std::uint64_t pair_count(std::uint64_t n) {
  if (n > (std::uint64_t(1) << 32)) throw std::invalid_argument("vertex count too large");
  return n * (n - 1) / 2;
}

AndOracle::AndOracle(std::shared_ptr<const EdgeOracle> a, std::shared_ptr<const EdgeOracle> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (!a_ || !b_) throw std::invalid_argument("intersection needs two graphs");
  if (tree_depth() > k_max_oracle_depth) {
    throw std::length_error("oracle tree deeper than " + std::to_string(k_max_oracle_depth));
  }
}

int AndOracle::tree_depth() const {
  return 1 + std::max(a_->tree_depth(), b_->tree_depth());
}

ImplicitGraph make_graph(std::uint64_t n, DyadicProb p, std::uint32_t k, Rng& rng) {
  if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
  const std::uint64_t m = pair_count(n);
  VariableScheme s = scheme_new(m, k, p, OrientationMap::all_standard(m), rng);
  ImplicitGraph g;
  g.params = GraphParams{n, p, k};
  g.oracle = std::make_shared<SchemeOracle>(std::move(s));
  return g;
}

ImplicitGraph intersect(const ImplicitGraph& a, const ImplicitGraph& b) {
  if (a.params.n != b.params.n) {
    throw std::invalid_argument("intersection needs graphs on the same vertex set");
  }
  ImplicitGraph g;
  g.params.n = a.params.n;
  g.params.p = a.params.p.times(b.params.p);
  g.params.k = std::min(a.params.k, b.params.k);
  g.oracle = std::make_shared<AndOracle>(a.oracle, b.oracle);
  return g;
}

std::uint64_t implicit_degree(const ImplicitGraph& g, std::uint64_t v) {
  if (v >= g.params.n) throw std::out_of_range("vertex label out of range");
  std::uint64_t d = 0;
  for (std::uint64_t u = 0; u < g.params.n; ++u) {
    if (u != v && g.has_edge(u, v)) ++d;
  }
  return d;
}

std::vector<std::uint64_t> implicit_neighbors(const ImplicitGraph& g, std::uint64_t v) {
  if (v >= g.params.n) throw std::out_of_range("vertex label out of range");
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 0; u < g.params.n; ++u) {
    if (u != v && g.has_edge(u, v)) out.push_back(u);
  }
  return out;
}

ExplicitGraph::ExplicitGraph(std::uint64_t n) : n_(n), words_((n + 63) / 64) {
  if (n < 1 || n > (std::uint64_t(1) << 16)) {
    throw std::invalid_argument("explicit graphs support 1..65536 vertices");
  }
  bits_.assign(n_ * words_, 0);
}

void ExplicitGraph::add_edge(std::uint64_t u, std::uint64_t v) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex label out of range");
  bits_[u * words_ + (v >> 6)] |= std::uint64_t(1) << (v & 63);
  bits_[v * words_ + (u >> 6)] |= std::uint64_t(1) << (u & 63);
}

void ExplicitGraph::remove_edge(std::uint64_t u, std::uint64_t v) {
  if (u == v || u >= n_ || v >= n_) throw std::out_of_range("vertex label out of range");
  bits_[u * words_ + (v >> 6)] &= ~(std::uint64_t(1) << (v & 63));
  bits_[v * words_ + (u >> 6)] &= ~(std::uint64_t(1) << (u & 63));
}

std::uint64_t ExplicitGraph::degree(std::uint64_t v) const {
  const std::uint64_t* r = row(v);
  std::uint64_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

std::uint64_t ExplicitGraph::edge_count() const {
  std::uint64_t twice = 0;
  for (std::uint64_t v = 0; v < n_; ++v) twice += degree(v);
  return twice / 2;
}

std::uint64_t ExplicitGraph::min_degree() const {
  std::uint64_t best = ~std::uint64_t(0);
  for (std::uint64_t v = 0; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::uint64_t ExplicitGraph::max_degree() const {
  std::uint64_t best = 0;
  for (std::uint64_t v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> ExplicitGraph::edge_list() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint64_t v = 1; v < n_; ++v) {
    for (std::uint64_t u = 0; u < v; ++u) {
      if (edge(u, v)) out.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
  }
  return out;
}

ExplicitGraph ExplicitGraph::complement() const {
  ExplicitGraph c(n_);
  for (std::uint64_t v = 1; v < n_; ++v) {
    for (std::uint64_t u = 0; u < v; ++u) {
      if (!edge(u, v)) c.add_edge(u, v);
    }
  }
  return c;
}

ExplicitGraph materialize(const ImplicitGraph& g, std::uint64_t limit) {
  const std::uint64_t m = pair_count(g.params.n);
  if (m > limit) {
    throw std::length_error("refusing to materialize " + std::to_string(m) +
                            " potential edges (limit " + std::to_string(limit) + ")");
  }
  ExplicitGraph out(g.params.n);
  std::uint64_t index = 0;
  for (std::uint64_t v = 1; v < g.params.n; ++v) {
    for (std::uint64_t u = 0; u < v; ++u, ++index) {
      if (g.oracle->edge(u, v, index)) out.add_edge(u, v);
    }
  }
  return out;
}

ExplicitGraph sample_gnp(std::uint64_t n, DyadicProb p, Rng& rng) {
  ExplicitGraph out(n);
  for (std::uint64_t v = 1; v < n; ++v) {
    for (std::uint64_t u = 0; u < v; ++u) {
      if (rng.next_bits(p.ell) < p.num) out.add_edge(u, v);
    }
  }
  return out;
}

}  // namespace kwig
