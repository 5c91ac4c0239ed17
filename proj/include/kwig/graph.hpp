#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "kwig/scheme.hpp"

// Graphs come in two shapes.  An ImplicitGraph is a parameter block plus an
// edge oracle answering one potential edge at a time in O(poly k) — this is
// what scales to huge N.  An ExplicitGraph is a materialized bitset adjacency
// matrix for everything that needs whole-graph inspection.

namespace kwig {

// Potential edges {u, v}, u < v < n, are numbered v(v-1)/2 + u: all edges
// into vertex 1, then vertex 2, and so on.
std::uint64_t edge_index(std::uint64_t u, std::uint64_t v, std::uint64_t n);

std::uint64_t pair_count(std::uint64_t n);  // n choose 2

struct GraphParams {
  std::uint64_t n = 0;
  DyadicProb p;
  std::uint32_t k = 1;
};

class EdgeOracle {
 public:
  virtual ~EdgeOracle() = default;
  // u < v and index == edge_index(u, v, n); implementations may use either.
  virtual bool edge(std::uint64_t u, std::uint64_t v, std::uint64_t index) const = 0;
  virtual int tree_depth() const { return 1; }
};

class SchemeOracle final : public EdgeOracle {
 public:
  explicit SchemeOracle(VariableScheme scheme) : scheme_(std::move(scheme)) {}
  bool edge(std::uint64_t, std::uint64_t, std::uint64_t index) const override {
    return scheme_.eval(index);
  }
  const VariableScheme& scheme() const { return scheme_; }

 private:
  VariableScheme scheme_;
};

class AndOracle final : public EdgeOracle {
 public:
  AndOracle(std::shared_ptr<const EdgeOracle> a, std::shared_ptr<const EdgeOracle> b);
  bool edge(std::uint64_t u, std::uint64_t v, std::uint64_t index) const override {
    return a_->edge(u, v, index) && b_->edge(u, v, index);
  }
  int tree_depth() const override;
  const std::shared_ptr<const EdgeOracle>& left() const { return a_; }
  const std::shared_ptr<const EdgeOracle>& right() const { return b_; }

 private:
  std::shared_ptr<const EdgeOracle> a_, b_;
};

inline constexpr int k_max_oracle_depth = 8;

struct ImplicitGraph {
  GraphParams params;
  std::shared_ptr<const EdgeOracle> oracle;

  bool has_edge(std::uint64_t u, std::uint64_t v) const {
    const std::uint64_t a = u < v ? u : v;
    const std::uint64_t b = u < v ? v : u;
    return oracle->edge(a, b, edge_index(a, b, params.n));
  }
};

// Graph on n vertices whose potential edges are the variables of a fresh
// k-wise scheme at probability p.
ImplicitGraph make_graph(std::uint64_t n, DyadicProb p, std::uint32_t k, Rng& rng);

// Edge-wise AND; the result is min(k_a, k_b)-wise independent at p_a * p_b.
ImplicitGraph intersect(const ImplicitGraph& a, const ImplicitGraph& b);

std::uint64_t implicit_degree(const ImplicitGraph& g, std::uint64_t v);
std::vector<std::uint64_t> implicit_neighbors(const ImplicitGraph& g, std::uint64_t v);

class ExplicitGraph {
 public:
  explicit ExplicitGraph(std::uint64_t n);

  std::uint64_t n() const { return n_; }
  std::size_t row_words() const { return words_; }
  const std::uint64_t* row(std::uint64_t v) const { return bits_.data() + v * words_; }

  bool edge(std::uint64_t u, std::uint64_t v) const {
    return (row(u)[v >> 6] >> (v & 63)) & 1;
  }
  void add_edge(std::uint64_t u, std::uint64_t v);
  void remove_edge(std::uint64_t u, std::uint64_t v);

  std::uint64_t degree(std::uint64_t v) const;
  std::uint64_t edge_count() const;
  std::uint64_t min_degree() const;
  std::uint64_t max_degree() const;
  // Pairs (u, v), u < v, ordered by edge index.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list() const;
  ExplicitGraph complement() const;

 private:
  std::uint64_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Queries every potential edge once, in edge-index order.  Refuses to
// materialize more than `limit` potential edges.
ExplicitGraph materialize(const ImplicitGraph& g, std::uint64_t limit = std::uint64_t(1) << 31);

// Fully independent G(n, p) baseline: one exact-dyadic coin per edge.
ExplicitGraph sample_gnp(std::uint64_t n, DyadicProb p, Rng& rng);

}  // namespace kwig
