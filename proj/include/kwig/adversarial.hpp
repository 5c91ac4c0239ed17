#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kwig/graph.hpp"

// Constructions that separate bounded independence from true randomness:
// a pairwise-independent graph made of two cliques, and a k-wise family in
// which a chosen small pattern appears as an induced subgraph with
// probability bounded away from zero.

namespace kwig {

// Vertices carry uniform labels conditioned on label-1 appearing an odd
// number of times; edges join equal labels.  Every single edge has
// probability 1/2 and every pair of edges probability 1/4 (for n >= 5), yet
// the graph is always a disjoint union of at most two cliques.
struct CliquePartitionGraph {
  std::uint64_t n = 0;
  std::vector<std::uint8_t> side;  // label per vertex; label 1 appears an odd number of times

  bool has_edge(std::uint64_t u, std::uint64_t v) const { return side[u] == side[v]; }
  std::uint64_t side_count(std::uint8_t label) const;
  ExplicitGraph materialize() const;
};

CliquePartitionGraph sample_clique_partition(std::uint64_t n, Rng& rng);

std::uint64_t largest_prime_le(std::uint64_t x);

// Pattern graph H on s labeled vertices, edges as sorted (u, v) pairs, u < v.
struct PatternGraph {
  std::uint32_t s = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  static PatternGraph empty_graph(std::uint32_t s);
  static PatternGraph complete(std::uint32_t s);
  static PatternGraph from_edges(std::uint32_t s,
                                 std::vector<std::pair<std::uint32_t, std::uint32_t>> e);
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  std::uint64_t pair_total() const { return std::uint64_t(s) * (s - 1) / 2; }
  std::uint64_t edge_total() const { return edges.size(); }
  std::uint64_t non_edge_total() const { return pair_total() - edge_total(); }
};

// Density parameters of a pattern:  rho = min |U| / e(U) over vertex subsets
// spanning at least one edge (an exact rational), and the independence order
// k_defy = ceil(2/rho - 1) at which planting can beat the zero-one law at
// threshold p = n^-rho.  Patterns with rho = 2 (single-edge components only)
// admit no such k.
struct DefianceParams {
  std::uint64_t rho_num = 0;  // reduced
  std::uint64_t rho_den = 0;
  bool defiable = false;
  std::uint32_t k_defy = 0;
};
DefianceParams defiance_params(const PatternGraph& h);

// Prime-grid block family: rows 0..s-1, columns 0..q-1 with q the largest
// prime <= floor(n/s); vertex (i, c) is i*q + c and vertices >= s*q sit in
// no block.  Block (a, b) holds {(i, (a*i + b) mod q)}; any two blocks share
// at most one vertex, and every in-grid edge across distinct rows lies in
// exactly one of the q^2 blocks.  Blocks are enumerated lazily, never stored.
struct BlockDesign {
  std::uint64_t n = 0;
  std::uint32_t s = 0;
  std::uint64_t q = 0;

  std::uint64_t block_total() const { return q * q; }
  std::uint64_t vertex(std::uint32_t row, std::uint64_t col) const { return row * q + col; }
  void block_vertices(std::uint64_t block, std::vector<std::uint64_t>& out) const;

  struct Home {
    bool in_block = false;
    std::uint64_t block = 0;
    std::uint32_t local_edge = 0;  // edge_index of the row pair within the block
  };
  Home locate(std::uint64_t u, std::uint64_t v) const;
};

BlockDesign build_block_design(std::uint64_t n, std::uint32_t s);

// Edge oracle of the planted family.  Edges inside a block are governed by
// that block's forced-pattern scheme (every block realizes H when its seed
// hits the forced event, in particular on the all-zero seed); all other
// edges are governed by one plain residual scheme over the full edge-index
// range.  Block and residual seeds are derived from one master seed, so the
// whole graph is reproducible from (n, s, H, k, p, master).
class PlantOracle final : public EdgeOracle {
 public:
  PlantOracle(BlockDesign design, PatternGraph pattern, std::uint32_t k, DyadicProb p,
              std::uint64_t master_seed);

  bool edge(std::uint64_t u, std::uint64_t v, std::uint64_t index) const override;

  const BlockDesign& design() const { return design_; }
  const PatternGraph& pattern() const { return pattern_; }
  std::uint32_t k() const { return k_; }
  DyadicProb p() const { return p_; }
  std::uint64_t master_seed() const { return master_; }
  const FieldSpec& block_field() const { return block_field_; }
  const VariableScheme& residual() const { return residual_; }

  void block_seed(std::uint64_t block, std::uint64_t* coeffs) const;
  // Does this block's scheme realize H exactly (forced event)?
  bool block_realizes(std::uint64_t block) const;
  // Lowest-index realizing block among the first `block_limit` blocks.
  std::optional<std::uint64_t> find_block_realizing(std::uint64_t block_limit) const;
  // Guaranteed lower bound F_block^-k on the single-block realization
  // probability (the planting probability is at least as large).
  long double block_event_floor() const;
  // Exact per-block realization probability by seed enumeration, when the
  // block seed space fits the enumeration budget.
  std::optional<EventCount> block_event_exact() const;

 private:
  BlockDesign design_;
  PatternGraph pattern_;
  std::uint32_t k_ = 1;
  DyadicProb p_;
  std::uint64_t master_ = 0;
  FieldSpec block_field_;
  std::uint64_t block_thresh_ = 0;  // p * F_block
  std::uint32_t forced_zeros_ = 0;  // variables forced to 0 (non-edges of H)
  std::vector<std::uint32_t> var_of_local_;
  VariableScheme residual_;
};

struct BlockPlanting {
  ImplicitGraph graph;
  std::shared_ptr<const PlantOracle> oracle;
};

BlockPlanting plant_pattern(std::uint64_t n, std::uint32_t s, const PatternGraph& h,
                            std::uint32_t k, DyadicProb p, std::uint64_t master_seed);

}  // namespace kwig
