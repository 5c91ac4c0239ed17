#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kwig/adversarial.hpp"
#include "kwig/graph.hpp"
#include "kwig/rng.hpp"

// Measurement and certification of graph properties.  Exact routines carry
// explicit budgets expressed in deterministic units (search nodes, subsets,
// iterations) — never wall-clock time — so verdicts are reproducible across
// machines and thread counts.  Searches that exhaust a budget return an
// interval instead of lying.

namespace kwig {

// --- connectivity ---------------------------------------------------------

struct Components {
  std::uint32_t count = 0;
  std::vector<std::uint32_t> label;  // component id per vertex, 0-based
};
Components components(const ExplicitGraph& g);
bool connected(const ExplicitGraph& g);

// Exact vertex connectivity via unit-capacity max-flow on the split graph
// (each vertex becomes an in/out pair joined by a capacity-1 arc).  The
// flow schedule fixes a minimum-degree vertex s and runs s -> every
// non-neighbor plus u -> w over non-adjacent neighbor pairs of s; together
// with the trivial cut Gamma(s) this covers every minimum separator.
struct ConnectivityResult {
  std::uint32_t kappa = 0;
  bool complete = false;
  // A vertex set of size kappa whose removal disconnects the graph (or
  // leaves at most one vertex).  Empty when the graph is already
  // disconnected.
  std::vector<std::uint32_t> separator;
};
ConnectivityResult vertex_connectivity(const ExplicitGraph& g);
bool verify_separator(const ExplicitGraph& g, const std::vector<std::uint32_t>& separator);

// --- matching -------------------------------------------------------------

// Maximum matching (blossom algorithm); mate[v] = partner or -1.
std::vector<std::int32_t> max_matching(const ExplicitGraph& g);
std::uint64_t matching_size(const std::vector<std::int32_t>& mate);
bool has_perfect_matching(const ExplicitGraph& g);
bool verify_matching(const ExplicitGraph& g, const std::vector<std::int32_t>& mate);

// --- hamiltonicity --------------------------------------------------------

struct HamiltonResult {
  enum class Status { found, exact_absent, not_found };
  Status status = Status::not_found;
  std::vector<std::uint32_t> cycle;  // vertex order when found
};
// n <= 22: exact bit-parallel dynamic program (decides absence too).
// Larger n: rotation-extension search with `restarts` deterministic
// restarts; failure to find is not a certificate of absence.
HamiltonResult hamiltonian_certificate(const ExplicitGraph& g, std::uint32_t restarts, Rng rng);
bool verify_hamilton_cycle(const ExplicitGraph& g, const std::vector<std::uint32_t>& cycle);

// --- cliques and independent sets -----------------------------------------

struct SearchResult {
  std::uint32_t lower = 0;  // size of the best structure found (witnessed)
  std::uint32_t upper = 0;  // proven upper bound; == lower when exact
  bool exact = false;
  std::vector<std::uint32_t> witness;
  std::uint64_t nodes = 0;  // search nodes expanded
};
// Branch-and-bound maximum clique with greedy-coloring pruning.  The budget
// counts search nodes; exhausting it yields exact == false and a coloring
// upper bound.
SearchResult clique_number(const ExplicitGraph& g, std::uint64_t node_budget = 50000000);
SearchResult independence_number(const ExplicitGraph& g, std::uint64_t node_budget = 50000000);
bool verify_clique(const ExplicitGraph& g, const std::vector<std::uint32_t>& verts);
bool verify_independent_set(const ExplicitGraph& g, const std::vector<std::uint32_t>& verts);
// Same check driven through an edge oracle, for graphs too large to
// materialize.
bool verify_independent_set_oracle(const std::function<bool(std::uint64_t, std::uint64_t)>& has_edge,
                                   const std::vector<std::uint64_t>& verts);

struct ChromaticBoundsResult {
  std::uint32_t lower = 0;  // max(clique found, ceil(n / alpha upper bound))
  std::uint32_t upper = 0;  // greedy coloring in smallest-last order
};
ChromaticBoundsResult chromatic_bounds(const ExplicitGraph& g, std::uint64_t node_budget = 5000000);

// --- spectral / regularity -------------------------------------------------

// Largest |eigenvalue| of B = A - p*J, computed matrix-free (Bx = Ax -
// p*(sum x)*1) by power iteration on B^2 with a residual-based stopping
// rule: |lambda_est - lambda| <= tol * lambda at convergence, and the
// estimate never exceeds the true value by more than that.
struct SpectralResult {
  double lambda = 0.0;
  bool converged = false;
  std::uint32_t iterations = 0;
};
SpectralResult spectral_radius_shifted(const ExplicitGraph& g, DyadicProb p, double tol,
                                       std::uint32_t max_iterations, Rng rng);

// Vertex subset as a bitmap, for edge counting.
struct VertexSet {
  std::vector<std::uint64_t> words;
  std::uint64_t count = 0;
};
VertexSet make_vertex_set(const ExplicitGraph& g, const std::vector<std::uint32_t>& verts);
// Ordered count sum_{u in A} |Gamma(u) and B|; pairs inside A and B are
// counted from both sides, matching the doubled convention the deviation
// bound |e(U,V) - p|U||V|| <= lambda sqrt(|U||V|) expects.
std::uint64_t edges_between(const ExplicitGraph& g, const VertexSet& a, const VertexSet& b);

// Samples structured and random set pairs and tracks the worst normalized
// deviation |e(U,V) - p|U||V|| / sqrt(|U||V|); `within` allows alpha a
// relative 1e-6 slack for the iterative eigenvalue estimate.
struct JumblednessReport {
  long double worst_dev = 0.0L;
  std::uint64_t worst_u_size = 0, worst_v_size = 0;
  std::uint64_t pairs_checked = 0;
  bool within = true;
};
JumblednessReport jumbledness_check(const ExplicitGraph& g, DyadicProb p, long double alpha,
                                    std::uint64_t sample_budget, Rng rng);

struct DegreeProfile {
  std::uint64_t min_degree = 0, max_degree = 0;
  long double eps_obs = 0.0L;    // max_v |deg(v)/(p(n-1)) - 1|
  long double gamma_obs = 0.0L;  // max_{u<v} |codeg(u,v)/(p^2(n-2)) - 1|
  std::uint64_t max_neighborhood_edges = 0;  // max_v e(Gamma(v))
};
DegreeProfile degree_codegree_profile(const ExplicitGraph& g, DyadicProb p);

// --- small subgraphs -------------------------------------------------------

// Number of vertex subsets spanning a copy of h (as a subgraph, extra edges
// allowed).  Enumerates all C(n, |h|) subsets; throws when that exceeds
// subset_budget.
std::uint64_t count_spanning_copies(const ExplicitGraph& g, const PatternGraph& h,
                                    std::uint64_t subset_budget = std::uint64_t(1) << 22);
struct InducedSearchResult {
  bool found = false;
  std::vector<std::uint32_t> witness;
};
InducedSearchResult find_induced_copy(const ExplicitGraph& g, const PatternGraph& h,
                                      std::uint64_t subset_budget = std::uint64_t(1) << 22);
bool verify_pattern_copy(const std::function<bool(std::uint64_t, std::uint64_t)>& has_edge,
                         const PatternGraph& h, const std::vector<std::uint64_t>& verts,
                         bool induced);
bool has_triangle(const ExplicitGraph& g);

// --- expansion probe -------------------------------------------------------

// Searches for witnesses that a graph fails the expansion-style conditions
// behind sharp hamiltonicity: (i) a vertex set V, |V| <= n/170, with
// |N(V) \ V| < 12|V|; (ii) disjoint sets U, W of size ceil(n / floor(log2 n))
// with no edge between them.  Finding either is proof of failure; finding
// none is only evidence.
struct HksReport {
  bool expansion_violation = false;
  std::vector<std::uint32_t> bad_set;
  std::uint64_t observed_boundary = 0;
  bool split_violation = false;
  std::vector<std::uint32_t> part_u, part_w;
  std::uint32_t split_size = 0;
  std::uint64_t candidates_checked = 0;
};
HksReport hks_conditions_probe(const ExplicitGraph& g, std::uint64_t budget, Rng rng);

}  // namespace kwig
