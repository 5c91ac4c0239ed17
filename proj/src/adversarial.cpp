#include "kwig/adversarial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kwig {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((u128(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) acc = mulmod(acc, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return acc;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic Miller-Rabin witness set for 64-bit integers.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r && witness; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

std::uint64_t CliquePartitionGraph::side_count(std::uint8_t label) const {
  std::uint64_t c = 0;
  for (std::uint8_t s : side) c += (s == label);
  return c;
}

ExplicitGraph CliquePartitionGraph::materialize() const {
  ExplicitGraph g(n);
  for (std::uint64_t v = 1; v < n; ++v) {
    for (std::uint64_t u = 0; u < v; ++u) {
      if (side[u] == side[v]) g.add_edge(u, v);
    }
  }
  return g;
}

CliquePartitionGraph sample_clique_partition(std::uint64_t n, Rng& rng) {
  if (n < 5) throw std::invalid_argument("clique partition needs at least 5 vertices");
  CliquePartitionGraph g;
  g.n = n;
  g.side.resize(n);
  std::uint64_t ones = 0;
  for (std::uint64_t v = 0; v + 1 < n; ++v) {
    g.side[v] = static_cast<std::uint8_t>(rng.next_bits(1));
    ones += g.side[v];
  }
  g.side[n - 1] = static_cast<std::uint8_t>(ones % 2 == 0 ? 1 : 0);
  return g;
}

std::uint64_t largest_prime_le(std::uint64_t x) {
  if (x < 2) throw std::invalid_argument("no prime at or below " + std::to_string(x));
  if (x == 2) return 2;
  std::uint64_t c = (x % 2 == 0) ? x - 1 : x;
  for (; c >= 3; c -= 2) {
    if (is_prime(c)) return c;
  }
  return 2;
}

PatternGraph PatternGraph::empty_graph(std::uint32_t s) { return from_edges(s, {}); }

PatternGraph PatternGraph::complete(std::uint32_t s) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t v = 1; v < s; ++v) {
    for (std::uint32_t u = 0; u < v; ++u) e.emplace_back(u, v);
  }
  return from_edges(s, std::move(e));
}

PatternGraph PatternGraph::from_edges(std::uint32_t s,
                                      std::vector<std::pair<std::uint32_t, std::uint32_t>> e) {
  if (s < 2) throw std::invalid_argument("patterns need at least 2 vertices");
  for (auto& [u, v] : e) {
    if (u > v) std::swap(u, v);
    if (u == v || v >= s) throw std::invalid_argument("pattern edge out of range");
  }
  std::sort(e.begin(), e.end());
  if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
    throw std::invalid_argument("pattern edge listed twice");
  }
  PatternGraph h;
  h.s = s;
  h.edges = std::move(e);
  return h;
}

bool PatternGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

DefianceParams defiance_params(const PatternGraph& h) {
  if (h.s > 20) throw std::length_error("density scan supports patterns on at most 20 vertices");
  DefianceParams out;
  if (h.edges.empty()) return out;
  std::uint64_t best_num = 2, best_den = 1;  // a single edge gives 2/1
  for (std::uint32_t mask = 1; mask < (1u << h.s); ++mask) {
    std::uint64_t e = 0;
    for (const auto& [u, v] : h.edges) {
      if ((mask >> u & 1) && (mask >> v & 1)) ++e;
    }
    if (e == 0) continue;
    const std::uint64_t verts = std::popcount(mask);
    if (verts * best_den < best_num * e) {  // verts/e < best
      best_num = verts;
      best_den = e;
    }
  }
  const std::uint64_t g = std::gcd(best_num, best_den);
  out.rho_num = best_num / g;
  out.rho_den = best_den / g;
  out.defiable = out.rho_num < 2 * out.rho_den;
  if (out.defiable) {
    out.k_defy = static_cast<std::uint32_t>((2 * out.rho_den - 1) / out.rho_num);
  }
  return out;
}

void BlockDesign::block_vertices(std::uint64_t block, std::vector<std::uint64_t>& out) const {
  if (block >= block_total()) throw std::out_of_range("block id out of range");
  const std::uint64_t a = block / q;
  const std::uint64_t b = block % q;
  out.resize(s);
  for (std::uint32_t i = 0; i < s; ++i) out[i] = vertex(i, (mulmod(a, i, q) + b) % q);
}

BlockDesign::Home BlockDesign::locate(std::uint64_t u, std::uint64_t v) const {
  if (u > v) std::swap(u, v);
  if (u == v || v >= n) throw std::out_of_range("vertex label out of range");
  Home home;
  const std::uint64_t grid = std::uint64_t(s) * q;
  if (v >= grid) return home;
  const std::uint64_t ru = u / q, cu = u % q;
  const std::uint64_t rv = v / q, cv = v % q;
  if (ru == rv) return home;
  // Solve a*ru + b = cu, a*rv + b = cv (mod q); q prime and ru != rv mod q.
  const std::uint64_t dr = (q + ru - rv) % q;
  const std::uint64_t dc = (q + cu - cv) % q;
  const std::uint64_t a = mulmod(dc, powmod(dr, q - 2, q), q);
  const std::uint64_t b = (cu + q - mulmod(a, ru, q)) % q;
  home.in_block = true;
  home.block = a * q + b;
  home.local_edge = static_cast<std::uint32_t>(edge_index(ru, rv, s));
  return home;
}

BlockDesign build_block_design(std::uint64_t n, std::uint32_t s) {
  if (s < 2) throw std::invalid_argument("blocks need at least 2 vertices");
  if (n / s < 2) throw std::invalid_argument("vertex count too small for the requested block size");
  const std::uint64_t q = largest_prime_le(n / s);
  if (q < s) {
    throw std::invalid_argument("block design infeasible: no prime q with s <= q <= n/s");
  }
  BlockDesign d;
  d.n = n;
  d.s = s;
  d.q = q;
  return d;
}

PlantOracle::PlantOracle(BlockDesign design, PatternGraph pattern, std::uint32_t k, DyadicProb p,
                         std::uint64_t master_seed)
    : design_(design), pattern_(std::move(pattern)), k_(k), p_(p), master_(master_seed) {
  if (pattern_.s != design_.s) {
    throw std::invalid_argument("pattern size does not match the block size");
  }
  if (k_ < 1 || k_ > 256) throw std::invalid_argument("planting supports 1 <= k <= 256");
  const std::uint64_t pairs = pattern_.pair_total();
  block_field_ = scheme_field(pairs, p_.ell);
  block_thresh_ = p_.num << (block_field_.m - p_.ell);
  forced_zeros_ = static_cast<std::uint32_t>(pattern_.non_edge_total());

  // Within a block, variables come in forced order: first the pattern's
  // non-edges (forced 0), then its edges (forced 1), each group ordered by
  // local edge index.
  var_of_local_.resize(pairs);
  std::uint32_t next_zero = 0, next_one = forced_zeros_;
  std::uint32_t local = 0;
  for (std::uint32_t rv = 1; rv < design_.s; ++rv) {
    for (std::uint32_t ru = 0; ru < rv; ++ru, ++local) {
      var_of_local_[local] = pattern_.has_edge(ru, rv) ? next_one++ : next_zero++;
    }
  }

  Rng residual_rng(master_, "plant-residual");
  const std::uint64_t m = pair_count(design_.n);
  residual_ = scheme_new(m, k_, p_, OrientationMap::all_standard(m), residual_rng);
}

void PlantOracle::block_seed(std::uint64_t block, std::uint64_t* coeffs) const {
  Rng r = Rng(master_, "plant-block").derive(block);
  for (std::uint32_t i = 0; i < k_; ++i) coeffs[i] = r.next_bits(block_field_.m);
}

bool PlantOracle::edge(std::uint64_t u, std::uint64_t v, std::uint64_t index) const {
  const BlockDesign::Home home = design_.locate(u, v);
  if (!home.in_block) return residual_.eval(index);
  std::uint64_t coeffs[256];
  block_seed(home.block, coeffs);
  const std::uint32_t j = var_of_local_[home.local_edge];
  const std::uint64_t z = eval_poly(std::span<const std::uint64_t>(coeffs, k_), j, block_field_);
  return j < forced_zeros_ ? z >= block_field_.order() - block_thresh_ : z < block_thresh_;
}

bool PlantOracle::block_realizes(std::uint64_t block) const {
  std::uint64_t coeffs[256];
  block_seed(block, coeffs);
  const std::uint64_t flip_at = block_field_.order() - block_thresh_;
  const std::uint64_t vars = pattern_.pair_total();
  for (std::uint64_t j = 0; j < vars; ++j) {
    const std::uint64_t z = eval_poly(std::span<const std::uint64_t>(coeffs, k_), j, block_field_);
    // Forced-0 variables must miss the flipped acceptance set, forced-1
    // variables must hit the standard one; both read as z < threshold.
    if (!(j < forced_zeros_ ? z < flip_at : z < block_thresh_)) return false;
  }
  return true;
}

std::optional<std::uint64_t> PlantOracle::find_block_realizing(std::uint64_t block_limit) const {
  const std::uint64_t stop = std::min(block_limit, design_.block_total());
  for (std::uint64_t b = 0; b < stop; ++b) {
    if (block_realizes(b)) return b;
  }
  return std::nullopt;
}

long double PlantOracle::block_event_floor() const {
  return powl(static_cast<long double>(block_field_.order()), -static_cast<long double>(k_));
}

std::optional<EventCount> PlantOracle::block_event_exact() const {
  if (static_cast<std::uint64_t>(block_field_.m) * k_ > 26) return std::nullopt;
  return forced_event_seed_count(pattern_.pair_total(), k_, p_,
                                 ForcedPattern{pattern_.non_edge_total(), pattern_.edge_total()});
}

BlockPlanting plant_pattern(std::uint64_t n, std::uint32_t s, const PatternGraph& h,
                            std::uint32_t k, DyadicProb p, std::uint64_t master_seed) {
  BlockDesign design = build_block_design(n, s);
  auto oracle = std::make_shared<PlantOracle>(design, h, k, p, master_seed);
  BlockPlanting out;
  out.oracle = oracle;
  out.graph.params = GraphParams{n, p, k};
  out.graph.oracle = oracle;
  return out;
}

}  // namespace kwig
