// kwig: command-line surface for k-wise independent random graphs.
//
// Vertex ids typed on the command line (and printed in human-readable
// output) are one-based.  Machine formats -- seed files, edge-list exports,
// CSV -- are zero-based.  Every command is deterministic given its flags;
// KWIG_THREADS caps worker parallelism without changing any output byte.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kwig/adversarial.hpp"
#include "kwig/bounds.hpp"
#include "kwig/experiment.hpp"
#include "kwig/field.hpp"
#include "kwig/graph.hpp"
#include "kwig/rng.hpp"
#include "kwig/scheme.hpp"
#include "kwig/seed_io.hpp"
#include "kwig/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string fmt_ld(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12Lg", v);
  return buf;
}

kwig::DyadicProb parse_prob_arg(const std::string& text) {
  bool rounded = false;
  const kwig::DyadicProb p = kwig::parse_prob(text, &rounded);
  if (rounded) {
    std::cerr << "note: probability " << text << " is not dyadic; rounded to " << p.num
              << "/2^" << p.ell << "\n";
  }
  return p;
}

std::string prob_text(kwig::DyadicProb p) {
  return std::to_string(p.num) + "/2^" + std::to_string(p.ell);
}

// Pattern selection shared by plant / subgraph-threshold: either a named
// shape or an edge-list file with one-based pairs in 1..s.
kwig::PatternGraph pattern_from_args(std::uint32_t& s, const std::string& shape,
                                     const std::string& file) {
  if (!shape.empty() && !file.empty())
    throw std::invalid_argument("--shape and --pattern are mutually exclusive");
  if (!shape.empty()) {
    if (shape == "triangle") {
      if (s != 0 && s != 3) throw std::invalid_argument("--shape triangle requires --s 3");
      s = 3;
      return kwig::PatternGraph::complete(3);
    }
    if (s < 2) throw std::invalid_argument("--s (pattern order >= 2) required with --shape");
    if (shape == "empty") return kwig::PatternGraph::empty_graph(s);
    if (shape == "complete") return kwig::PatternGraph::complete(s);
    throw std::invalid_argument("unknown shape '" + shape + "' (triangle|empty|complete)");
  }
  if (file.empty()) throw std::invalid_argument("pattern required: --shape or --pattern FILE");
  if (s < 2) throw std::invalid_argument("--s (pattern order >= 2) required with --pattern");
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open pattern file: " + file);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t u = 0, v = 0;
    if (!(ls >> u >> v)) throw std::runtime_error("bad pattern line: " + line);
    if (u < 1 || v < 1 || u > s || v > s || u == v)
      throw std::runtime_error("pattern vertex out of range (one-based, 1.." +
                               std::to_string(s) + "): " + line);
    edges.emplace_back(static_cast<std::uint32_t>(u - 1), static_cast<std::uint32_t>(v - 1));
  }
  return kwig::PatternGraph::from_edges(s, std::move(edges));
}

// --- GF(2)[x] helpers for the irreducibility audit -------------------------

int poly_deg(std::uint64_t a) { return a ? 64 - std::countl_zero(a) - 1 : -1; }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_deg(b);
  for (int da = poly_deg(a); da >= db; da = poly_deg(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// Frobenius-based irreducibility test for the degree-m modulus in f:
// x^(2^m) == x mod f, and gcd(f, x^(2^(m/q)) - x) == 1 for every prime q | m.
bool poly_irreducible(const kwig::FieldSpec& f) {
  const std::uint32_t m = f.m;
  std::vector<std::uint32_t> primes;
  std::uint32_t rest = m;
  for (std::uint32_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      primes.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) primes.push_back(rest);

  const std::uint64_t x_red = poly_mod(2, f.poly);  // x reduced mod f
  std::uint64_t x_pow = x_red;
  std::uint32_t step = 0;
  for (std::uint32_t q : primes) {
    const std::uint32_t upto = m / q;
    while (step < upto) {
      x_pow = kwig::field_mul(x_pow, x_pow, f);
      ++step;
    }
    if (poly_gcd(f.poly, x_pow ^ x_red) != 1) return false;
  }
  while (step < m) {
    x_pow = kwig::field_mul(x_pow, x_pow, f);
    ++step;
  }
  return x_pow == x_red;
}

bool audit_field_table(std::uint32_t fault_m, std::string& detail) {
  const auto table = kwig::field_table();
  for (std::uint32_t m = 1; m <= 63; ++m) {
    kwig::FieldSpec f{m, table[m]};
    if (m == fault_m) f.poly = (std::uint64_t(1) << m) | 1;  // x^m + 1, reducible
    if ((f.poly >> m) != 1 || (f.poly & 1) == 0) {
      detail = "degree/constant defect at m=" + std::to_string(m);
      return false;
    }
    if (!poly_irreducible(f)) {
      detail = "reducible modulus at m=" + std::to_string(m);
      return false;
    }
  }
  return true;
}

// --- selftest ---------------------------------------------------------------

bool check_field_axioms(std::string& detail) {
  for (std::uint32_t m = 1; m <= 6; ++m) {
    const kwig::FieldSpec f = kwig::field_spec(m);
    const std::uint64_t order = f.order();
    std::vector<std::uint64_t> mul(order * order);
    for (std::uint64_t a = 0; a < order; ++a)
      for (std::uint64_t b = 0; b < order; ++b) mul[a * order + b] = kwig::field_mul(a, b, f);
    for (std::uint64_t a = 0; a < order; ++a) {
      if (mul[a * order + 1] != a || mul[1 * order + a] != a) {
        detail = "identity fails at m=" + std::to_string(m);
        return false;
      }
      if (a != 0) {
        const std::uint64_t inv = kwig::field_inv(a, f);
        if (mul[a * order + inv] != 1) {
          detail = "inverse fails at m=" + std::to_string(m);
          return false;
        }
      }
      for (std::uint64_t b = 0; b < order; ++b) {
        if (mul[a * order + b] != mul[b * order + a]) {
          detail = "commutativity fails at m=" + std::to_string(m);
          return false;
        }
        for (std::uint64_t c = 0; c < order; ++c) {
          if (mul[mul[a * order + b] * order + c] != mul[a * order + mul[b * order + c]]) {
            detail = "associativity fails at m=" + std::to_string(m);
            return false;
          }
          if (mul[a * order + (b ^ c)] != (mul[a * order + b] ^ mul[a * order + c])) {
            detail = "distributivity fails at m=" + std::to_string(m);
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool check_joint_exactness(std::string& detail) {
  const auto p = kwig::DyadicProb::make(1, 1);
  const auto orient = kwig::OrientationMap::all_standard(3);
  for (std::uint32_t k : {1u, 2u}) {
    for (std::uint64_t j = 0; j < 3; ++j) {
      const std::uint64_t idx[1] = {j};
      const auto jd = kwig::enumerate_joint(3, k, p, orient, idx);
      if (jd.counts[0] * 2 != jd.total || jd.counts[1] * 2 != jd.total) {
        detail = "single-variable marginal not exactly 1/2 (k=" + std::to_string(k) + ")";
        return false;
      }
    }
  }
  for (std::uint64_t a = 0; a < 3; ++a) {
    for (std::uint64_t b = a + 1; b < 3; ++b) {
      const std::uint64_t idx[2] = {a, b};
      const auto jd = kwig::enumerate_joint(3, 2, p, orient, idx);
      for (int pat = 0; pat < 4; ++pat) {
        if (jd.counts[pat] * 4 != jd.total) {
          detail = "pair joint not exactly 1/4";
          return false;
        }
      }
    }
  }
  return true;
}

bool check_zero_seed(std::string& detail) {
  const auto p = kwig::DyadicProb::make(1, 1);
  kwig::Rng rng(1, "selftest");
  auto vs = kwig::forced_scheme(3, 2, p, {1, 2}, rng);
  vs.seed.assign(vs.seed.size(), 0);
  if (vs.eval(0) != false || vs.eval(1) != true || vs.eval(2) != true) {
    detail = "zero seed does not realize the forced pattern";
    return false;
  }
  const auto ec = kwig::forced_event_seed_count(3, 2, p, {1, 2});
  if (ec.satisfying == 0) {
    detail = "forced event has no satisfying seed";
    return false;
  }
  return true;
}

bool check_clique_partition(std::string& detail) {
  // All 64 outcomes at n=7: vertices 0..5 labeled freely, vertex 6 fixes
  // |V1| odd.  Edge marginal 1/2, edge-pair joint 1/4, never a perfect
  // matching, connected exactly once.
  const std::uint64_t n = 7;
  std::vector<std::uint32_t> edge_hits(kwig::pair_count(n), 0);
  std::uint64_t connected_hits = 0, pm_hits = 0;
  std::vector<std::uint32_t> pair_hits(kwig::pair_count(n) * kwig::pair_count(n), 0);
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    std::vector<std::uint8_t> side(n);
    std::uint32_t ones = 0;
    for (std::uint64_t v = 0; v < 6; ++v) {
      side[v] = (mask >> v) & 1;
      ones += side[v];
    }
    side[6] = (ones % 2 == 0) ? 1 : 0;
    kwig::ExplicitGraph g(n);
    std::vector<std::uint64_t> present;
    for (std::uint64_t v = 1; v < n; ++v)
      for (std::uint64_t u = 0; u < v; ++u)
        if (side[u] == side[v]) {
          g.add_edge(u, v);
          present.push_back(kwig::edge_index(u, v, n));
        }
    for (std::uint64_t e : present) ++edge_hits[e];
    for (std::uint64_t e : present)
      for (std::uint64_t f : present)
        if (e < f) ++pair_hits[e * kwig::pair_count(n) + f];
    if (kwig::connected(g)) ++connected_hits;
    if (kwig::matching_size(kwig::max_matching(g)) * 2 == n) ++pm_hits;
  }
  for (std::uint32_t h : edge_hits)
    if (h != 32) {
      detail = "edge marginal is not exactly 1/2";
      return false;
    }
  for (std::uint64_t e = 0; e < kwig::pair_count(n); ++e)
    for (std::uint64_t f = e + 1; f < kwig::pair_count(n); ++f)
      if (pair_hits[e * kwig::pair_count(n) + f] != 16) {
        detail = "edge-pair joint is not exactly 1/4";
        return false;
      }
  if (pm_hits != 0) {
    detail = "perfect matching appeared in an odd-order partition graph";
    return false;
  }
  if (connected_hits != 1) {
    detail = "connected in " + std::to_string(connected_hits) + "/64 outcomes, expected 1";
    return false;
  }
  return true;
}

bool check_block_design(std::string& detail) {
  const kwig::BlockDesign d = kwig::build_block_design(100, 4);
  std::vector<std::vector<std::uint64_t>> blocks(d.block_total());
  for (std::uint64_t b = 0; b < d.block_total(); ++b) d.block_vertices(b, blocks[b]);
  for (std::uint64_t a = 0; a < d.block_total(); ++a) {
    for (std::uint64_t b = a + 1; b < d.block_total(); ++b) {
      std::uint32_t common = 0;
      for (std::uint64_t x : blocks[a])
        for (std::uint64_t y : blocks[b]) common += (x == y);
      if (common > 1) {
        detail = "blocks " + std::to_string(a) + "," + std::to_string(b) + " share " +
                 std::to_string(common) + " vertices";
        return false;
      }
    }
  }
  for (std::uint64_t b = 0; b < d.block_total(); ++b) {
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      for (std::size_t j = i + 1; j < blocks[b].size(); ++j) {
        const auto home = d.locate(std::min(blocks[b][i], blocks[b][j]),
                                   std::max(blocks[b][i], blocks[b][j]));
        if (!home.in_block || home.block != b) {
          detail = "locate() disagrees with block membership";
          return false;
        }
      }
    }
  }
  const auto outside = d.locate(d.s * d.q, d.s * d.q + 1);
  if (d.n > d.s * d.q && outside.in_block) {
    detail = "residual pair claimed by a block";
    return false;
  }
  return true;
}

bool check_planted_tiny(std::string& detail) {
  // s=3, q=3, n=9, triangle pattern: same-block edge pairs and residual
  // pairs both have the exact product joint at k=2; block realization as
  // reported by the oracle matches the induced subgraph.
  const auto p = kwig::DyadicProb::make(1, 1);
  const auto h = kwig::PatternGraph::complete(3);
  const kwig::BlockPlanting bp = kwig::plant_pattern(9, 3, h, 2, p, 5);
  const auto& oracle = *bp.oracle;

  const auto forced_orient =
      kwig::OrientationMap::forced(3, {h.non_edge_total(), h.edge_total()});
  for (std::uint64_t a = 0; a < 3; ++a) {
    for (std::uint64_t b = a + 1; b < 3; ++b) {
      const std::uint64_t idx[2] = {a, b};
      const auto jd = kwig::enumerate_joint(3, 2, p, forced_orient, idx);
      for (int pat = 0; pat < 4; ++pat)
        if (jd.counts[pat] * 4 != jd.total) {
          detail = "within-block pair joint not exactly 1/4";
          return false;
        }
    }
  }
  const std::uint64_t idx[2] = {0, 7};
  const auto jd = kwig::enumerate_joint(kwig::pair_count(9), 2, p,
                                        kwig::OrientationMap::all_standard(kwig::pair_count(9)),
                                        idx);
  for (int pat = 0; pat < 4; ++pat)
    if (jd.counts[pat] * 4 != jd.total) {
      detail = "residual pair joint not exactly 1/4";
      return false;
    }

  std::vector<std::uint64_t> verts;
  for (std::uint64_t b = 0; b < oracle.design().block_total(); ++b) {
    oracle.design().block_vertices(b, verts);
    bool induced = true;
    for (std::size_t i = 0; i < verts.size() && induced; ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        if (!bp.graph.has_edge(verts[i], verts[j])) {
          induced = false;
          break;
        }
    if (induced != oracle.block_realizes(b)) {
      detail = "block_realizes() disagrees with edge queries at block " + std::to_string(b);
      return false;
    }
  }
  return true;
}

bool check_rng_stability(std::string& detail) {
  kwig::Rng r(42, "test");
  const std::uint64_t expect[3] = {0xb6a10a1fcffffcadull, 0x1745132049c6de08ull,
                                   0xdad60efdb9421c7eull};
  for (std::uint64_t e : expect)
    if (r.next() != e) {
      detail = "generator output drifted from the documented mixing chain";
      return false;
    }
  if (kwig::Rng(42, "test").derive(7).next() != 0xe044503165078fe0ull) {
    detail = "derived-stream output drifted";
    return false;
  }
  return true;
}

bool check_prob_canonical(std::string& detail) {
  bool rounded = false;
  const auto a = kwig::parse_prob("0.15", &rounded);
  if (!rounded || a.num != 78643 || a.ell != 19) {
    detail = "decimal rounding is not nearest-1/2^20-then-reduced";
    return false;
  }
  if (kwig::parse_prob("4/2^3") != kwig::DyadicProb::make(1, 1) ||
      kwig::parse_prob("2^-5") != kwig::DyadicProb::make(1, 5) ||
      kwig::DyadicProb::make(6, 4) != kwig::DyadicProb::make(3, 3)) {
    detail = "canonicalization to odd numerator failed";
    return false;
  }
  return true;
}

bool check_seed_roundtrip(std::string& detail) {
  kwig::Rng rng(9, "selftest-io");
  const kwig::ImplicitGraph g = kwig::make_graph(30, kwig::DyadicProb::make(1, 2), 3, rng);
  std::ostringstream buf;
  kwig::write_graph(g, buf);
  std::istringstream in(buf.str());
  const kwig::ImplicitGraph g2 = kwig::read_graph(in);
  std::ostringstream buf2;
  kwig::write_graph(g2, buf2);
  if (buf.str() != buf2.str()) {
    detail = "serialized bytes changed across a round trip";
    return false;
  }
  for (std::uint64_t v = 1; v < 30; ++v)
    for (std::uint64_t u = 0; u < v; ++u)
      if (g.has_edge(u, v) != g2.has_edge(u, v)) {
        detail = "edge answers changed across a round trip";
        return false;
      }
  return true;
}

int run_selftest(bool inject_field_fault) {
  struct Check {
    const char* name;
    std::uint64_t cost;
    bool (*run)(std::string&);
  };
  // Costs are abstract work units; KWIG_SELFTEST_BUDGET (unset = unlimited)
  // skips, deterministically, any check that would exceed the cap.
  const std::uint32_t fault_m = inject_field_fault ? 8 : 0;
  std::vector<Check> checks = {
      {"field-table-irreducible", 2, nullptr},  // runs the table audit below
      {"field-axioms-small", 4, &check_field_axioms},
      {"kwise-joint-exactness", 2, &check_joint_exactness},
      {"kwise-zero-seed-forced", 1, &check_zero_seed},
      {"clique-partition-exhaustive", 3, &check_clique_partition},
      {"block-design-disjoint", 3, &check_block_design},
      {"planted-tiny-exactness", 5, &check_planted_tiny},
      {"rng-stability", 1, &check_rng_stability},
      {"probability-canonical", 1, &check_prob_canonical},
      {"seed-roundtrip", 1, &check_seed_roundtrip},
  };
  std::uint64_t budget = UINT64_MAX;
  if (const char* env = std::getenv("KWIG_SELFTEST_BUDGET")) {
    try {
      budget = std::stoull(env);
    } catch (...) {
      std::cerr << "warning: ignoring malformed KWIG_SELFTEST_BUDGET\n";
    }
  }
  std::uint64_t spent = 0, ran = 0, skipped = 0;
  for (const Check& c : checks) {
    if (spent + c.cost > budget) {
      std::cerr << "skip (budget): " << c.name << "\n";
      ++skipped;
      continue;
    }
    spent += c.cost;
    std::string detail;
    const bool ok = c.run ? c.run(detail) : audit_field_table(fault_m, detail);
    if (!ok) {
      std::cout << "selftest: FAIL " << c.name << ": " << detail << "\n";
      return 1;
    }
    ++ran;
  }
  std::cout << "selftest: ok (" << ran << " checks";
  if (skipped) std::cout << ", " << skipped << " skipped";
  std::cout << ")\n";
  return 0;
}

// --- verify report ----------------------------------------------------------

json verts_one_based(const std::vector<std::uint32_t>& v, std::size_t cap = 64) {
  json arr = json::array();
  for (std::size_t i = 0; i < v.size() && i < cap; ++i) arr.push_back(v[i] + 1);
  return arr;
}

void report_degrees(const kwig::ExplicitGraph& g, kwig::DyadicProb p, std::uint32_t k,
                    json& props) {
  const std::uint64_t n = g.n();
  const long double expect = static_cast<long double>(p.value()) * (n - 1);
  std::uint64_t worst_v = 0;
  long double eps_obs = 0.0L;
  std::uint64_t mind = n, maxd = 0;
  for (std::uint64_t v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    mind = std::min(mind, d);
    maxd = std::max(maxd, d);
    const long double dev = expect > 0 ? fabsl(d / expect - 1.0L) : 0.0L;
    if (dev > eps_obs) {
      eps_obs = dev;
      worst_v = v;
    }
  }
  std::optional<long double> eps_target;
  for (int i = 1; i <= 20; ++i) {
    const long double eps = 0.05L * i;
    try {
      const auto b = kwig::degree_failure_bound(n, k, p.value(), eps);
      if (!b.vacuous && b.value <= 0.01L) {
        eps_target = eps;
        break;
      }
    } catch (const std::exception&) {
      break;  // parameters outside the bound's domain: report-only
    }
  }
  json prop;
  prop["name"] = "degrees";
  prop["measured"] = {{"min_degree", mind},
                      {"max_degree", maxd},
                      {"expected_degree", fmt_ld(expect)},
                      {"eps_obs", fmt_ld(eps_obs)}};
  if (eps_target) {
    prop["target"] = {{"eps", fmt_ld(*eps_target)}, {"failure_bound", "0.01"}};
    prop["verdict"] = eps_obs <= *eps_target ? "within" : "exceeds";
  } else {
    prop["target"] = nullptr;
    prop["verdict"] = "report-only (no non-vacuous bound at these parameters)";
  }
  prop["certificate"] = {{"worst_vertex", worst_v + 1}};
  props.push_back(std::move(prop));

  if (n <= 4096) {
    const kwig::DegreeProfile prof = kwig::degree_codegree_profile(g, p);
    std::optional<long double> gamma_target;
    for (int i = 1; i <= 20; ++i) {
      const long double gamma = 0.05L * i;
      try {
        const auto b = kwig::codegree_failure_bound(n, k, p.value(), gamma);
        if (!b.vacuous && b.value <= 0.01L) {
          gamma_target = gamma;
          break;
        }
      } catch (const std::exception&) {
        break;
      }
    }
    json cp;
    cp["name"] = "codegrees";
    cp["measured"] = {{"gamma_obs", fmt_ld(prof.gamma_obs)},
                      {"max_neighborhood_edges", prof.max_neighborhood_edges}};
    if (gamma_target) {
      cp["target"] = {{"gamma", fmt_ld(*gamma_target)}, {"failure_bound", "0.01"}};
      cp["verdict"] = prof.gamma_obs <= *gamma_target ? "within" : "exceeds";
    } else {
      cp["target"] = nullptr;
      cp["verdict"] = "report-only (no non-vacuous bound at these parameters)";
    }
    cp["certificate"] = nullptr;
    props.push_back(std::move(cp));
  } else {
    props.push_back({{"name", "codegrees"}, {"verdict", "skipped: n > 4096"}});
  }
}

void report_connectivity(const kwig::ExplicitGraph& g, json& props) {
  const kwig::Components comp = kwig::components(g);
  json prop;
  prop["name"] = "connectivity";
  prop["measured"] = {{"components", comp.count}};
  prop["target"] = {{"components", 1}};
  prop["verdict"] = comp.count == 1 ? "connected" : "disconnected";
  if (comp.count > 1) {
    std::vector<std::uint64_t> size(comp.count, 0);
    for (std::uint32_t lbl : comp.label) ++size[lbl];
    const std::uint32_t smallest = static_cast<std::uint32_t>(
        std::min_element(size.begin(), size.end()) - size.begin());
    std::vector<std::uint32_t> members;
    for (std::uint32_t v = 0; v < g.n(); ++v)
      if (comp.label[v] == smallest) members.push_back(v);
    prop["certificate"] = {{"smallest_component_size", size[smallest]},
                           {"vertices", verts_one_based(members, 32)}};
  } else {
    prop["certificate"] = nullptr;
  }
  props.push_back(std::move(prop));
}

void report_kappa(const kwig::ExplicitGraph& g, json& props) {
  if (g.n() > 4096) {
    props.push_back({{"name", "vertex-connectivity"}, {"verdict", "skipped: n > 4096"}});
    return;
  }
  const kwig::ConnectivityResult cr = kwig::vertex_connectivity(g);
  json prop;
  prop["name"] = "vertex-connectivity";
  prop["measured"] = {{"kappa", cr.kappa}, {"complete", cr.complete}};
  prop["target"] = {{"min_degree", g.min_degree()}};
  prop["verdict"] =
      cr.kappa == g.min_degree() ? "kappa-equals-min-degree" : "kappa-below-min-degree";
  if (!cr.separator.empty() && kwig::verify_separator(g, cr.separator)) {
    prop["certificate"] = {{"separator", verts_one_based(cr.separator)}, {"checked", true}};
  } else {
    prop["certificate"] = nullptr;
  }
  props.push_back(std::move(prop));
}

void report_matching(const kwig::ExplicitGraph& g, json& props) {
  if (g.n() > 8192) {
    props.push_back({{"name", "matching"}, {"verdict", "skipped: n > 8192"}});
    return;
  }
  const auto mate = kwig::max_matching(g);
  const std::uint64_t size = kwig::matching_size(mate);
  json prop;
  prop["name"] = "matching";
  prop["measured"] = {{"size", size}};
  prop["target"] = {{"size", g.n() / 2}};
  prop["verdict"] = (g.n() % 2 == 0 && size * 2 == g.n()) ? "perfect" : "maximum-below-perfect";
  json cert = {{"checked", kwig::verify_matching(g, mate)}};
  if (g.n() <= 128) {
    json edges = json::array();
    for (std::uint32_t v = 0; v < g.n(); ++v)
      if (mate[v] >= 0 && static_cast<std::uint32_t>(mate[v]) > v)
        edges.push_back({v + 1, mate[v] + 1});
    cert["edges"] = std::move(edges);
  }
  prop["certificate"] = std::move(cert);
  props.push_back(std::move(prop));
}

void report_hamilton(const kwig::ExplicitGraph& g, std::uint64_t seed, json& props) {
  const kwig::HamiltonResult hr =
      kwig::hamiltonian_certificate(g, 50, kwig::Rng(seed, "verify-hamilton"));
  json prop;
  prop["name"] = "hamilton-cycle";
  const char* status = hr.status == kwig::HamiltonResult::Status::found       ? "found"
                       : hr.status == kwig::HamiltonResult::Status::exact_absent ? "exact-absent"
                                                                                : "not-found";
  prop["measured"] = {{"status", status}};
  prop["target"] = {{"status", "found"}};
  prop["verdict"] = status;
  if (hr.status == kwig::HamiltonResult::Status::found &&
      kwig::verify_hamilton_cycle(g, hr.cycle)) {
    prop["certificate"] = {{"cycle", verts_one_based(hr.cycle, g.n())}, {"checked", true}};
  } else {
    prop["certificate"] = nullptr;
  }
  props.push_back(std::move(prop));
}

void report_independence(const kwig::ExplicitGraph& g, kwig::DyadicProb p,
                         std::uint64_t node_budget, json& props) {
  const kwig::SearchResult ir = kwig::independence_number(g, node_budget);
  json prop;
  prop["name"] = "independence-number";
  prop["measured"] = {{"lower", ir.lower},
                      {"upper", ir.upper},
                      {"exact", ir.exact},
                      {"search_nodes", ir.nodes}};
  prop["target"] = {{"first_moment_scale", kwig::s_star(g.n(), p.value())}};
  prop["verdict"] = ir.exact ? "exact" : "interval";
  prop["certificate"] = {{"witness", verts_one_based(ir.witness)},
                         {"checked", kwig::verify_independent_set(g, ir.witness)}};
  props.push_back(std::move(prop));

  const kwig::SearchResult cr = kwig::clique_number(g, node_budget);
  json cp;
  cp["name"] = "clique-number";
  cp["measured"] = {{"lower", cr.lower},
                    {"upper", cr.upper},
                    {"exact", cr.exact},
                    {"search_nodes", cr.nodes}};
  cp["target"] = nullptr;
  cp["verdict"] = cr.exact ? "exact" : "interval";
  cp["certificate"] = {{"witness", verts_one_based(cr.witness)},
                       {"checked", kwig::verify_clique(g, cr.witness)}};
  props.push_back(std::move(cp));
}

void report_chromatic(const kwig::ExplicitGraph& g, kwig::DyadicProb p, json& props) {
  const kwig::ChromaticBoundsResult cb = kwig::chromatic_bounds(g);
  json prop;
  prop["name"] = "chromatic-number";
  prop["measured"] = {{"lower", cb.lower}, {"upper", cb.upper}};
  const long double pv = p.value();
  if (pv * g.n() > 1.0L) {
    const kwig::ChromaticTargets t = kwig::chromatic_targets(g.n(), pv);
    prop["target"] = {{"lower_formula", fmt_ld(t.lower)}, {"upper_formula_c1", fmt_ld(t.upper)}};
  } else {
    prop["target"] = nullptr;
  }
  prop["verdict"] = cb.lower == cb.upper ? "exact" : "interval";
  prop["certificate"] = nullptr;
  props.push_back(std::move(prop));
}

void report_spectral(const kwig::ExplicitGraph& g, kwig::DyadicProb p, std::uint64_t seed,
                     json& props) {
  const kwig::SpectralResult sr =
      kwig::spectral_radius_shifted(g, p, 1e-6, 50000, kwig::Rng(seed, "verify-spectral"));
  const long double pv = p.value();
  const long double iid_scale = 2.0L * sqrtl(g.n() * pv * (1.0L - pv));
  json prop;
  prop["name"] = "spectral-radius-shifted";
  prop["measured"] = {{"lambda", fmt_ld(sr.lambda)},
                      {"converged", sr.converged},
                      {"iterations", sr.iterations}};
  prop["target"] = {{"iid_scale", fmt_ld(iid_scale)}};
  prop["verdict"] = sr.converged ? "converged" : "iteration-capped";
  prop["certificate"] = nullptr;
  props.push_back(std::move(prop));

  const kwig::JumblednessReport jr =
      kwig::jumbledness_check(g, p, sr.lambda, 60, kwig::Rng(seed, "verify-jumbled"));
  json jp;
  jp["name"] = "jumbledness";
  jp["measured"] = {{"worst_dev", fmt_ld(jr.worst_dev)}, {"pairs_checked", jr.pairs_checked}};
  jp["target"] = {{"alpha", fmt_ld(static_cast<long double>(sr.lambda))}};
  jp["verdict"] = jr.within ? "within" : "exceeds";
  jp["certificate"] = {{"worst_pair_sizes", {jr.worst_u_size, jr.worst_v_size}}};
  props.push_back(std::move(jp));
}

void report_hks(const kwig::ExplicitGraph& g, std::uint64_t seed, json& props) {
  const kwig::HksReport hr = kwig::hks_conditions_probe(g, 20000, kwig::Rng(seed, "verify-hks"));
  json prop;
  prop["name"] = "expansion-probe";
  prop["measured"] = {{"expansion_violation", hr.expansion_violation},
                      {"split_violation", hr.split_violation},
                      {"candidates_checked", hr.candidates_checked}};
  prop["target"] = {{"expansion_violation", false}, {"split_violation", false}};
  prop["verdict"] = (hr.expansion_violation || hr.split_violation)
                        ? "violation-found"
                        : "no-violation-found (one-sided probe)";
  json cert;
  if (hr.expansion_violation) {
    cert["bad_set"] = verts_one_based(hr.bad_set);
    cert["observed_boundary"] = hr.observed_boundary;
  }
  if (hr.split_violation) {
    cert["part_u"] = verts_one_based(hr.part_u);
    cert["part_w"] = verts_one_based(hr.part_w);
    cert["split_size"] = hr.split_size;
  }
  prop["certificate"] = cert.empty() ? json(nullptr) : cert;
  props.push_back(std::move(prop));
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{
      "kwig: k-wise independent random graph toolkit.\n"
      "Vertex ids on the command line are one-based; machine formats (seed\n"
      "files, edge-list exports, CSV) are zero-based.  All commands are\n"
      "deterministic given their flags; KWIG_THREADS (1..256) caps worker\n"
      "threads without changing any output byte."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value configuration file, given before the subcommand; keys for a "
                 "subcommand go in its section, e.g. [experiment]; command-line flags win");

  int exit_code = 0;

  // --- gen -----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Sample a k-wise graph and write its seed file");
  struct {
    std::uint64_t n = 0;
    std::string p = "1/2^1";
    std::uint32_t k = 2;
    std::uint64_t seed = 1;
    std::string out;
  } gen_opt;
  gen->add_option("--n", gen_opt.n, "vertex count")->required();
  gen->add_option("--p", gen_opt.p,
                  "edge probability: t/2^l, a/b (b a power of two), 2^-l, or decimal "
                  "(rounded to the nearest 1/2^20 grid point)");
  gen->add_option("--k", gen_opt.k, "independence order (default 2)");
  gen->add_option("--seed", gen_opt.seed, "master seed (default 1)");
  gen->add_option("--out", gen_opt.out, "seed file path")->required();
  gen->callback([&] {
    const kwig::DyadicProb p = parse_prob_arg(gen_opt.p);
    kwig::Rng rng(gen_opt.seed, "gen");
    const kwig::ImplicitGraph g = kwig::make_graph(gen_opt.n, p, gen_opt.k, rng);
    kwig::save_graph(g, gen_opt.out);
    const auto* so = dynamic_cast<const kwig::SchemeOracle*>(g.oracle.get());
    std::cout << "gen: n=" << gen_opt.n << " p=" << prob_text(p) << " k=" << gen_opt.k
              << " seed=" << gen_opt.seed << " field=GF(2^" << so->scheme().field.m
              << ") out=" << gen_opt.out << "\n";
  });

  // --- query ---------------------------------------------------------------
  auto* query = app.add_subcommand("query", "Answer edge queries against a seed file");
  struct {
    std::string graph;
    std::uint64_t u = 0, v = 0;
    bool from_stdin = false;
    std::int64_t degree_of = -1;
  } query_opt;
  query->add_option("--graph", query_opt.graph, "seed file")->required();
  query->add_option("--u", query_opt.u, "first endpoint (one-based)");
  query->add_option("--v", query_opt.v, "second endpoint (one-based)");
  query->add_flag("--stdin", query_opt.from_stdin,
                  "read one-based 'u v' pairs from stdin, one answer line each");
  query->add_option("--degree", query_opt.degree_of,
                    "print the degree of this vertex (one-based) instead");
  query->callback([&] {
    const kwig::ImplicitGraph g = kwig::load_graph(query_opt.graph);
    const std::uint64_t n = g.params.n;
    const auto check = [n](std::uint64_t u, std::uint64_t v) {
      if (u < 1 || v < 1 || u > n || v > n)
        throw std::invalid_argument("vertex out of range (one-based, 1.." + std::to_string(n) +
                                    ")");
      if (u == v) throw std::invalid_argument("self-loops are not part of the model");
    };
    if (query_opt.degree_of >= 0) {
      const std::uint64_t v = static_cast<std::uint64_t>(query_opt.degree_of);
      check(v, v == n ? 1 : n);
      std::cout << kwig::implicit_degree(g, v - 1) << "\n";
      return;
    }
    if (query_opt.from_stdin) {
      std::uint64_t u = 0, v = 0;
      while (std::cin >> u >> v) {
        check(u, v);
        std::cout << (g.has_edge(u - 1, v - 1) ? "1" : "0") << "\n";
      }
      return;
    }
    if (query_opt.u == 0 || query_opt.v == 0)
      throw std::invalid_argument("query needs --u and --v (or --stdin, or --degree)");
    check(query_opt.u, query_opt.v);
    std::cout << (g.has_edge(query_opt.u - 1, query_opt.v - 1) ? "1" : "0") << "\n";
  });

  // --- export --------------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("export", "Write the edge list of a seed file");
  struct {
    std::string graph;
    std::string out = "-";
  } export_opt;
  exp_cmd->add_option("--graph", export_opt.graph, "seed file")->required();
  exp_cmd->add_option("--out", export_opt.out,
                      "output path ('-' = stdout); lines 'u v', zero-based, edge-index order");
  exp_cmd->callback([&] {
    const kwig::ImplicitGraph g = kwig::load_graph(export_opt.graph);
    if (export_opt.out == "-") {
      kwig::export_edges(g, std::cout);
    } else {
      std::ofstream out(export_opt.out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + export_opt.out);
      kwig::export_edges(g, out);
    }
  });

  // --- intersect -----------------------------------------------------------
  auto* inter = app.add_subcommand("intersect",
                                   "Edge-wise AND of two seed files (density multiplies, "
                                   "independence order is the minimum)");
  struct {
    std::string a, b, out;
  } inter_opt;
  inter->add_option("--a", inter_opt.a, "first seed file")->required();
  inter->add_option("--b", inter_opt.b, "second seed file")->required();
  inter->add_option("--out", inter_opt.out, "output seed file")->required();
  inter->callback([&] {
    const kwig::ImplicitGraph a = kwig::load_graph(inter_opt.a);
    const kwig::ImplicitGraph b = kwig::load_graph(inter_opt.b);
    const kwig::ImplicitGraph c = kwig::intersect(a, b);
    kwig::save_graph(c, inter_opt.out);
    std::cout << "intersect: n=" << c.params.n << " p=" << prob_text(c.params.p)
              << " k=" << c.params.k << " out=" << inter_opt.out << "\n";
  });

  // --- adversarial ---------------------------------------------------------
  auto* adv = app.add_subcommand("adversarial",
                                 "Constructions separating bounded independence from "
                                 "true randomness");
  adv->require_subcommand(1);

  auto* cp = adv->add_subcommand("clique-partition",
                                 "Two disjoint cliques on a uniform odd/even split "
                                 "(pairwise independent at p=1/2, almost never connected)");
  struct {
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    std::string out = "-";
  } cp_opt;
  cp->add_option("--n", cp_opt.n, "vertex count (>= 5)")->required();
  cp->add_option("--seed", cp_opt.seed, "master seed");
  cp->add_option("--out", cp_opt.out, "edge-list path ('-' = stdout), zero-based");
  cp->callback([&] {
    kwig::Rng rng(cp_opt.seed, "clique-partition");
    const kwig::CliquePartitionGraph g = kwig::sample_clique_partition(cp_opt.n, rng);
    const auto write_edges = [&](std::ostream& out) {
      for (std::uint64_t v = 1; v < g.n; ++v)
        for (std::uint64_t u = 0; u < v; ++u)
          if (g.has_edge(u, v)) out << u << " " << v << "\n";
    };
    if (cp_opt.out == "-") {
      write_edges(std::cout);
    } else {
      std::ofstream out(cp_opt.out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + cp_opt.out);
      write_edges(out);
      std::cout << "clique-partition: n=" << g.n << " side0=" << g.side_count(0)
                << " side1=" << g.side_count(1) << " out=" << cp_opt.out << "\n";
    }
  });

  auto* plant = adv->add_subcommand("plant",
                                    "Plant a pattern into edge-disjoint blocks of a "
                                    "k-wise graph and write the seed file");
  struct {
    std::uint64_t n = 0;
    std::uint32_t s = 0;
    std::uint32_t k = 1;
    std::string p = "1/2^1";
    std::uint64_t seed = 1;
    std::string shape, pattern, out;
  } plant_opt;
  plant->add_option("--n", plant_opt.n, "vertex count")->required();
  plant->add_option("--s", plant_opt.s, "pattern order (vertices per block)");
  plant->add_option("--k", plant_opt.k, "independence order");
  plant->add_option("--p", plant_opt.p, "edge probability (dyadic)");
  plant->add_option("--seed", plant_opt.seed, "master seed");
  plant->add_option("--shape", plant_opt.shape, "builtin pattern: triangle|empty|complete");
  plant->add_option("--pattern", plant_opt.pattern,
                    "edge-list file, one-based pairs in 1..s ('#' comments)");
  plant->add_option("--out", plant_opt.out, "output seed file")->required();
  plant->callback([&] {
    const kwig::DyadicProb p = parse_prob_arg(plant_opt.p);
    const kwig::PatternGraph h =
        pattern_from_args(plant_opt.s, plant_opt.shape, plant_opt.pattern);
    const kwig::BlockPlanting bp =
        kwig::plant_pattern(plant_opt.n, plant_opt.s, h, plant_opt.k, p, plant_opt.seed);
    kwig::save_graph(bp.graph, plant_opt.out);
    const auto& oracle = *bp.oracle;
    const long double floor = oracle.block_event_floor();
    const std::uint64_t blocks = oracle.design().block_total();
    std::cout << "plant: n=" << plant_opt.n << " s=" << plant_opt.s << " k=" << plant_opt.k
              << " p=" << prob_text(p) << " q=" << oracle.design().q << " blocks=" << blocks
              << " block_field=GF(2^" << oracle.block_field().m << ")\n";
    std::cout << "plant: per-block realization probability >= " << fmt_ld(floor)
              << " (expected realizing blocks >= " << fmt_ld(floor * blocks) << ")";
    if (const auto exact = oracle.block_event_exact()) {
      std::cout << "; exact = " << exact->satisfying << "/" << exact->total;
    }
    std::cout << "\nplant: out=" << plant_opt.out << "\n";
  });

  // --- bound ---------------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "Evaluate a closed-form guarantee");
  bound->require_subcommand(1);
  // Bound formulas take real-valued p directly; only graph constructions
  // are restricted to dyadic probabilities.

  auto* b_tail = bound->add_subcommand("tail", "Deviation bound for k-wise indicator sums");
  struct {
    std::uint64_t m = 0;
    std::uint32_t k = 0;
    long double mu = 0, delta = 0;
  } tail_opt;
  b_tail->add_option("--m", tail_opt.m, "number of indicators")->required();
  b_tail->add_option("--k", tail_opt.k, "independence order (even)")->required();
  b_tail->add_option("--mu", tail_opt.mu, "indicator mean in (0,1)")->required();
  b_tail->add_option("--delta", tail_opt.delta, "relative deviation > 0")->required();
  b_tail->callback([&] {
    const long double v = kwig::tail_bound(tail_opt.m, tail_opt.k, tail_opt.mu, tail_opt.delta);
    std::cout << "tail(M=" << tail_opt.m << ", k=" << tail_opt.k << ", mu=" << fmt_ld(tail_opt.mu)
              << ", delta=" << fmt_ld(tail_opt.delta) << ") = " << fmt_ld(v) << "\n";
    std::cout << "formula: [2k(1-mu) / (delta^2 mu M)]^(k/2)\n";
    if (v >= 1.0L) std::cout << "note: value >= 1, vacuous\n";
  });

  auto* b_deg = bound->add_subcommand("degree", "Probability any degree strays by factor eps");
  struct {
    std::uint64_t n = 0;
    std::uint32_t k = 0;
    long double p = 0, eps = 0;
  } deg_opt;
  b_deg->add_option("--n", deg_opt.n, "vertex count")->required();
  b_deg->add_option("--k", deg_opt.k, "independence order")->required();
  b_deg->add_option("--p", deg_opt.p, "edge probability in (0,1)")->required();
  b_deg->add_option("--eps", deg_opt.eps, "relative deviation in (0,1]")->required();
  b_deg->callback([&] {
    const auto b = kwig::degree_failure_bound(deg_opt.n, deg_opt.k, deg_opt.p, deg_opt.eps);
    std::cout << "degree(n=" << deg_opt.n << ", k=" << deg_opt.k << ", p=" << fmt_ld(deg_opt.p)
              << ", eps=" << fmt_ld(deg_opt.eps) << ") = " << fmt_ld(b.value) << "\n";
    std::cout << "formula: n * [3k / (eps^2 p n)]^floor(k/2)\n";
    if (b.vacuous) std::cout << "note: vacuous at these parameters\n";
  });

  auto* b_codeg =
      bound->add_subcommand("codegree", "Probability any codegree strays by factor gamma");
  struct {
    std::uint64_t n = 0;
    std::uint32_t k = 0;
    long double p = 0, gamma = 0;
  } codeg_opt;
  b_codeg->add_option("--n", codeg_opt.n, "vertex count")->required();
  b_codeg->add_option("--k", codeg_opt.k, "independence order")->required();
  b_codeg->add_option("--p", codeg_opt.p, "edge probability in (0,1)")->required();
  b_codeg->add_option("--gamma", codeg_opt.gamma, "relative deviation > 0")->required();
  b_codeg->callback([&] {
    const auto b =
        kwig::codegree_failure_bound(codeg_opt.n, codeg_opt.k, codeg_opt.p, codeg_opt.gamma);
    std::cout << "codegree(n=" << codeg_opt.n << ", k=" << codeg_opt.k
              << ", p=" << fmt_ld(codeg_opt.p) << ", gamma=" << fmt_ld(codeg_opt.gamma)
              << ") = " << fmt_ld(b.value) << "\n";
    std::cout << "formula: C(n,2) * tail(n-2, 2*floor(k/4), p^2, gamma)\n";
    if (b.vacuous) std::cout << "note: vacuous at these parameters\n";
  });

  auto* b_sstar = bound->add_subcommand("s-star", "First-moment independence number scale");
  struct {
    std::uint64_t n = 0;
    long double p = 0;
  } sstar_opt;
  b_sstar->add_option("--n", sstar_opt.n, "vertex count")->required();
  b_sstar->add_option("--p", sstar_opt.p, "edge probability in (0,1)")->required();
  b_sstar->callback([&] {
    const std::uint32_t s = kwig::s_star(sstar_opt.n, sstar_opt.p);
    std::cout << "s-star(n=" << sstar_opt.n << ", p=" << fmt_ld(sstar_opt.p) << ") = " << s
              << "\n";
    std::cout << "formula: max S with C(n,S) (1-p)^C(S,2) >= 1\n";
  });

  auto* b_chrom = bound->add_subcommand("chromatic", "Chromatic number targets");
  struct {
    std::uint64_t n = 0;
    long double p = 0, c = 1.0L;
  } chrom_opt;
  b_chrom->add_option("--n", chrom_opt.n, "vertex count")->required();
  b_chrom->add_option("--p", chrom_opt.p, "edge probability in (0,1)")->required();
  b_chrom->add_option("--c", chrom_opt.c, "upper-target scale constant (default 1)");
  b_chrom->callback([&] {
    const auto t = kwig::chromatic_targets(chrom_opt.n, chrom_opt.p, chrom_opt.c);
    std::cout << "chromatic(n=" << chrom_opt.n << ", p=" << fmt_ld(chrom_opt.p)
              << ", c=" << fmt_ld(chrom_opt.c) << "): lower = " << fmt_ld(t.lower)
              << ", upper = " << fmt_ld(t.upper) << "\n";
    std::cout << "formula: lower = n ln(1/(1-p)) / (2 ln(pn)); upper = c n ln(1/(1-p)) / "
                 "ln(pn)\n";
  });

  auto* b_thresh =
      bound->add_subcommand("subgraph-threshold", "Appearance threshold p* of a pattern");
  struct {
    std::uint64_t n = 0;
    std::uint32_t s = 0;
    std::string shape, pattern;
  } thresh_opt;
  b_thresh->add_option("--n", thresh_opt.n, "vertex count")->required();
  b_thresh->add_option("--s", thresh_opt.s, "pattern order");
  b_thresh->add_option("--shape", thresh_opt.shape, "builtin pattern: triangle|empty|complete");
  b_thresh->add_option("--pattern", thresh_opt.pattern, "edge-list file (one-based)");
  b_thresh->callback([&] {
    const kwig::PatternGraph h =
        pattern_from_args(thresh_opt.s, thresh_opt.shape, thresh_opt.pattern);
    const kwig::DefianceParams d = kwig::defiance_params(h);
    std::cout << "pattern: order=" << h.s << " edges=" << h.edge_total()
              << " rho=" << d.rho_num << "/" << d.rho_den << "\n";
    const long double pstar = kwig::subgraph_threshold(thresh_opt.n, d.rho_num, d.rho_den);
    std::cout << "subgraph-threshold(n=" << thresh_opt.n << ") = n^(-rho) = " << fmt_ld(pstar)
              << "\n";
    if (d.defiable) {
      std::cout << "independence order that defeats the threshold: k=" << d.k_defy << "\n";
    } else {
      std::cout << "note: rho = 2 (single-edge components only); no independence order "
                   "defeats this threshold\n";
    }
  });

  auto* b_subk = bound->add_subcommand(
      "subgraph-k", "Independence order matching all subgraph counts up to a pattern order");
  struct {
    std::uint32_t v = 0;
  } subk_opt;
  b_subk->add_option("--v", subk_opt.v, "largest pattern order to match (>= 2)")->required();
  b_subk->callback([&] {
    const std::uint64_t k = kwig::subgraph_k_sufficient(subk_opt.v);
    std::cout << "subgraph-k(v=" << subk_opt.v << ") = " << k << "\n";
    std::cout << "formula: 2 C(u,2) with u = ceil(v^2/4) + v\n";
  });

  // --- verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Measure a seed file's graph against its targets");
  struct {
    std::string graph;
    std::string suite = "basic";
    std::string out;
    std::uint64_t seed = 1;
    std::uint64_t budget = 50000000;
  } verify_opt;
  verify->add_option("--graph", verify_opt.graph, "seed file")->required();
  verify->add_option("--suite", verify_opt.suite,
                     "degrees|connectivity|kappa|matching|hamilton|independence|chromatic|"
                     "spectral|hks|basic|all");
  verify->add_option("--out", verify_opt.out, "report path (default stdout)");
  verify->add_option("--seed", verify_opt.seed, "seed for randomized probes (default 1)");
  verify->add_option("--budget", verify_opt.budget, "search-node budget for exact searches");
  verify->callback([&] {
    const kwig::ImplicitGraph ig = kwig::load_graph(verify_opt.graph);
    const kwig::ExplicitGraph g = kwig::materialize(ig);
    const kwig::DyadicProb p = ig.params.p;
    const std::string& suite = verify_opt.suite;
    const std::vector<std::string> known = {"degrees",      "connectivity", "kappa",
                                            "matching",     "hamilton",     "independence",
                                            "chromatic",    "spectral",     "hks",
                                            "basic",        "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end())
      throw std::invalid_argument("unknown suite: " + suite);
    const auto want = [&](const char* name) {
      if (suite == name) return true;
      if (suite == "all") return true;
      if (suite == "basic")
        return std::string(name) == "degrees" || std::string(name) == "connectivity";
      return false;
    };
    json props = json::array();
    if (want("degrees")) report_degrees(g, p, ig.params.k, props);
    if (want("connectivity")) report_connectivity(g, props);
    if (want("kappa")) report_kappa(g, props);
    if (want("matching")) report_matching(g, props);
    if (want("hamilton")) report_hamilton(g, verify_opt.seed, props);
    if (want("independence")) report_independence(g, p, verify_opt.budget, props);
    if (want("chromatic")) report_chromatic(g, p, props);
    if (want("spectral")) report_spectral(g, p, verify_opt.seed, props);
    if (want("hks")) report_hks(g, verify_opt.seed, props);

    json report;
    report["schema_version"] = 1;
    report["n"] = g.n();
    report["p"] = prob_text(p);
    report["k"] = ig.params.k;
    report["suite"] = suite;
    report["properties"] = std::move(props);
    const std::string text = report.dump(2) + "\n";
    if (verify_opt.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(verify_opt.out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + verify_opt.out);
      out << text;
      std::cout << "verify: report written to " << verify_opt.out << "\n";
    }
  });

  // --- experiment -----------------------------------------------------------
  auto* exper = app.add_subcommand("experiment", "Run a (n, p, k) grid of measured trials");
  struct {
    std::vector<std::uint64_t> n;
    std::vector<std::string> p;
    std::vector<std::uint32_t> k;
    std::string construction = "plain";
    std::string suite = "basic";
    std::uint32_t trials = 10;
    std::uint64_t seed = 1;
    std::string out;
    std::uint32_t plant_s = 0;
    std::string shape, pattern;
    unsigned threads = 0;
  } ex_opt;
  exper->add_option("--n", ex_opt.n, "vertex counts")->required()->delimiter(',');
  exper->add_option("--p", ex_opt.p, "edge probabilities (dyadic)")->required()->delimiter(',');
  exper->add_option("--k", ex_opt.k, "independence orders")->required()->delimiter(',');
  exper->add_option("--construction", ex_opt.construction,
                    "plain|intersect|clique-partition|plant");
  exper->add_option("--suite", ex_opt.suite,
                    "basic|degrees|connectivity|spectral|kappa|matching|hamilton|independence|"
                    "plant");
  exper->add_option("--trials", ex_opt.trials, "trials per grid cell (0 = header-only CSV)");
  exper->add_option("--seed", ex_opt.seed, "master seed");
  exper->add_option("--out", ex_opt.out, "CSV output path")->required();
  exper->add_option("--plant-s", ex_opt.plant_s, "pattern order (construction plant)");
  exper->add_option("--shape", ex_opt.shape, "builtin pattern: triangle|empty|complete");
  exper->add_option("--pattern", ex_opt.pattern, "pattern edge-list file (one-based)");
  exper->add_option("--threads", ex_opt.threads,
                    "worker threads (capped by KWIG_THREADS; default = that cap)");
  exper->callback([&] {
    kwig::ExperimentSpec spec;
    spec.n_values = ex_opt.n;
    for (const std::string& s : ex_opt.p) spec.p_values.push_back(parse_prob_arg(s));
    spec.k_values = ex_opt.k;
    if (ex_opt.construction == "plain") {
      spec.construction = kwig::Construction::plain;
    } else if (ex_opt.construction == "intersect") {
      spec.construction = kwig::Construction::intersection;
    } else if (ex_opt.construction == "clique-partition") {
      spec.construction = kwig::Construction::clique_partition;
    } else if (ex_opt.construction == "plant") {
      spec.construction = kwig::Construction::plant;
    } else {
      throw std::invalid_argument("unknown construction: " + ex_opt.construction);
    }
    spec.suite = ex_opt.suite;
    spec.trials = ex_opt.trials;
    spec.master_seed = ex_opt.seed;
    if (spec.construction == kwig::Construction::plant) {
      spec.plant_shape = pattern_from_args(ex_opt.plant_s, ex_opt.shape, ex_opt.pattern);
      spec.plant_s = ex_opt.plant_s;
    } else if (ex_opt.plant_s || !ex_opt.shape.empty() || !ex_opt.pattern.empty()) {
      throw std::invalid_argument("--plant-s/--shape/--pattern require --construction plant");
    }
    const unsigned cap = kwig::thread_count_from_env();
    const unsigned threads = ex_opt.threads ? std::min(ex_opt.threads, cap) : cap;

    const auto t0 = std::chrono::steady_clock::now();
    const kwig::ExperimentResult res = kwig::run_experiment(spec, threads);
    const auto t1 = std::chrono::steady_clock::now();

    std::ofstream out(ex_opt.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + ex_opt.out);
    out << res.csv;
    std::cout << res.summary;
    std::cerr << "experiment: " << std::chrono::duration<double>(t1 - t0).count() << "s, threads="
              << threads << ", csv=" << ex_opt.out << "\n";
  });

  // --- selftest --------------------------------------------------------------
  auto* selftest = app.add_subcommand("selftest", "Run the exhaustive small-instance checks");
  struct {
    bool inject_field_fault = false;
  } st_opt;
  selftest->add_flag("--inject-field-fault", st_opt.inject_field_fault,
                     "testing aid: corrupt a scratch copy of the field table to show "
                     "failure reporting");
  selftest->callback([&] { exit_code = run_selftest(st_opt.inject_field_fault); });

  // --- field-table -----------------------------------------------------------
  auto* ftable = app.add_subcommand("field-table", "Print the binary-field modulus table");
  struct {
    bool audit = false;
  } ft_opt;
  ftable->add_flag("--audit", ft_opt.audit, "verify every modulus is irreducible");
  ftable->callback([&] {
    const auto table = kwig::field_table();
    for (std::uint32_t m = 1; m <= 63; ++m) {
      std::cout << "m=" << m << " poly=0x" << std::hex << table[m] << std::dec << "\n";
    }
    if (ft_opt.audit) {
      std::string detail;
      if (audit_field_table(0, detail)) {
        std::cout << "field-table audit: ok\n";
      } else {
        std::cout << "field-table audit: FAIL " << detail << "\n";
        exit_code = 1;
      }
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
