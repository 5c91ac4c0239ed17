#include "kwig/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace kwig {

namespace {

void check_p(long double p) {
  if (!(p > 0.0L) || !(p < 1.0L)) throw std::invalid_argument("need 0 < p < 1");
}

}  // namespace

BoundResult degree_failure_bound(std::uint64_t n, std::uint32_t k, long double p,
                                 long double eps) {
  if (n < 2) throw std::invalid_argument("need at least 2 vertices");
  if (k < 2) throw std::invalid_argument("degree bound requires k >= 2");
  check_p(p);
  if (!(eps > 0.0L)) throw std::invalid_argument("need eps > 0");
  const long double base = (3.0L * k) / (eps * eps * p * static_cast<long double>(n));
  BoundResult r;
  r.value = static_cast<long double>(n) * powl(base, static_cast<long double>(k / 2));
  r.vacuous = !(r.value < 1.0L);
  return r;
}

BoundResult codegree_failure_bound(std::uint64_t n, std::uint32_t k, long double p,
                                   long double gamma) {
  if (n < 3) throw std::invalid_argument("need at least 3 vertices");
  if (k < 4) throw std::invalid_argument("codegree bound requires k >= 4");
  check_p(p);
  if (!(gamma > 0.0L)) throw std::invalid_argument("need gamma > 0");
  const std::uint32_t half = 2 * (k / 4);  // independence order available per pair
  const long double per_pair = tail_bound(n - 2, half, p * p, gamma);
  BoundResult r;
  r.value = static_cast<long double>(n) * static_cast<long double>(n - 1) / 2.0L * per_pair;
  r.vacuous = !(r.value < 1.0L);
  return r;
}

std::uint32_t s_star(std::uint64_t n, long double p) {
  if (n < 2) throw std::invalid_argument("need at least 2 vertices");
  check_p(p);
  const long double log_q = log1pl(-p);  // ln(1-p), negative
  const long double lg_n1 = lgammal(static_cast<long double>(n) + 1.0L);
  std::uint32_t best = 1;
  for (std::uint64_t s = 1; s <= n; ++s) {
    const long double ls = static_cast<long double>(s);
    const long double log_binom = lg_n1 - lgammal(ls + 1.0L) -
                                  lgammal(static_cast<long double>(n - s) + 1.0L);
    const long double f = log_binom + ls * (ls - 1.0L) / 2.0L * log_q;
    if (f < 0.0L) break;  // concave in s: once negative, negative forever
    best = static_cast<std::uint32_t>(s);
  }
  return best;
}

ChromaticTargets chromatic_targets(std::uint64_t n, long double p, long double c) {
  if (n < 2) throw std::invalid_argument("need at least 2 vertices");
  check_p(p);
  if (!(c > 0.0L)) throw std::invalid_argument("need c > 0");
  const long double ln_pn = logl(p * static_cast<long double>(n));
  if (!(ln_pn > 0.0L)) throw std::domain_error("chromatic targets need p*n > 1");
  const long double numer = static_cast<long double>(n) * (-log1pl(-p));
  ChromaticTargets t;
  t.lower = numer / (2.0L * ln_pn);
  t.upper = c * numer / ln_pn;
  return t;
}

long double subgraph_threshold(std::uint64_t n, std::uint64_t rho_num, std::uint64_t rho_den) {
  if (n < 2 || rho_num == 0 || rho_den == 0) {
    throw std::invalid_argument("threshold needs n >= 2 and a positive density");
  }
  const long double rho = static_cast<long double>(rho_num) / static_cast<long double>(rho_den);
  return powl(static_cast<long double>(n), -rho);
}

std::uint64_t subgraph_k_sufficient(std::uint32_t v) {
  if (v < 2) throw std::invalid_argument("patterns have at least 2 vertices");
  const std::uint64_t u = (static_cast<std::uint64_t>(v) * v + 3) / 4 + v;  // ceil(v^2/4) + v
  return 2 * (u * (u - 1) / 2);
}

}  // namespace kwig
