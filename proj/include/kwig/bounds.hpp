#pragma once

#include <cstdint>

#include "kwig/scheme.hpp"

// Closed-form guarantees for k-wise independent graphs.  Every function
// returns the bound exactly as the formula gives it; values >= 1 for a
// probability, or otherwise contentless, are flagged vacuous rather than
// clamped, so callers can see when a parameter choice proves nothing.

namespace kwig {

struct BoundResult {
  long double value = 0.0L;
  bool vacuous = false;  // true when the bound carries no information
};

// Pr[some vertex degree deviates from p(n-1) by a factor eps]:
//   n * [3k / (eps^2 p n)]^floor(k/2); odd k is accepted.
BoundResult degree_failure_bound(std::uint64_t n, std::uint32_t k, long double p,
                                 long double eps);

// Pr[some codegree deviates from p^2(n-2) by a factor gamma], via the tail
// bound at independence order 2*floor(k/4) on n-2 indicators with mean p^2,
// taken over all vertex pairs.
BoundResult codegree_failure_bound(std::uint64_t n, std::uint32_t k, long double p,
                                   long double gamma);

// Largest S with C(n, S) (1-p)^C(S,2) >= 1: the first-moment independence
// number scale.  Computed in log space; the function of S is concave, so the
// scan stops at the first sign change.
std::uint32_t s_star(std::uint64_t n, long double p);

struct ChromaticTargets {
  long double lower = 0.0L;  // n ln(1/(1-p)) / (2 ln(p n))
  long double upper = 0.0L;  // c n ln(1/(1-p)) / ln(p n)
};
ChromaticTargets chromatic_targets(std::uint64_t n, long double p, long double c = 1.0L);

// Appearance threshold p* = n^-rho for a pattern of density rho = num/den.
long double subgraph_threshold(std::uint64_t n, std::uint64_t rho_num, std::uint64_t rho_den);

// Independence order sufficient to make subgraph counts of all patterns on
// at most v vertices behave as in G(n, p): 2 * C(ceil(v^2/4) + v, 2).
std::uint64_t subgraph_k_sufficient(std::uint32_t v);

}  // namespace kwig
