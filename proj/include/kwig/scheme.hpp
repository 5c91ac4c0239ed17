#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kwig/field.hpp"
#include "kwig/rng.hpp"

// A variable scheme realizes M {0,1}-variables, any k of which are exactly
// independent with marginal p, from a single random degree-(k-1) polynomial
// over GF(F): variable j is a threshold test on Q(j).  Two threshold
// orientations exist so that specific variables can be forced to a chosen
// value by the all-zero polynomial:
//
//   STANDARD: X_j = 1  iff  Q(j) <  p*F        (zero seed gives X_j = 1)
//   FLIPPED:  X_j = 1  iff  Q(j) >= F - p*F    (zero seed gives X_j = 0)
//
// Both acceptance sets have exactly p*F elements, so marginals and joint
// distributions are unaffected by the orientation choice.

namespace kwig {

// p = num / 2^ell with 0 < p < 1.
struct DyadicProb {
  std::uint64_t num = 1;
  std::uint32_t ell = 1;

  static DyadicProb make(std::uint64_t num, std::uint32_t ell);
  long double value() const;
  // Product probability; throws when the result is not representable
  // (combined ell beyond 62 bits).
  DyadicProb times(const DyadicProb& o) const;
  friend bool operator==(const DyadicProb&, const DyadicProb&) = default;
};

// Parses "t/2^l", "a/b" with b a power of two, "2^-l", or a plain decimal.
// Non-dyadic decimals are rounded to the nearest t/2^20; *rounded is set to
// true in that case (when the pointer is non-null).
DyadicProb parse_prob(const std::string& text, bool* rounded = nullptr);

enum class Orientation : std::uint8_t { standard = 0, flipped = 1 };

// e0 leading variables forced to 0, the next e1 forced to 1.
struct ForcedPattern {
  std::uint64_t e0 = 0;
  std::uint64_t e1 = 0;
};

// Per-variable orientation flags; the common all-STANDARD case stores no
// bitmap at all, so schemes over huge index ranges stay O(1) in memory.
class OrientationMap {
 public:
  OrientationMap() = default;
  static OrientationMap all_standard(std::uint64_t m);
  static OrientationMap forced(std::uint64_t m, ForcedPattern pat);
  static OrientationMap from_bitmap(std::uint64_t m, std::vector<std::uint64_t> words);

  Orientation at(std::uint64_t j) const {
    if (words_.empty()) return Orientation::standard;
    return ((words_[j >> 6] >> (j & 63)) & 1) ? Orientation::flipped : Orientation::standard;
  }
  std::uint64_t size() const { return m_; }
  bool uniform_standard() const { return words_.empty(); }
  // LSB-first bitmap (bit j of word j>>6), 1 = FLIPPED; empty when uniform.
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> words_;
};

// Field used for M variables at probability denominator 2^ell:
// F = max(2^ceil(log2 M), 2^ell).
FieldSpec scheme_field(std::uint64_t m_vars, std::uint32_t ell);

struct VariableScheme {
  std::uint64_t M = 0;
  std::uint32_t k = 1;
  DyadicProb p;
  FieldSpec field;
  std::vector<std::uint64_t> seed;  // k coefficients, constant term first
  OrientationMap orientations;

  std::uint64_t threshold_count() const { return p.num << (field.m - p.ell); }  // p*F

  bool eval(std::uint64_t j) const {
    if (j >= M) throw std::out_of_range("variable index out of range");
    const std::uint64_t z = eval_poly(seed, j, field);
    const std::uint64_t t = threshold_count();
    return orientations.at(j) == Orientation::standard ? z < t : z >= field.order() - t;
  }
};

// Fresh scheme with uniformly random seed drawn from rng.
VariableScheme scheme_new(std::uint64_t M, std::uint32_t k, DyadicProb p,
                          OrientationMap orientations, Rng& rng);

// Scheme whose first pattern.e0 variables are FLIPPED and next pattern.e1
// are STANDARD, so the all-zero seed evaluates them to 0^e0 1^e1.
VariableScheme forced_scheme(std::uint64_t M, std::uint32_t k, DyadicProb p,
                             ForcedPattern pattern, Rng& rng);

struct JointDistribution {
  // counts[pat]: seeds for which variable indices[t] == bit t of pat.
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;  // F^k
};

// Exhausts all F^k seeds and tallies the joint distribution of the chosen
// variables.  Requires |indices| <= k and F^k <= 2^26.
JointDistribution enumerate_joint(std::uint64_t M, std::uint32_t k, DyadicProb p,
                                  const OrientationMap& orientations,
                                  std::span<const std::uint64_t> indices);

struct EventCount {
  std::uint64_t satisfying = 0;
  std::uint64_t total = 0;
};

// Exhausts all F^k seeds of the forced scheme and counts those whose first
// e0 variables evaluate to 0 and next e1 to 1 (the pattern event).  Same
// enumeration budget as enumerate_joint; the pattern may span more than k
// variables.
EventCount forced_event_seed_count(std::uint64_t M, std::uint32_t k, DyadicProb p,
                                   ForcedPattern pattern);

// Upper bound on Pr[|sum - mu*M| >= delta*mu*M] for a sum of M k-wise
// independent indicators with mean mu:  [2k(1-mu) / (delta^2 mu M)]^(k/2).
// Requires k even and (M-k)/k * mu(1-mu) >= 1.
long double tail_bound(std::uint64_t M, std::uint32_t k, long double mu, long double delta);

}  // namespace kwig
