#include "kwig/scheme.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace kwig {

DyadicProb DyadicProb::make(std::uint64_t num, std::uint32_t ell) {
  if (ell < 1 || ell > 62) {
    throw std::invalid_argument("probability denominator exponent out of range (1..62)");
  }
  if (num == 0 || num >= (std::uint64_t(1) << ell)) {
    throw std::invalid_argument("probability must lie strictly between 0 and 1");
  }
  // Canonical form: odd numerator (or ell == 1).  The reduced exponent is
  // what sizes the field, so equal rationals always behave identically.
  while ((num & 1) == 0 && ell > 1) {
    num >>= 1;
    --ell;
  }
  DyadicProb p;
  p.num = num;
  p.ell = ell;
  return p;
}

long double DyadicProb::value() const { return ldexpl(static_cast<long double>(num), -static_cast<int>(ell)); }

DyadicProb DyadicProb::times(const DyadicProb& o) const {
  if (ell + o.ell > 62) {
    throw std::invalid_argument("product probability denominator exceeds 2^62");
  }
  return make(num * o.num, ell + o.ell);
}

namespace {

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("cannot parse probability component '" + s + "'");
  }
  return std::stoull(s);
}

}  // namespace

DyadicProb parse_prob(const std::string& text, bool* rounded) {
  if (rounded) *rounded = false;
  std::string s;
  for (char c : text) {
    if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.rfind("2^-", 0) == 0) {
    return DyadicProb::make(1, static_cast<std::uint32_t>(parse_u64(s.substr(3))));
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::uint64_t num = parse_u64(s.substr(0, slash));
    std::string den = s.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
      return DyadicProb::make(num, static_cast<std::uint32_t>(parse_u64(den.substr(2))));
    }
    const std::uint64_t d = parse_u64(den);
    if (d == 0 || std::popcount(d) != 1) {
      throw std::invalid_argument("probability denominator must be a power of two, got '" + den +
                                  "'");
    }
    return DyadicProb::make(num, static_cast<std::uint32_t>(std::countr_zero(d)));
  }
  // Decimal: exact if the reduced denominator is a power of two, otherwise
  // rounded to the nearest t/2^20.
  auto dot = s.find('.');
  std::string int_part = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (int_part.empty()) int_part = "0";
  if (parse_u64(int_part) != 0 || frac.empty()) {
    throw std::invalid_argument("probability must lie strictly between 0 and 1");
  }
  if (frac.size() > 18) frac = frac.substr(0, 18);
  std::uint64_t a = parse_u64(frac);
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::uint64_t g = std::gcd(a, den);
  a /= g;
  den /= g;
  if (std::popcount(den) == 1 && den > 1) {
    return DyadicProb::make(a, static_cast<std::uint32_t>(std::countr_zero(den)));
  }
  if (rounded) *rounded = true;
  const long double v = static_cast<long double>(a) / static_cast<long double>(den);
  const std::uint64_t t = static_cast<std::uint64_t>(llroundl(v * 1048576.0L));
  if (t == 0 || t >= 1048576) {
    throw std::invalid_argument("probability must lie strictly between 0 and 1");
  }
  return DyadicProb::make(t, 20);
}

OrientationMap OrientationMap::all_standard(std::uint64_t m) {
  OrientationMap o;
  o.m_ = m;
  return o;
}

OrientationMap OrientationMap::forced(std::uint64_t m, ForcedPattern pat) {
  if (pat.e0 > m || pat.e1 > m - pat.e0) {
    throw std::invalid_argument("forced pattern longer than variable count");
  }
  if (pat.e0 == 0) return all_standard(m);
  if (m > (std::uint64_t(1) << 33)) {
    throw std::length_error("orientation bitmap too large");
  }
  OrientationMap o;
  o.m_ = m;
  o.words_.assign((m + 63) / 64, 0);
  for (std::uint64_t j = 0; j < pat.e0; ++j) o.words_[j >> 6] |= std::uint64_t(1) << (j & 63);
  return o;
}

OrientationMap OrientationMap::from_bitmap(std::uint64_t m, std::vector<std::uint64_t> words) {
  if (words.size() != (m + 63) / 64) {
    throw std::invalid_argument("orientation bitmap has wrong length");
  }
  if (m % 64 != 0 && !words.empty() && (words.back() >> (m % 64)) != 0) {
    throw std::invalid_argument("orientation bitmap has bits beyond the variable count");
  }
  bool any = false;
  for (std::uint64_t w : words) any |= (w != 0);
  if (!any) return all_standard(m);
  OrientationMap o;
  o.m_ = m;
  o.words_ = std::move(words);
  return o;
}

FieldSpec scheme_field(std::uint64_t m_vars, std::uint32_t ell) {
  if (m_vars == 0) throw std::invalid_argument("scheme needs at least one variable");
  const std::uint32_t bits_for_vars =
      m_vars <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(m_vars - 1));
  const std::uint32_t m = std::max(bits_for_vars, ell);
  if (m > 63) throw std::invalid_argument("variable count too large for supported fields");
  return field_spec(std::max<std::uint32_t>(m, 1));
}

VariableScheme scheme_new(std::uint64_t M, std::uint32_t k, DyadicProb p,
                          OrientationMap orientations, Rng& rng) {
  if (k < 1 || k > 65535) throw std::invalid_argument("independence order k out of range (1..65535)");
  if (orientations.size() != M) {
    throw std::invalid_argument("orientation map does not cover the variable range");
  }
  VariableScheme s;
  s.M = M;
  s.k = k;
  s.p = p;
  s.field = scheme_field(M, p.ell);
  s.orientations = std::move(orientations);
  s.seed.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) s.seed[i] = rng.next_bits(s.field.m);
  return s;
}

VariableScheme forced_scheme(std::uint64_t M, std::uint32_t k, DyadicProb p,
                             ForcedPattern pattern, Rng& rng) {
  return scheme_new(M, k, p, OrientationMap::forced(M, pattern), rng);
}

namespace {

void check_enumeration_budget(const FieldSpec& f, std::uint32_t k) {
  if (static_cast<std::uint64_t>(f.m) * k > 26) {
    throw std::length_error("enumeration budget exceeded (F^k > 2^26)");
  }
}

}  // namespace

JointDistribution enumerate_joint(std::uint64_t M, std::uint32_t k, DyadicProb p,
                                  const OrientationMap& orientations,
                                  std::span<const std::uint64_t> indices) {
  if (k < 1) throw std::invalid_argument("independence order k must be positive");
  if (orientations.size() != M) {
    throw std::invalid_argument("orientation map does not cover the variable range");
  }
  if (indices.size() > k) {
    throw std::invalid_argument("joint enumeration is limited to at most k indices");
  }
  for (std::uint64_t j : indices) {
    if (j >= M) throw std::out_of_range("variable index out of range");
  }
  const FieldSpec f = scheme_field(M, p.ell);
  check_enumeration_budget(f, k);

  const std::uint64_t total = std::uint64_t(1) << (std::uint64_t(f.m) * k);
  const std::uint64_t mask = f.element_mask();
  const std::uint64_t thresh = p.num << (f.m - p.ell);
  const std::uint64_t flip_at = f.order() - thresh;

  JointDistribution out;
  out.total = total;
  out.counts.assign(std::size_t(1) << indices.size(), 0);

  std::uint64_t coeffs[26];
  for (std::uint64_t s = 0; s < total; ++s) {
    for (std::uint32_t i = 0; i < k; ++i) coeffs[i] = (s >> (i * f.m)) & mask;
    std::size_t pat = 0;
    for (std::size_t t = 0; t < indices.size(); ++t) {
      const std::uint64_t z = eval_poly(std::span<const std::uint64_t>(coeffs, k), indices[t], f);
      const bool x = orientations.at(indices[t]) == Orientation::standard ? z < thresh : z >= flip_at;
      pat |= std::size_t(x) << t;
    }
    ++out.counts[pat];
  }
  return out;
}

EventCount forced_event_seed_count(std::uint64_t M, std::uint32_t k, DyadicProb p,
                                   ForcedPattern pattern) {
  if (k < 1) throw std::invalid_argument("independence order k must be positive");
  if (pattern.e0 > M || pattern.e1 > M - pattern.e0) {
    throw std::invalid_argument("forced pattern longer than variable count");
  }
  const FieldSpec f = scheme_field(M, p.ell);
  check_enumeration_budget(f, k);

  const std::uint64_t total = std::uint64_t(1) << (std::uint64_t(f.m) * k);
  const std::uint64_t mask = f.element_mask();
  const std::uint64_t thresh = p.num << (f.m - p.ell);
  const std::uint64_t flip_at = f.order() - thresh;

  EventCount out;
  out.total = total;
  std::uint64_t coeffs[26];
  for (std::uint64_t s = 0; s < total; ++s) {
    for (std::uint32_t i = 0; i < k; ++i) coeffs[i] = (s >> (i * f.m)) & mask;
    bool ok = true;
    for (std::uint64_t j = 0; ok && j < pattern.e0 + pattern.e1; ++j) {
      const std::uint64_t z = eval_poly(std::span<const std::uint64_t>(coeffs, k), j, f);
      // Leading e0 variables are FLIPPED and must read 0; the next e1 are
      // STANDARD and must read 1.  Both conditions are z < threshold tests.
      ok = j < pattern.e0 ? z < flip_at : z < thresh;
    }
    if (ok) ++out.satisfying;
  }
  return out;
}

long double tail_bound(std::uint64_t M, std::uint32_t k, long double mu, long double delta) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("tail bound requires an even k >= 2");
  if (!(mu > 0.0L) || !(mu < 1.0L)) throw std::invalid_argument("tail bound requires 0 < mu < 1");
  if (!(delta > 0.0L)) throw std::invalid_argument("tail bound requires delta > 0");
  if (M <= k) throw std::invalid_argument("tail bound requires M > k");
  const long double hyp =
      (static_cast<long double>(M - k) / static_cast<long double>(k)) * mu * (1.0L - mu);
  if (hyp < 1.0L) {
    throw std::domain_error("tail bound hypothesis violated: (M-k)/k * mu*(1-mu) < 1");
  }
  const long double base = (2.0L * k * (1.0L - mu)) /
                           (delta * delta * mu * static_cast<long double>(M));
  return powl(base, static_cast<long double>(k / 2));
}

}  // namespace kwig
