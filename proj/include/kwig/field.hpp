#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

// Exact arithmetic in GF(2^m) for m = 1..63.  Elements are bit masks (bit i
// holds the coefficient of x^i), addition is xor, multiplication is the
// carry-less product reduced by a fixed irreducible polynomial.  Seeds are
// only portable across builds if every build reduces by byte-identical
// polynomials, so the table is frozen in field.cpp and can be audited with
// `kwig field-table`.

namespace kwig {

struct FieldSpec {
  std::uint32_t m = 1;       // extension degree, 1..63
  std::uint64_t poly = 0x3;  // full reduction mask including the x^m bit

  std::uint64_t order() const { return std::uint64_t(1) << m; }
  std::uint64_t element_mask() const { return order() - 1; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Frozen reduction polynomials: entry m is (1 << m) | r with the smallest r
// making x^m + (bits of r) irreducible over GF(2).  Index 0 is unused.
std::span<const std::uint64_t, 64> field_table();

// Field with exactly 2^m elements; throws std::invalid_argument for m
// outside 1..63.
FieldSpec field_spec(std::uint32_t m);

// Smallest supported field with at least min_elements elements; throws
// std::invalid_argument when min_elements is 0 or exceeds 2^63.
FieldSpec field_for_size(std::uint64_t min_elements);

namespace detail {

using u128 = unsigned __int128;

// Folds the high part of a carry-less product back below degree m.  Every
// fold strictly lowers the degree because the remainder polynomial has
// degree < m, so the loop terminates.
inline std::uint64_t reduce_mod(u128 v, const FieldSpec& f) {
  const std::uint64_t rem = f.poly ^ (std::uint64_t(1) << f.m);
  const u128 low_mask = (u128(1) << f.m) - 1;
  for (;;) {
    const std::uint64_t hi = static_cast<std::uint64_t>(v >> f.m);
    if (hi == 0) break;
    v &= low_mask;
    std::uint64_t bits = rem;
    while (bits) {
      v ^= u128(hi) << std::countr_zero(bits);
      bits &= bits - 1;
    }
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

inline std::uint64_t field_add(std::uint64_t a, std::uint64_t b) { return a ^ b; }

inline std::uint64_t field_mul(std::uint64_t a, std::uint64_t b, const FieldSpec& f) {
  detail::u128 acc = 0;
  while (b) {
    acc ^= detail::u128(a) << std::countr_zero(b);
    b &= b - 1;
  }
  return detail::reduce_mod(acc, f);
}

std::uint64_t field_pow(std::uint64_t a, std::uint64_t e, const FieldSpec& f);

// Multiplicative inverse; throws std::invalid_argument on a == 0.
std::uint64_t field_inv(std::uint64_t a, const FieldSpec& f);

// Evaluates sum_i coeffs[i] * x^i (constant term first) by Horner's rule.
// The repeated multiplication by the fixed point x goes through a 16-entry
// carry-less window table, which is what makes bulk evaluation cheap.
inline std::uint64_t eval_poly(std::span<const std::uint64_t> coeffs, std::uint64_t x,
                               const FieldSpec& f) {
  const std::size_t k = coeffs.size();
  if (k == 0) return 0;
  if (k == 1) return coeffs[0];
  detail::u128 win[16];
  win[0] = 0;
  win[1] = x;
  for (int w = 2; w < 16; ++w) win[w] = (win[w >> 1] << 1) ^ win[w & 1];
  std::uint64_t acc = coeffs[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) {
    detail::u128 prod = 0;
    std::uint64_t a = acc;
    int shift = 0;
    while (a) {
      prod ^= win[a & 15] << shift;
      a >>= 4;
      shift += 4;
    }
    acc = detail::reduce_mod(prod, f) ^ coeffs[i];
  }
  return acc;
}

}  // namespace kwig
