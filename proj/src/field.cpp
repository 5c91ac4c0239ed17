#include "kwig/field.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace kwig {

namespace {

constexpr std::array<std::uint64_t, 64> k_field_table = {
    0x0,  // unused
    0x3,
    0x7,
    0xb,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11b,
    0x203,
    0x409,
    0x805,
    0x1009,
    0x201b,
    0x4021,
    0x8003,
    0x1002b,
    0x20009,
    0x40009,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x100001b,
    0x2000009,
    0x400001b,
    0x8000027,
    0x10000003,
    0x20000005,
    0x40000003,
    0x80000009,
    0x10000008d,
    0x20000004b,
    0x40000001b,
    0x800000005,
    0x1000000035,
    0x200000003f,
    0x4000000063,
    0x8000000011,
    0x10000000039,
    0x20000000009,
    0x40000000027,
    0x80000000059,
    0x100000000021,
    0x20000000001b,
    0x400000000003,
    0x800000000021,
    0x100000000002d,
    0x2000000000071,
    0x400000000001d,
    0x800000000004b,
    0x10000000000009,
    0x20000000000047,
    0x4000000000007d,
    0x80000000000047,
    0x100000000000095,
    0x200000000000011,
    0x400000000000063,
    0x80000000000007b,
    0x1000000000000003,
    0x2000000000000027,
    0x4000000000000069,
    0x8000000000000003,
};

}  // namespace

std::span<const std::uint64_t, 64> field_table() { return k_field_table; }

FieldSpec field_spec(std::uint32_t m) {
  if (m < 1 || m > 63) {
    throw std::invalid_argument("field degree out of range (need 1 <= m <= 63, got " +
                                std::to_string(m) + ")");
  }
  return FieldSpec{m, k_field_table[m]};
}

FieldSpec field_for_size(std::uint64_t min_elements) {
  if (min_elements == 0) throw std::invalid_argument("field size request must be positive");
  std::uint32_t m = (min_elements <= 2)
                        ? 1
                        : static_cast<std::uint32_t>(std::bit_width(min_elements - 1));
  if (m > 63) throw std::invalid_argument("field size request exceeds 2^63 elements");
  return field_spec(m);
}

std::uint64_t field_pow(std::uint64_t a, std::uint64_t e, const FieldSpec& f) {
  std::uint64_t acc = 1;
  while (e) {
    if (e & 1) acc = field_mul(acc, a, f);
    a = field_mul(a, a, f);
    e >>= 1;
  }
  return acc;
}

std::uint64_t field_inv(std::uint64_t a, const FieldSpec& f) {
  if (a == 0) throw std::invalid_argument("zero has no multiplicative inverse");
  // a^(2^m - 2) = a^-1 in GF(2^m).
  return field_pow(a, f.order() - 2, f);
}

}  // namespace kwig
