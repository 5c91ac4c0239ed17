#pragma once

#include <cstdint>
#include <string_view>

// Deterministic counter-based random streams.  Every random draw in the
// project is a pure function of (master seed, context label, derivation
// indices, counter), so results never depend on thread count, scheduling, or
// call interleaving.
//
// The mixing permutation is part of the seed-file contract (planted graphs
// re-derive per-block seeds from a stored master seed), so it is fixed here:
//
//   mix64(z): z ^= z>>30; z *= 0xBF58476D1CE4E5B9;
//             z ^= z>>27; z *= 0x94D049BB133111EB; z ^= z>>31
//   key:      lo = mix64(master ^ 0x9E3779B97F4A7C15)
//             hi = mix64(lo ^ fnv1a64(label))
//   derive(i): lo' = mix64(lo + (i+1) * 0xD1B54A32D192ED03)
//              hi' = mix64(hi ^ lo')
//   next():   ++ctr; return mix64(hi ^ mix64(lo + ctr * 0x9E3779B97F4A7C15))
//
// The 128-bit key (hi, lo) plus the counter feed two chained mix64 rounds,
// giving a fixed permutation of the whole state for each output word.

namespace kwig {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class Rng {
 public:
  Rng(std::uint64_t master, std::string_view label)
      : lo_(mix64(master ^ 0x9E3779B97F4A7C15ull)), hi_(mix64(lo_ ^ fnv1a64(label))) {}

  // Independent child stream; children with distinct indices never share
  // output with each other or with the parent.
  Rng derive(std::uint64_t index) const {
    Rng child(*this);
    child.lo_ = mix64(lo_ + (index + 1) * 0xD1B54A32D192ED03ull);
    child.hi_ = mix64(hi_ ^ child.lo_);
    child.ctr_ = 0;
    return child;
  }

  std::uint64_t next() {
    ++ctr_;
    return mix64(hi_ ^ mix64(lo_ + ctr_ * 0x9E3779B97F4A7C15ull));
  }

  // Uniform over [0, 2^bits); needs 1 <= bits <= 64.
  std::uint64_t next_bits(unsigned bits) {
    std::uint64_t r = next();
    return bits >= 64 ? r : r >> (64 - bits);
  }

  // Uniform over [0, n) by rejection; needs n >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= min) return r % n;
    }
  }

  double next_unit() {  // uniform in [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::uint64_t ctr_ = 0;
};

}  // namespace kwig
