#include <doctest.h>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "kwig/field.hpp"
#include "kwig/rng.hpp"

using namespace kwig;

namespace {

// Reference GF(2)[x] arithmetic, independent of the library's fold-based
// reduction: schoolbook carry-less product followed by long division.
using u128 = unsigned __int128;

int poly_deg(u128 v) {
  int d = -1;
  while (v) {
    ++d;
    v >>= 1;
  }
  return d;
}

u128 clmul_ref(std::uint64_t a, std::uint64_t b) {
  u128 acc = 0;
  for (int i = 0; i < 64; ++i)
    if ((b >> i) & 1) acc ^= u128(a) << i;
  return acc;
}

std::uint64_t reduce_ref(u128 v, std::uint64_t poly, std::uint32_t m) {
  const int dp = static_cast<int>(m);
  for (int d = poly_deg(v); d >= dp; d = poly_deg(v)) v ^= u128(poly) << (d - dp);
  return static_cast<std::uint64_t>(v);
}

std::uint64_t mul_ref(std::uint64_t a, std::uint64_t b, std::uint64_t poly, std::uint32_t m) {
  return reduce_ref(clmul_ref(a, b), poly, m);
}

std::uint64_t poly_mod(u128 v, std::uint64_t mod) {
  const int dm = poly_deg(mod);
  for (int d = poly_deg(v); d >= dm; d = poly_deg(v)) v ^= u128(mod) << (d - dm);
  return static_cast<std::uint64_t>(v);
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// Rabin test: f of degree m is irreducible iff x^(2^m) == x (mod f) and
// gcd(f, x^(2^(m/q)) - x) == 1 for every prime q dividing m.
bool irreducible(std::uint64_t poly, std::uint32_t m) {
  const FieldSpec f{m, poly};
  std::vector<std::uint32_t> prime_divs;
  std::uint32_t r = m;
  for (std::uint32_t q = 2; q * q <= r; ++q) {
    if (r % q == 0) {
      prime_divs.push_back(q);
      while (r % q == 0) r /= q;
    }
  }
  if (r > 1) prime_divs.push_back(r);

  const std::uint64_t x_red = poly_mod(2, poly);  // x itself reduced mod f
  std::uint64_t x_pow = x_red;
  std::uint32_t step = 0;
  for (std::uint32_t q : prime_divs) {
    const std::uint32_t target = m / q;
    while (step < target) {
      x_pow = field_mul(x_pow, x_pow, f);
      ++step;
    }
    if (poly_gcd(poly, x_pow ^ x_red) != 1) return false;
  }
  while (step < m) {
    x_pow = field_mul(x_pow, x_pow, f);
    ++step;
  }
  return x_pow == x_red;
}

}  // namespace

TEST_CASE("reduction table entries are the minimal irreducible polynomials") {
  auto table = field_table();
  CHECK(table[0] == 0);
  for (std::uint32_t m = 1; m <= 63; ++m) {
    const std::uint64_t poly = table[m];
    CAPTURE(m);
    REQUIRE((poly >> m) == 1);  // degree exactly m
    CHECK(irreducible(poly, m));
    // No smaller low-bits choice is irreducible.
    const std::uint64_t top = std::uint64_t(1) << m;
    for (std::uint64_t r = 1; (top | r) < poly; ++r) {
      CAPTURE(r);
      CHECK_FALSE(irreducible(top | r, m));
    }
  }
}

TEST_CASE("field_spec validates the degree range") {
  CHECK(field_spec(1).poly == 0x3);
  CHECK(field_spec(8).order() == 256);
  CHECK(field_spec(63).m == 63);
  CHECK_THROWS_AS(field_spec(0), std::invalid_argument);
  CHECK_THROWS_AS(field_spec(64), std::invalid_argument);
}

TEST_CASE("field_for_size picks the smallest sufficient field") {
  CHECK(field_for_size(1).m == 1);
  CHECK(field_for_size(2).m == 1);
  CHECK(field_for_size(3).m == 2);
  CHECK(field_for_size(4).m == 2);
  CHECK(field_for_size(5).m == 3);
  CHECK(field_for_size(28).m == 5);
  CHECK(field_for_size(std::uint64_t(1) << 20).m == 20);
  CHECK(field_for_size((std::uint64_t(1) << 20) + 1).m == 21);
  CHECK(field_for_size(std::uint64_t(1) << 63).m == 63);
  CHECK_THROWS_AS(field_for_size(0), std::invalid_argument);
  CHECK_THROWS_AS(field_for_size((std::uint64_t(1) << 63) + 1), std::invalid_argument);
}

TEST_CASE("exhaustive axioms in the small fields") {
  for (std::uint32_t m = 1; m <= 7; ++m) {
    const FieldSpec f = field_spec(m);
    const std::uint64_t n = f.order();
    std::vector<std::uint64_t> mul(n * n);
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b) mul[a * n + b] = field_mul(a, b, f);

    CAPTURE(m);
    for (std::uint64_t a = 0; a < n; ++a) {
      REQUIRE(mul[a * n + 1] == a);  // identity
      REQUIRE(mul[a * n] == 0);      // absorbing zero
      for (std::uint64_t b = 0; b < n; ++b) REQUIRE(mul[a * n + b] == mul[b * n + a]);
    }
    // Every nonzero row is a permutation, so inverses exist.
    for (std::uint64_t a = 1; a < n; ++a) {
      std::vector<bool> seen(n, false);
      for (std::uint64_t b = 0; b < n; ++b) {
        REQUIRE_FALSE(seen[mul[a * n + b]]);
        seen[mul[a * n + b]] = true;
      }
    }
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b)
        for (std::uint64_t c = 0; c < n; ++c) {
          REQUIRE(mul[mul[a * n + b] * n + c] == mul[a * n + mul[b * n + c]]);
          REQUIRE(mul[a * n + (b ^ c)] == (mul[a * n + b] ^ mul[a * n + c]));
        }
  }
}

TEST_CASE("multiplication matches the long-division reference") {
  for (std::uint32_t m : {8u, 9u, 13u, 17u, 31u, 32u, 33u, 47u, 48u, 63u}) {
    const FieldSpec f = field_spec(m);
    Rng rng(2024, "field-ref");
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t a = rng.next() & f.element_mask();
      const std::uint64_t b = rng.next() & f.element_mask();
      CAPTURE(m);
      CAPTURE(a);
      CAPTURE(b);
      REQUIRE(field_mul(a, b, f) == mul_ref(a, b, f.poly, m));
    }
    // Boundary elements.
    const std::uint64_t top = f.element_mask();
    CHECK(field_mul(top, top, f) == mul_ref(top, top, f.poly, m));
    CHECK(field_mul(top, 2, f) == mul_ref(top, 2, f.poly, m));
  }
}

TEST_CASE("known products and inverses in the eight-element field") {
  const FieldSpec f = field_spec(3);
  CHECK(f.poly == 0xb);
  CHECK(field_mul(0b010, 0b100, f) == 0b011);
  CHECK(field_mul(6, 6, f) == 2);
  CHECK(field_mul(7, 7, f) == 3);
  CHECK(field_inv(2, f) == 5);
  CHECK(field_inv(1, f) == 1);
  CHECK_THROWS_AS(field_inv(0, f), std::invalid_argument);
}

TEST_CASE("powers and inverses satisfy the group laws") {
  for (std::uint32_t m : {1u, 2u, 5u, 13u, 31u, 63u}) {
    const FieldSpec f = field_spec(m);
    Rng rng(7, "field-pow");
    for (int i = 0; i < 50; ++i) {
      std::uint64_t a = rng.next() & f.element_mask();
      if (a == 0) a = 1;
      CAPTURE(m);
      CAPTURE(a);
      REQUIRE(field_pow(a, f.order() - 1, f) == 1);  // Lagrange
      REQUIRE(field_mul(a, field_inv(a, f), f) == 1);
      REQUIRE(field_pow(a, 0, f) == 1);
      REQUIRE(field_pow(a, 1, f) == a);
      REQUIRE(field_pow(a, 3, f) == field_mul(a, field_mul(a, a, f), f));
    }
    CHECK_THROWS_AS(field_inv(0, f), std::invalid_argument);
  }
}

TEST_CASE("polynomial evaluation agrees with the power-sum definition") {
  CHECK(eval_poly({}, 5, field_spec(3)) == 0);
  const std::uint64_t one_coeff[] = {6};
  CHECK(eval_poly(one_coeff, 5, field_spec(3)) == 6);
  const std::uint64_t line[] = {1, 1};
  CHECK(eval_poly(line, 0b010, field_spec(3)) == 0b011);
  const std::uint64_t quad[] = {3, 5, 6};
  CHECK(eval_poly(quad, 4, field_spec(3)) == 3);

  for (std::uint32_t m : {3u, 11u, 29u, 48u, 63u}) {
    const FieldSpec f = field_spec(m);
    Rng rng(11, "field-eval");
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t k = 1 + rng.next_below(6);
      std::vector<std::uint64_t> coeffs(k);
      for (auto& c : coeffs) c = rng.next() & f.element_mask();
      const std::uint64_t x = rng.next() & f.element_mask();
      std::uint64_t expect = 0;
      for (std::size_t i = 0; i < k; ++i)
        expect ^= field_mul(coeffs[i], field_pow(x, i, f), f);
      CAPTURE(m);
      CAPTURE(x);
      REQUIRE(eval_poly(coeffs, x, f) == expect);
    }
  }
}

TEST_CASE("degree-bounded polynomials interpolate any value tuple exactly once") {
  const FieldSpec f = field_spec(3);
  const std::uint64_t n = f.order();
  // k = 2: over all 64 coefficient pairs, the value pair at two distinct
  // points takes each of the 64 possibilities exactly once.
  for (std::uint64_t x1 = 0; x1 < n; ++x1)
    for (std::uint64_t x2 = x1 + 1; x2 < n; ++x2) {
      std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
      for (std::uint64_t c0 = 0; c0 < n; ++c0)
        for (std::uint64_t c1 = 0; c1 < n; ++c1) {
          const std::uint64_t coeffs[] = {c0, c1};
          seen.emplace(eval_poly(coeffs, x1, f), eval_poly(coeffs, x2, f));
        }
      CAPTURE(x1);
      CAPTURE(x2);
      REQUIRE(seen.size() == n * n);
    }
  // k = 3 on a sample of point triples.
  for (std::uint64_t x1 = 0; x1 < 3; ++x1)
    for (std::uint64_t x2 = x1 + 1; x2 < 6; ++x2)
      for (std::uint64_t x3 = x2 + 1; x3 < n; ++x3) {
        std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> seen;
        for (std::uint64_t c0 = 0; c0 < n; ++c0)
          for (std::uint64_t c1 = 0; c1 < n; ++c1)
            for (std::uint64_t c2 = 0; c2 < n; ++c2) {
              const std::uint64_t coeffs[] = {c0, c1, c2};
              seen.emplace(eval_poly(coeffs, x1, f), eval_poly(coeffs, x2, f),
                           eval_poly(coeffs, x3, f));
            }
        REQUIRE(seen.size() == n * n * n);
      }
}
