#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kwig/rng.hpp"
#include "kwig/scheme.hpp"

using namespace kwig;

TEST_CASE("probabilities canonicalize to an odd numerator") {
  CHECK(DyadicProb::make(1, 1) == DyadicProb::make(2, 2));
  CHECK(DyadicProb::make(6, 4) == DyadicProb::make(3, 3));
  CHECK(DyadicProb::make(4, 4).num == 1);
  CHECK(DyadicProb::make(4, 4).ell == 2);
  CHECK(DyadicProb::make(7, 5).num == 7);

  CHECK_THROWS_AS(DyadicProb::make(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(DyadicProb::make(8, 3), std::invalid_argument);   // p = 1
  CHECK_THROWS_AS(DyadicProb::make(9, 3), std::invalid_argument);   // p > 1
  CHECK_THROWS_AS(DyadicProb::make(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(DyadicProb::make(1, 63), std::invalid_argument);

  CHECK(DyadicProb::make(1, 1).value() == 0.5L);
  CHECK(DyadicProb::make(3, 3).value() == 0.375L);
}

TEST_CASE("probability products multiply exactly and guard the exponent range") {
  const DyadicProb half = DyadicProb::make(1, 1);
  CHECK(half.times(half) == DyadicProb::make(1, 2));
  CHECK(DyadicProb::make(3, 3).times(DyadicProb::make(5, 4)) == DyadicProb::make(15, 7));
  // 2/4 * 2/4 canonicalizes before and after.
  CHECK(DyadicProb::make(2, 2).times(DyadicProb::make(2, 2)) == DyadicProb::make(1, 2));
  CHECK_THROWS_AS(DyadicProb::make(1, 40).times(DyadicProb::make(1, 40)), std::invalid_argument);
}

TEST_CASE("probability parsing accepts every documented form") {
  bool rounded = true;
  CHECK(parse_prob("1/2^1", &rounded) == DyadicProb::make(1, 1));
  CHECK_FALSE(rounded);
  CHECK(parse_prob("3/2^5") == DyadicProb::make(3, 5));
  CHECK(parse_prob("4/2^3") == DyadicProb::make(1, 1));
  CHECK(parse_prob("5/8") == DyadicProb::make(5, 3));
  CHECK(parse_prob("2^-5") == DyadicProb::make(1, 5));
  CHECK(parse_prob("0.5", &rounded) == DyadicProb::make(1, 1));
  CHECK_FALSE(rounded);
  CHECK(parse_prob("0.375", &rounded) == DyadicProb::make(3, 3));
  CHECK_FALSE(rounded);
  CHECK(parse_prob("81/512") == DyadicProb::make(81, 9));

  // Non-dyadic decimals round to the nearest multiple of 2^-20.
  CHECK(parse_prob("0.15", &rounded) == DyadicProb::make(78643, 19));
  CHECK(rounded);
  CHECK(parse_prob("0.2", &rounded) == DyadicProb::make(209715, 20));
  CHECK(rounded);

  for (const char* bad : {"", "abc", "0", "1", "1/3", "-0.5", "2^-0", "1/2^70", "0.0", "1.0"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_prob(bad), std::invalid_argument);
  }
}

TEST_CASE("scheme field covers both the index range and the denominator") {
  CHECK(scheme_field(3, 1) == field_spec(2));
  CHECK(scheme_field(3, 6) == field_spec(6));
  CHECK(scheme_field(5, 3) == field_spec(3));
  CHECK(scheme_field(28, 1) == field_spec(5));
  CHECK(scheme_field(std::uint64_t(1) << 20, 1) == field_spec(20));
  CHECK(scheme_field(1, 1) == field_spec(1));
  CHECK_THROWS_AS(scheme_field(0, 1), std::invalid_argument);
}

TEST_CASE("orientation maps store only what they must") {
  OrientationMap std_map = OrientationMap::all_standard(1000000);
  CHECK(std_map.uniform_standard());
  CHECK(std_map.size() == 1000000);
  CHECK(std_map.at(999999) == Orientation::standard);
  CHECK(std_map.words().empty());

  OrientationMap forced = OrientationMap::forced(10, ForcedPattern{3, 2});
  CHECK_FALSE(forced.uniform_standard());
  for (std::uint64_t j = 0; j < 10; ++j)
    CHECK(forced.at(j) == (j < 3 ? Orientation::flipped : Orientation::standard));

  // Forcing nothing is the uniform map again.
  CHECK(OrientationMap::forced(10, ForcedPattern{0, 4}).uniform_standard());
  CHECK_THROWS_AS(OrientationMap::forced(3, ForcedPattern{2, 2}), std::invalid_argument);

  OrientationMap bm = OrientationMap::from_bitmap(70, {0x5ull, 0x1ull});
  CHECK(bm.at(0) == Orientation::flipped);
  CHECK(bm.at(1) == Orientation::standard);
  CHECK(bm.at(2) == Orientation::flipped);
  CHECK(bm.at(64) == Orientation::flipped);
  CHECK_THROWS_AS(OrientationMap::from_bitmap(70, {0ull}), std::invalid_argument);
  CHECK_THROWS_AS(OrientationMap::from_bitmap(65, {0ull, 0x4ull}), std::invalid_argument);
}

TEST_CASE("fresh schemes have in-range coefficients and exact thresholds") {
  Rng rng(3, "scheme");
  const DyadicProb p = DyadicProb::make(3, 3);
  VariableScheme s = scheme_new(100, 5, p, OrientationMap::all_standard(100), rng);
  CHECK(s.M == 100);
  CHECK(s.k == 5);
  CHECK(s.field == field_spec(7));  // 100 indices need 2^7, denominator only 2^3
  CHECK(s.seed.size() == 5);
  for (std::uint64_t c : s.seed) CHECK(c < s.field.order());
  CHECK(s.threshold_count() == (3ull << 4));  // p * F = 3/8 * 128
  CHECK_THROWS_AS(s.eval(100), std::out_of_range);

  // The all-zero polynomial evaluates every variable to 1 under the standard
  // orientation and to 0 under the flipped one.
  VariableScheme z = s;
  z.seed.assign(z.seed.size(), 0);
  for (std::uint64_t j = 0; j < 100; ++j) CHECK(z.eval(j));
  z.orientations = OrientationMap::forced(100, ForcedPattern{100, 0});
  for (std::uint64_t j = 0; j < 100; ++j) CHECK_FALSE(z.eval(j));
}

TEST_CASE("joint distributions over up to k variables are exactly product form") {
  // p = 1/2, k = 2, F = 16: every pair pattern in exactly 64 of 256 seeds.
  {
    const DyadicProb p = DyadicProb::make(1, 1);
    const OrientationMap o = OrientationMap::all_standard(10);
    for (std::uint64_t a = 0; a < 10; ++a)
      for (std::uint64_t b = a + 1; b < 10; ++b) {
        const std::uint64_t idx[] = {a, b};
        JointDistribution jd = enumerate_joint(10, 2, p, o, idx);
        REQUIRE(jd.total == 256);
        for (int pat = 0; pat < 4; ++pat) REQUIRE(jd.counts[pat] == 64);
      }
  }
  // p = 1/4, k = 2, F = 4: counts 9/3/3/1 out of 16.
  {
    const DyadicProb p = DyadicProb::make(1, 2);
    const OrientationMap o = OrientationMap::all_standard(3);
    const std::uint64_t idx[] = {0, 2};
    JointDistribution jd = enumerate_joint(3, 2, p, o, idx);
    REQUIRE(jd.total == 16);
    CHECK(jd.counts[0] == 9);
    CHECK(jd.counts[1] == 3);
    CHECK(jd.counts[2] == 3);
    CHECK(jd.counts[3] == 1);
  }
  // Orientations do not change joint counts.
  {
    const DyadicProb p = DyadicProb::make(1, 2);
    const OrientationMap o = OrientationMap::forced(3, ForcedPattern{1, 2});
    const std::uint64_t idx[] = {0, 2};
    JointDistribution jd = enumerate_joint(3, 2, p, o, idx);
    CHECK(jd.counts[0] == 9);
    CHECK(jd.counts[1] == 3);
    CHECK(jd.counts[2] == 3);
    CHECK(jd.counts[3] == 1);
  }
  // Triples at k = 3, p = 1/2, F = 8: every pattern in 64 of 512 seeds.
  {
    const DyadicProb p = DyadicProb::make(1, 1);
    const OrientationMap o = OrientationMap::all_standard(5);
    const std::uint64_t idx[] = {0, 2, 4};
    JointDistribution jd = enumerate_joint(5, 3, p, o, idx);
    REQUIRE(jd.total == 512);
    for (int pat = 0; pat < 8; ++pat) REQUIRE(jd.counts[pat] == 64);
  }
  // Fewer indices than k still works (marginal of one variable).
  {
    const DyadicProb p = DyadicProb::make(1, 1);
    const std::uint64_t idx[] = {7};
    JointDistribution jd = enumerate_joint(10, 2, p, OrientationMap::all_standard(10), idx);
    CHECK(jd.counts[0] == 128);
    CHECK(jd.counts[1] == 128);
  }
}

TEST_CASE("joint enumeration rejects oversized requests") {
  const DyadicProb p = DyadicProb::make(1, 1);
  const std::uint64_t idx3[] = {0, 1, 2};
  CHECK_THROWS_AS(enumerate_joint(5, 2, p, OrientationMap::all_standard(5), idx3),
                  std::invalid_argument);
  const std::uint64_t big[] = {0, 1};
  const std::uint64_t m = std::uint64_t(1) << 14;
  CHECK_THROWS_AS(enumerate_joint(m, 2, p, OrientationMap::all_standard(m), big),
                  std::length_error);
  const std::uint64_t oob[] = {5};
  CHECK_THROWS_AS(enumerate_joint(5, 2, p, OrientationMap::all_standard(5), oob),
                  std::out_of_range);
}

TEST_CASE("forced patterns occur for at least one seed, always including zero") {
  // Three variables at p = 1/2, first forced to 0 and the next two to 1.
  {
    EventCount ec = forced_event_seed_count(3, 1, DyadicProb::make(1, 1), ForcedPattern{1, 2});
    CHECK(ec.total == 4);
    CHECK(ec.satisfying == 2);
  }
  {
    EventCount ec = forced_event_seed_count(3, 2, DyadicProb::make(1, 1), ForcedPattern{1, 2});
    CHECK(ec.total == 16);
    CHECK(ec.satisfying == 2);
  }
  // The zero seed is a witness for every pattern shape.
  for (std::uint32_t k : {1u, 2u, 3u}) {
    for (std::uint64_t e0 = 0; e0 <= 4; ++e0)
      for (std::uint64_t e1 = 0; e0 + e1 <= 4; ++e1) {
        const DyadicProb p = DyadicProb::make(1, 1);
        EventCount ec = forced_event_seed_count(4, k, p, ForcedPattern{e0, e1});
        CAPTURE(k);
        CAPTURE(e0);
        CAPTURE(e1);
        REQUIRE(ec.satisfying >= 1);

        Rng rng(1, "forced");
        VariableScheme s = forced_scheme(4, k, p, ForcedPattern{e0, e1}, rng);
        s.seed.assign(s.seed.size(), 0);
        for (std::uint64_t j = 0; j < e0; ++j) REQUIRE_FALSE(s.eval(j));
        for (std::uint64_t j = e0; j < e0 + e1; ++j) REQUIRE(s.eval(j));
      }
  }
  // Non-half probability: p = 1/4, one variable forced to 1, k = 1, F = 4.
  {
    EventCount ec = forced_event_seed_count(1, 1, DyadicProb::make(1, 2), ForcedPattern{0, 1});
    CHECK(ec.total == 4);
    CHECK(ec.satisfying == 1);  // exactly p * F seeds
  }
}

TEST_CASE("tail bound matches hand-evaluated values") {
  CHECK(tail_bound(100, 4, 0.5L, 0.5L) == doctest::Approx(0.1024).epsilon(1e-12));
  CHECK(tail_bound(100, 2, 0.5L, 1.0L) == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(static_cast<double>(tail_bound(10000, 20, 0.2L, 0.5L)) ==
        doctest::Approx(1.152921504606847e-12).epsilon(1e-12));
}

TEST_CASE("tail bound decreases in M and in delta") {
  long double prev = tail_bound(200, 4, 0.3L, 0.4L);
  for (std::uint64_t m = 400; m <= 3200; m *= 2) {
    const long double cur = tail_bound(m, 4, 0.3L, 0.4L);
    REQUIRE(cur < prev);
    prev = cur;
  }
  prev = tail_bound(1000, 6, 0.5L, 0.1L);
  for (long double d = 0.2L; d < 1.6L; d += 0.1L) {
    const long double cur = tail_bound(1000, 6, 0.5L, d);
    REQUIRE(cur < prev);
    prev = cur;
  }
}

TEST_CASE("tail bound rejects out-of-domain requests") {
  CHECK_THROWS_AS(tail_bound(100, 3, 0.5L, 0.5L), std::invalid_argument);  // odd k
  CHECK_THROWS_AS(tail_bound(100, 0, 0.5L, 0.5L), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound(100, 4, 0.0L, 0.5L), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound(100, 4, 1.0L, 0.5L), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound(100, 4, 0.5L, 0.0L), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound(4, 4, 0.5L, 0.5L), std::invalid_argument);  // M <= k
  // Hypothesis (M-k)/k * mu(1-mu) >= 1 fails.
  CHECK_THROWS_AS(tail_bound(10, 4, 0.5L, 0.5L), std::domain_error);
}

TEST_CASE("sampled tail frequency never exceeds the bound plus sampling noise") {
  const std::uint64_t m = 100;
  const DyadicProb p = DyadicProb::make(1, 1);
  const long double bound = tail_bound(m, 4, 0.5L, 0.5L);
  Rng rng(99, "tail-mc");
  const int trials = 20000;
  int violations = 0;
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.derive(t);
    VariableScheme s = scheme_new(m, 4, p, OrientationMap::all_standard(m), trial_rng);
    std::uint64_t sum = 0;
    for (std::uint64_t j = 0; j < m; ++j) sum += s.eval(j);
    const long double dev = fabsl(static_cast<long double>(sum) - 50.0L);
    if (dev >= 25.0L) ++violations;
  }
  const long double freq = static_cast<long double>(violations) / trials;
  const long double sigma = sqrtl(bound * (1 - bound) / trials);
  CHECK(freq <= bound + 3 * sigma);
}
