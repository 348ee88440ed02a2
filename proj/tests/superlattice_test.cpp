#include <doctest.h>

#include <cmath>
#include <random>

#include "spdcomb/superlattice.hpp"

using namespace spdcomb;

TEST_CASE("lengths and counts of the flagship geometry") {
  const DesignSpec d{16, 85, 8, 5.16, 63500.0};
  CHECK(stack_length_um(d) == doctest::Approx(82.56).epsilon(1e-15));
  CHECK(gap_length_um(d) == doctest::Approx(660.48).epsilon(1e-15));
  CHECK(design_length_um(d) == doctest::Approx(63240.96).epsilon(1e-15));
  CHECK(element_count(d) == 1461);
}

TEST_CASE("gapless design degenerates to a single stack") {
  const DesignSpec d{16, 0, 1, 5.16, 63500.0};
  CHECK(design_length_um(d) == doctest::Approx(82.56).epsilon(1e-15));
  CHECK(element_count(d) == 16);
  const auto seq = build_sequence(d);
  CHECK(seq.size() == 16);
  CHECK((seq.length_um == 5.16).all());
}

TEST_CASE("default design validates cleanly") {
  CHECK(validate_design(DesignSpec{16, 85, 8, 5.16, 63500.0}).valid());
  CHECK(validate_design(DesignSpec{}).valid());
}

TEST_CASE("validation flags each broken field") {
  CHECK_FALSE(validate_design(DesignSpec{0, 0, 1, 5.16, 63500.0}).valid());
  CHECK_FALSE(validate_design(DesignSpec{1, -1, 1, 5.16, 63500.0}).valid());
  CHECK_FALSE(validate_design(DesignSpec{1, 1, 0, 5.16, 63500.0}).valid());
  CHECK_FALSE(validate_design(DesignSpec{1, 0, 1, 0.0, 63500.0}).valid());
  CHECK_FALSE(validate_design(DesignSpec{1, 0, 1, 0.5, 63500.0}).valid());   // below sanity window
  CHECK_FALSE(validate_design(DesignSpec{1, 0, 1, 60.0, 63500.0}).valid());  // above sanity window
  // budget overrun: flagship geometry against a crystal that is too short
  CHECK_FALSE(validate_design(DesignSpec{16, 85, 8, 5.16, 60000.0}).valid());
  // several problems at once are all reported
  const auto r = validate_design(DesignSpec{0, -1, 0, 0.0, -1.0});
  CHECK(r.violations.size() >= 4);
}

TEST_CASE("require_structural ignores advisory findings") {
  CHECK_THROWS_AS(require_structural(DesignSpec{0, 0, 1, 5.16, 63500.0}), InvalidInput);
  CHECK_THROWS_AS(require_structural(DesignSpec{1, -1, 1, 5.16, 63500.0}), InvalidInput);
  CHECK_THROWS_AS(require_structural(DesignSpec{1, 1, 0, 5.16, 63500.0}), InvalidInput);
  CHECK_THROWS_AS(require_structural(DesignSpec{1, 0, 1, -5.0, 63500.0}), InvalidInput);
  // budget and sanity-window findings stay advisory
  CHECK_NOTHROW(require_structural(DesignSpec{16, 85, 8, 5.16, 60000.0}));
  CHECK_NOTHROW(require_structural(DesignSpec{1, 0, 1, 0.5, 63500.0}));
}

TEST_CASE("worked example: two-domain stacks with one double-length gap") {
  // n_nl=2, n_gap=1, m_gap=1, unit domains:
  // stack [+1,-1], gap of one stack length (sign +1), stack [-1,+1]
  const DesignSpec d{2, 1, 1, 1.0, 1e6};
  const auto seq = build_sequence(d);
  REQUIRE(seq.size() == 5);
  const double len[] = {1, 1, 2, 1, 1};
  const double sgn[] = {1, -1, 1, -1, 1};
  const double z[] = {0, 1, 2, 4, 5};
  for (int i = 0; i < 5; ++i) {
    CHECK(seq.length_um[i] == doctest::Approx(len[i]).epsilon(1e-15));
    CHECK(seq.sign[i] == sgn[i]);
    CHECK(seq.z_front_um[i] == doctest::Approx(z[i]).epsilon(1e-15));
  }
  CHECK(seq.total_length_um == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("sign rules hold across the whole parameter range") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> pick_nl(1, 64), pick_gap(0, 100), pick_m(1, 32);
  for (int trial = 0; trial < 200; ++trial) {
    const DesignSpec d{pick_nl(rng), pick_gap(rng), pick_m(rng), 5.16, 1e9};
    CAPTURE(d.n_nl);
    CAPTURE(d.n_gap);
    CAPTURE(d.m_gap);
    const auto seq = build_sequence(d);
    REQUIRE(seq.size() == element_count(d));

    const double l_stack = stack_length_um(d);
    const double l_gap = gap_length_um(d);
    Index idx = 0;
    double expect_start = 1.0;
    for (int s = 0; s <= d.n_gap; ++s) {
      // domains alternate within the stack, starting on expect_start
      for (int k = 0; k < d.n_nl; ++k, ++idx) {
        REQUIRE(seq.sign[idx] == (k % 2 == 0 ? expect_start : -expect_start));
        REQUIRE(seq.length_um[idx] == d.l_domain_um);
      }
      if (s < d.n_gap) {
        // the gap opposes the domain before it; the next stack opposes the gap
        const double gap_sign = -seq.sign[idx - 1];
        REQUIRE(seq.sign[idx] == gap_sign);
        REQUIRE(seq.length_um[idx] == doctest::Approx(l_gap).epsilon(1e-12));
        expect_start = -gap_sign;
        ++idx;
      }
    }
    REQUIRE(idx == seq.size());

    // front positions accumulate the element lengths
    REQUIRE(seq.z_front_um[0] == 0.0);
    for (Index i = 1; i < seq.size(); ++i)
      REQUIRE(seq.z_front_um[i] ==
              doctest::Approx(seq.z_front_um[i - 1] + seq.length_um[i - 1]).epsilon(1e-12));

    // closed-form total agrees with the accumulated length
    const double summed = seq.length_um.sum();
    REQUIRE(seq.total_length_um == design_length_um(d));
    REQUIRE(std::abs(summed - seq.total_length_um) <= 1e-9 * seq.total_length_um);
    (void)l_stack;
  }
}

TEST_CASE("gap lengths are m_gap stack lengths") {
  const DesignSpec d{3, 2, 4, 2.0, 1e6};
  CHECK(stack_length_um(d) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(gap_length_um(d) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(design_length_um(d) == doctest::Approx(3 * 6.0 + 2 * 24.0).epsilon(1e-15));
  CHECK(element_count(d) == 3 * 3 + 2);
}
