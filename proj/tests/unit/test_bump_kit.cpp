#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "whext/bump_kit.hpp"

using namespace whext;

TEST_SUITE("bump_kit") {
  TEST_CASE("transition values") {
    CHECK(transition(0.0) == 0.0);
    CHECK(transition(-1.0) == 0.0);
    CHECK(transition(1.0) == 1.0);
    CHECK(transition(5.0) == 1.0);
    CHECK(transition(0.5) == 0.5);
    // 1 / (1 + e^{8/3}), 40-digit reference
    CHECK(transition(0.25) == doctest::Approx(0.06496916912866406212754).epsilon(1e-14));
    CHECK(transition(0.55) == doctest::Approx(0.59965802235988901690405).epsilon(1e-14));
  }

  TEST_CASE("transition symmetry and monotonicity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double s = u(rng);
      CHECK(std::abs(transition(s) + transition(1 - s) - 1.0) <= 1e-15);
      const double t = u(rng);
      if (s < t) CHECK(transition(s) <= transition(t));
    }
  }

  TEST_CASE("transition derivative") {
    CHECK(transition_d1(-1.0) == 0.0);
    CHECK(transition_d1(2.0) == 0.0);
    const double h = 1e-5;
    const double fd = (transition(0.5 + h) - transition(0.5 - h)) / (2 * h);
    CHECK(std::abs(transition_d1(0.5) - fd) / std::abs(fd) <= 1e-6);
    CHECK(transition_d1(0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(transition_d1(0.3) == doctest::Approx(1.48330019179960449349).epsilon(1e-13));
  }

  TEST_CASE("bump values") {
    const BumpProfile p(-1, 1, 0.5);
    CHECK(bump_eval(p, 0.0) == 1.0);
    CHECK(bump_eval(p, 1.6) == 0.0);
    CHECK(bump_eval(p, 1.25) == 0.5);
    CHECK(bump_eval(p, -1.25) == 0.5);
    CHECK(bump_eval(p, 1.0) == 1.0);
    CHECK(bump_eval(p, 1.5) == 0.0);
    CHECK(p.on_plateau(-1.0));
    CHECK(p.off_support(-1.5));
    CHECK_FALSE(p.off_support(-1.49));
  }

  TEST_CASE("one-sided bumps") {
    const BumpProfile lo_inf(-kInf, 0.0, 0.5);
    CHECK(lo_inf.lower_infinite());
    CHECK(bump_eval(lo_inf, -1e300) == 1.0);
    CHECK(bump_eval(lo_inf, 0.25) == 0.5);
    CHECK(bump_eval(lo_inf, 0.5) == 0.0);
    const BumpProfile hi_inf(0.0, kInf, 0.5);
    CHECK(bump_eval(hi_inf, 1e300) == 1.0);
    CHECK(bump_eval(hi_inf, -0.25) == 0.5);
  }

  TEST_CASE("bump derivative") {
    const BumpProfile p(-1, 1, 0.5);
    CHECK(bump_d1(p, 0.3) == 0.0);
    CHECK(bump_d1(p, 3.0) == 0.0);
    const double h = 1e-5;
    const double fd = (bump_eval(p, 1.25 + h) - bump_eval(p, 1.25 - h)) / (2 * h);
    CHECK(bump_d1(p, 1.25) == doctest::Approx(-transition_d1(0.5) / 0.5).epsilon(1e-14));
    CHECK(std::abs(bump_d1(p, 1.25) - fd) / std::abs(fd) <= 1e-6);
    CHECK(bump_d1(p, -1.25) == doctest::Approx(4.0).epsilon(1e-14));
  }

  TEST_CASE("bump range property") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const BumpProfile p(-1, 0.5, 0.75);
    for (int i = 0; i < 2000; ++i) {
      const double a = u(rng);
      const double b = bump_eval(p, a);
      CHECK(b >= 0.0);
      CHECK(b <= 1.0);
      if (p.on_plateau(a)) CHECK(b == 1.0);
      if (p.off_support(a)) CHECK(b == 0.0);
    }
  }

  TEST_CASE("profile preconditions") {
    CHECK_THROWS_AS(BumpProfile(0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(BumpProfile(0, 1, -1), std::invalid_argument);
    CHECK_THROWS_AS(BumpProfile(1, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(BumpProfile(NAN, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(BumpProfile(kInf, kInf, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(BumpProfile(0, 1, kInf), std::invalid_argument);
  }
}
