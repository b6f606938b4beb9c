#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "whext/bump_kit.hpp"
#include "whext/geometry.hpp"

using namespace whext;

namespace {

Band const_band(const GridPtr& g, double phi, double psi, double z, double delta) {
  std::optional<GridFunction> lo, hi;
  if (std::isfinite(phi)) lo = GridFunction::constant(g, phi);
  if (std::isfinite(psi)) hi = GridFunction::constant(g, psi);
  return Band(lo, hi, GridFunction::constant(g, z), delta);
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("separated bands validate") {
    auto g = Grid::uniform(11);
    auto fam = SegmentFamily::of_bands({const_band(g, -2, -1, -1.5, 0.25), const_band(g, 1, 2, 1.5, 0.25)});
    CHECK(validate(fam).ok());
  }

  TEST_CASE("overlapping bands are rejected") {
    auto g = Grid::uniform(11);
    auto fam = SegmentFamily::of_bands({const_band(g, -1, 1, 0, 0.1), const_band(g, 0, 2, 1, 0.1)});
    auto rep = validate(fam);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].i == 0);
    CHECK(rep.violations[0].j == 1);
    CHECK(rep.violations[0].reason == "overlap");
  }

  TEST_CASE("crossing bands report witness t = 1") {
    auto g = Grid::uniform(11);
    auto affine = [&](double a, double b) { return GridFunction::sample(g, [=](double t) { return a * t + b; }); };
    Band b1(affine(1, -1.5), affine(1, -0.5), affine(1, -1.0), 0.1);
    Band b2(affine(-1, 0.5), affine(-1, 1.5), affine(-1, 1.0), 0.1);
    auto rep = validate(SegmentFamily::of_bands({b1, b2}));
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].witness_t == 1.0);
    CHECK(rep.violations[0].psi_i == 0.5);
    CHECK(rep.violations[0].phi_j == -0.5);

    std::ostringstream os;
    write_violations_csv(os, rep);
    CHECK(os.str() == "pair_i,pair_j,witness_t,psi_i,phi_j\n1,2,1,0.5,-0.5\n");
  }

  TEST_CASE("pointwise scan agrees with the validator") {
    // Independent oracle: any grid point with reversed order or overlap.
    auto g = Grid::uniform(21);
    for (double shift : {-3.0, -1.2, -0.4, 0.0, 0.4, 1.2, 3.0}) {
      auto b1 = const_band(g, -1, 0, -0.5, 0.1);
      Band b2(GridFunction::sample(g, [=](double t) { return t + shift; }),
              GridFunction::sample(g, [=](double t) { return t + shift + 0.5; }),
              GridFunction::sample(g, [=](double t) { return t + shift + 0.25; }), 0.1);
      bool below = true, above = true, gap = true;
      for (std::size_t k = 0; k < g->size(); ++k) {
        below = below && b1.psi(k) < b2.phi(k);
        above = above && b2.psi(k) < b1.phi(k);
        gap = gap && (b1.psi(k) + 0.1 < b2.phi(k) - 0.1 || b2.psi(k) + 0.1 < b1.phi(k) - 0.1);
      }
      CHECK(validate(SegmentFamily::of_bands({b1, b2})).ok() == ((below || above) && gap));
    }
  }

  TEST_CASE("touching delta enlargements are rejected") {
    auto g = Grid::uniform(3);
    auto fam = SegmentFamily::of_bands({const_band(g, -2, -1, -1.5, 0.5), const_band(g, 0, 1, 0.5, 0.5)});
    auto rep = validate(fam);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].reason == "delta enlargements intersect");
  }

  TEST_CASE("ball families") {
    auto sp = Space::hilbert(2);
    auto ok = SegmentFamily::of_balls({Ball(sp, {0, 0}, 1, 0.5), Ball(sp, {5, 0}, 1, 0.5)});
    CHECK(validate(ok).ok());
    auto close = SegmentFamily::of_balls({Ball(sp, {0, 0}, 1, 0.5), Ball(sp, {1.5, 0}, 1, 0.5)});
    CHECK_FALSE(validate(close).ok());
    auto tangent = SegmentFamily::of_balls({Ball(sp, {0, 0}, 1, 0.1), Ball(sp, {2, 0}, 1, 0.1)});
    CHECK_FALSE(validate(tangent).ok());
    std::ostringstream os;
    write_violations_csv(os, validate(close));
    CHECK(os.str() == "pair_i,pair_j,witness_t,psi_i,phi_j\n1,2,,1.5,2.5\n");
  }

  TEST_CASE("sup-norm balls") {
    auto sp = Space::compact({0.0, 1.0, 2.0});
    Ball b(sp, {0, 0, 0}, 1, 0.5);
    const std::vector<double> in{0.5, -0.9, 0.1}, out{0.5, 1.0, 0.0};
    CHECK(contains(b, in) == Membership::Inside);
    CHECK(contains(b, out) == Membership::BoundaryOrOutside);
  }

  TEST_CASE("band margin") {
    auto g = Grid::uniform(5);
    CHECK(band_margin(const_band(g, -1, 1, 0, 0.5)) == 1.0);
    CHECK(band_margin(const_band(g, -1, 1, 0.5, 0.5)) == 0.5);
    CHECK(band_margin(const_band(g, -kInf, 0, -1, 0.5)) == 1.0);
  }

  TEST_CASE("membership") {
    auto g = Grid::uniform(5);
    auto b = const_band(g, -1, 1, 0, 0.5);
    const std::vector<double> zero(5, 0.0);
    std::vector<double> edge(5, 0.0);
    edge[2] = 1.0;
    CHECK(contains(b, zero) == Membership::Inside);
    CHECK(contains(b, edge) == Membership::BoundaryOrOutside);
    Ball ball(Space::hilbert(2), {0, 0}, 1, 0.5);
    const std::vector<double> p{0.5, 0.0};
    CHECK(contains(ball, p) == Membership::Inside);
    HalfSpaceSplit half(g, {false, false, true, true, true}, {-1, -1, -1}, 0.5);
    std::vector<double> x{9, 9, -0.1, -2, -0.5};
    CHECK(contains(half, x) == Membership::Inside);
    x[3] = 0.0;
    CHECK(contains(half, x) == Membership::BoundaryOrOutside);
  }

  TEST_CASE("half-space split") {
    auto g = Grid::uniform(4);
    HalfSpaceSplit half(g, {true, false, true, false}, {-1, -2}, 0.5);
    CHECK(half.w_index() == std::vector<std::size_t>{0, 2});
    CHECK_FALSE(half.whole_space());
    Band w = half.w_band();
    CHECK(w.lower_infinite());
    CHECK(w.size() == 2);
    CHECK(w.psi(1) == 0.0);
    CHECK(w.anchor(1) == -2.0);
    CHECK_THROWS_AS(HalfSpaceSplit(g, {false, false, false, false}, {}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(HalfSpaceSplit(g, {true, false, false, false}, {0.5}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(HalfSpaceSplit(g, {true, false}, {-1}, 0.5), std::invalid_argument);
  }

  TEST_CASE("construction preconditions") {
    auto g = Grid::uniform(3);
    CHECK_THROWS_AS(const_band(g, -1, 1, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(const_band(g, -1, 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(Ball(Space::hilbert(1), {0}, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(SegmentFamily::of_bands({}), std::invalid_argument);
    CHECK_THROWS_AS(SegmentFamily::of_bands({const_band(g, -kInf, kInf, 0, 0.5), const_band(g, 1, 2, 1.5, 0.5)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SegmentFamily::of_bands({const_band(g, -1, 1, 0, 0.5), const_band(Grid::uniform(4), 2, 3, 2.5, 0.5)}),
                    std::invalid_argument);
  }
}
