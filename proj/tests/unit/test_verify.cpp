#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "whext/verify.hpp"

using namespace whext;

namespace {

Band const_band(const GridPtr& g, double phi, double psi, double z, double delta) {
  std::optional<GridFunction> lo, hi;
  if (std::isfinite(phi)) lo = GridFunction::constant(g, phi);
  if (std::isfinite(psi)) hi = GridFunction::constant(g, psi);
  return Band(lo, hi, GridFunction::constant(g, z), delta);
}

ExtensionOperator single_band(bool clamp, std::size_t n = 11) {
  auto sp = Space::interval(n);
  ModeConfig m;
  m.clamp = clamp;
  m.theta = 0.1;
  return ExtensionOperator::single(SegmentFamily::of_bands({const_band(sp.grid(), -1, 1, 0, 0.5)}),
                                   TargetMap::quad_integral(sp), m);
}

ProbeConfig small_probe() {
  ProbeConfig cfg;
  cfg.samples = 200;
  cfg.paths = 4;
  cfg.path_points = 101;
  return cfg;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("central differences") {
    auto sp = Space::interval(11);
    auto lf = TargetMap::linear_functional(sp, GridFunction::sample(sp.grid(), [](double t) { return 1 + t; }));
    const Evaluator L = [&](std::span<const double> x) { return lf.eval(x); };
    std::vector<double> x(11, 0.3), d(11, 1.0);
    x[2] = -4.0;
    CHECK(std::abs(central_difference(L, x, d, 1, 1e-3).scalar() - lf.deriv1(x, d).scalar()) <= 1e-10);

    auto q = TargetMap::quad_integral(sp);
    const Evaluator Q = [&](std::span<const double> y) { return q.eval(y); };
    const std::vector<double> half(11, 0.5);
    CHECK(std::abs(central_difference(Q, half, d, 1, 1e-4).scalar() - 1.0) <= 1e-8);
    CHECK(std::abs(central_difference(Q, x, d, 2, 1e-3).scalar() - 2.0) <= 1e-6);
    CHECK_THROWS_AS(central_difference(Q, x, d, 3, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(central_difference(Q, x, d, 1, 0.0), std::invalid_argument);
  }

  TEST_CASE("richardson slope") {
    auto sp = Space::interval(5);
    auto s = TargetMap::pointwise_sin(sp);
    const Evaluator S = [&](std::span<const double> x) { return s.eval(x); };
    std::vector<double> x{0.1, 0.7, -1.2, 2.0, 0.4}, d{1, 0.5, -0.3, 0.2, 1};
    auto est = dir_deriv(S, x, d, 1, 1e-2);
    CHECK(est.richardson_slope == doctest::Approx(2.0).epsilon(0.05));
    auto q = TargetMap::quad_norm(sp);
    const Evaluator Q = [&](std::span<const double> y) { return q.eval(y); };
    CHECK(std::isnan(dir_deriv(Q, x, d, 1, 1e-2).richardson_slope));
  }

  TEST_CASE("probe config validation") {
    ProbeConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.steps = {1e-4, 1e-3};
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = ProbeConfig{};
    cfg.q_check = 3;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  }

  TEST_CASE("blid law on every kind and mode") {
    auto g = Grid::uniform(11);
    const Band band = const_band(g, -1, 1, 0.2, 0.5);
    const Band semi(std::nullopt, GridFunction::constant(g, 0), GridFunction::constant(g, -1), 0.5);
    const Ball ball(Space::hilbert(4), {1, 0, 0, 0}, 1, 0.5);
    const Ball sup(Space::compact({0, 1, 2}), {0, 0, 0}, 1, 0.5);
    const HalfSpaceSplit half(g, std::vector<bool>(11, true), std::vector<double>(11, -1.0), 0.5);
    for (bool clamp : {false, true}) {
      std::vector<BlidMap> maps{BlidMap::for_band(band), BlidMap::for_band(semi), BlidMap::for_ball(ball),
                                BlidMap::for_ball(sup), BlidMap::for_half(half)};
      for (auto& h : maps) {
        h = clamp ? h.with_mode(Clamp{0.25}) : h.with_mode(Literal{epsilon_for(h)});
        auto rep = blid_law_check(h, 500, 2000, 17);
        CAPTURE(rep.id);
        CAPTURE(rep.detail);
        CHECK(rep.pass);
        CHECK(rep.worst_error <= 1e-12);
      }
    }
  }

  TEST_CASE("checks on a single clamp band") {
    auto op = single_band(true);
    auto cfg = small_probe();
    CHECK(restriction_check(op, cfg).pass);
    CHECK(containment_check(op, 1000, 1).pass);
    auto scan = bounded_scan(op, cfg);
    CAPTURE(scan.detail);
    CHECK(scan.pass);
    for (const auto& r : seam_probe(op, cfg)) {
      CAPTURE(r.id);
      CAPTURE(r.detail);
      CHECK((r.pass || r.severity == Severity::Informational));
    }
  }

  TEST_CASE("literal gap is informational") {
    auto op = single_band(false);
    auto cfg = small_probe();
    auto gap = restriction_gap_probe(op, cfg);
    CHECK(gap.severity == Severity::Informational);
    CHECK(gap.worst_error > 0.0);
    CHECK(restriction_check(op, cfg).pass);
  }

  TEST_CASE("oversized epsilon breaks containment") {
    auto sp = Space::interval(5);
    ModeConfig m;
    m.epsilon = 2.0;
    auto op = ExtensionOperator::single(SegmentFamily::of_bands({const_band(sp.grid(), -1, 1, 0, 0.5)}),
                                        TargetMap::quad_norm(sp), m);
    CHECK_FALSE(containment_check(op, 1000, 3).pass);
  }

  TEST_CASE("weight partition on a band family") {
    auto sp = Space::interval(5);
    auto fam = SegmentFamily::of_bands({const_band(sp.grid(), -3, -2, -2.5, 0.5), const_band(sp.grid(), 2, 3, 2.5, 0.5)});
    auto op = ExtensionOperator::family(fam, TargetMap::quad_norm(sp), ModeConfig{});
    CHECK(weight_partition_check(op, 2000, 5).pass);
  }

  TEST_CASE("derivative oracle on the catalog") {
    auto sp = Space::interval(21);
    auto w = GridFunction::sample(sp.grid(), [](double t) { return std::cos(t); });
    for (const auto& f : {TargetMap::quad_integral(sp), TargetMap::point_eval(sp, 0.5), TargetMap::pointwise_sin(sp),
                          TargetMap::linear_functional(sp, w), TargetMap::quad_norm(Space::hilbert(6)),
                          TargetMap::pointwise_sin(Space::hilbert(6))}) {
      auto rep = derivative_oracle_check(f, 100, 42);
      CAPTURE(rep.detail);
      CHECK(rep.pass);
      CHECK(rep.worst_error <= 1e-6);
    }
  }

  TEST_CASE("run_checks is deterministic") {
    auto op = single_band(true, 5);
    auto cfg = small_probe();
    std::ostringstream a, b;
    write_reports_csv(a, run_checks(op, cfg));
    write_reports_csv(b, run_checks(op, cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("check,pass,worst_error,seed,witness\n", 0) == 0);
    CHECK(a.str().find("info:restriction_gap") != std::string::npos);
  }

  TEST_CASE("report helpers") {
    CheckReport ok{"a", true, Severity::Required, 0.0, 1, {}, ""};
    CheckReport info{"b", false, Severity::Informational, 1.0, 1, {0.5}, "x"};
    CheckReport bad{"c", false, Severity::Required, 2.0, 1, {}, ""};
    CHECK(required_checks_pass({ok, info}));
    CHECK_FALSE(required_checks_pass({ok, bad}));
    auto text = summary_text({ok, info, bad});
    CHECK(text.find("3 checks, 1 required failures") == 0);
    CHECK(text.find("FAIL b [info]") != std::string::npos);
    std::ostringstream os;
    write_reports_csv(os, {info});
    CHECK(os.str() == "check,pass,worst_error,seed,witness\ninfo:b,0,1,1,0.5\n");
  }

  TEST_CASE("geometry helpers") {
    auto op = single_band(false, 5);
    CHECK(far_field_exhaustible(op));
    CHECK(support_radius(op) >= 1.5);
    CHECK(closure_sup_bound(op) == doctest::Approx(1.0));
  }
}
