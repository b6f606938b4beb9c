#include "whext/scalar_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace whext {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// 10-point Gauss-Legendre on [-1, 1].
constexpr double gl_x[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244, 0.8650633666889845,
                            0.9739065285171717};
constexpr double gl_w[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                            0.0666713443086881};

double target_value(TargetId id, double y) {
  switch (id) {
    case TargetId::PointEval: return y;
    case TargetId::PointwiseSin: return std::sin(y);
    case TargetId::QuadNorm: return y * y;
    default: throw std::invalid_argument("scalar oracle: unsupported target");
  }
}

double clamp_up(double s, double hi, double theta) {
  if (s <= hi - theta) return s;
  if (s >= hi + theta) return hi;
  return std::min(hi, hi - theta + 2 * theta * scalar_ref::complement_integral((s - hi + theta) / (2 * theta)));
}

double clamp_down(double s, double lo, double theta) {
  if (s >= lo + theta) return s;
  if (s <= lo - theta) return lo;
  return std::max(lo, lo + theta - 2 * theta * scalar_ref::complement_integral((lo + theta - s) / (2 * theta)));
}

}  // namespace

namespace scalar_ref {

double transition(double s) {
  if (s <= 0) return 0;
  if (s >= 1) return 1;
  const double g = std::exp(-1 / s), h = std::exp(-1 / (1 - s));
  return g / (g + h);
}

double bump(double lower, double upper, double delta, double a) {
  if (a >= lower && a <= upper) return 1;
  if (a > upper) return a >= upper + delta ? 0 : transition((upper + delta - a) / delta);
  return a <= lower - delta ? 0 : transition((a - lower + delta) / delta);
}

double complement_integral(double v) {
  v = std::clamp(v, 0.0, 1.0);
  const int panels = 32;
  const double w = v / panels;
  double sum = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * w;
    for (int q = 0; q < 5; ++q) {
      sum += gl_w[q] * (1 - transition(mid + 0.5 * w * gl_x[q]));
      sum += gl_w[q] * (1 - transition(mid - 0.5 * w * gl_x[q]));
    }
  }
  return 0.5 * w * sum;
}

double epsilon(const Scenario1D& sc) {
  double eps = inf;
  for (const auto& s : sc.segments) {
    double margin = inf, bound = 0;
    if (sc.geometry == Scenario1D::Geometry::Balls) {
      const double a = 0.5 * (s.hi - s.lo);
      margin = a, bound = a + s.delta;
    } else {
      if (std::isfinite(s.lo)) margin = std::min(margin, s.anchor - s.lo), bound = std::max(bound, std::abs(s.lo - s.anchor - s.delta));
      if (std::isfinite(s.hi)) margin = std::min(margin, s.hi - s.anchor), bound = std::max(bound, std::abs(s.hi - s.anchor + s.delta));
    }
    eps = std::min(eps, std::isfinite(margin) ? sc.safety * margin / bound : 1.0);
  }
  return eps;
}

double weight(const Scenario1D& sc, std::size_t i, double x) {
  const auto& s = sc.segments.at(i);
  if (sc.geometry == Scenario1D::Geometry::Balls) {
    const double a = 0.5 * (s.hi - s.lo);
    const double d2 = (x - s.anchor) * (x - s.anchor);
    return bump(0, a * a, (a + s.delta) * (a + s.delta) - a * a, d2);
  }
  return bump(s.lo, s.hi, s.delta, x);
}

namespace {

// z + H(x - z) for one segment.
double image(const Scenario1D& sc, const Scenario1D::Segment& s, double x, double eps) {
  const double r = x - s.anchor;
  if (sc.geometry == Scenario1D::Geometry::Balls) {
    const double a = 0.5 * (s.hi - s.lo);
    if (sc.clamp) {
      const double in = a - sc.theta;
      const double f = bump(0, in * in, a * a - in * in, r * r);
      return f == 1 ? x : s.anchor + f * r;
    }
    const double q = (r / eps) * (r / eps);
    const double f = bump(0, a * a, (a + s.delta) * (a + s.delta) - a * a, q);
    return f == 1 ? x : s.anchor + f * r;
  }
  if (sc.clamp) {
    if (x > s.hi - sc.theta) return clamp_up(x, s.hi, sc.theta);
    if (x < s.lo + sc.theta) return clamp_down(x, s.lo, sc.theta);
    return x;
  }
  const double f = bump(s.lo - s.anchor, s.hi - s.anchor, s.delta, r / eps);
  return f == 1 ? x : s.anchor + f * r;
}

}  // namespace

double extend(const Scenario1D& sc, double x) {
  const double eps = sc.clamp ? 1.0 : epsilon(sc);
  if (sc.assembly != Assembly::Family) return target_value(sc.target, image(sc, sc.segments.at(0), x, eps));
  double sum = 0;
  for (std::size_t i = 0; i < sc.segments.size(); ++i) {
    const double w = weight(sc, i, x);
    if (w != 0) sum += w * target_value(sc.target, image(sc, sc.segments[i], x, eps));
  }
  return sum;
}

}  // namespace scalar_ref

std::vector<Scenario1D> shipped_1d_scenarios() {
  using G = Scenario1D::Geometry;
  std::vector<Scenario1D> out;
  auto add = [&](std::string name, G g, std::vector<Scenario1D::Segment> segs, Assembly a, bool clamp, double theta,
                 TargetId t, double range) {
    Scenario1D sc;
    sc.name = std::move(name);
    sc.geometry = g;
    sc.segments = std::move(segs);
    sc.assembly = a;
    sc.clamp = clamp;
    sc.theta = theta;
    sc.target = t;
    sc.range = range;
    out.push_back(std::move(sc));
  };
  add("band_literal_point_eval", G::Bands, {{-1, 1, 0, 0.5}}, Assembly::Single, false, 0, TargetId::PointEval, 5);
  add("two_bands_family_sin", G::Bands, {{-3, -2, -2.5, 0.5}, {2, 3, 2.5, 0.5}}, Assembly::Family, false, 0,
      TargetId::PointwiseSin, 6);
  add("seeley_literal_quad", G::Half, {{-inf, 0, -1, 0.5}}, Assembly::Seeley, false, 0, TargetId::QuadNorm, 5);
  add("band_clamp_quad", G::Bands, {{-1, 1, 0, 0.5}}, Assembly::Single, true, 0.2, TargetId::QuadNorm, 5);
  add("semi_infinite_clamp_sin", G::Bands, {{-inf, 1, 0, 0.5}}, Assembly::Single, true, 0.25, TargetId::PointwiseSin,
      5);
  add("seeley_clamp_point_eval", G::Half, {{-inf, 0, -1, 0.5}}, Assembly::Seeley, true, 0.3, TargetId::PointEval, 5);
  add("hilbert_balls_family_quad", G::Balls, {{-4, -2, -3, 0.5}, {1.5, 4.5, 3, 0.5}}, Assembly::Family, false, 0,
      TargetId::QuadNorm, 7);
  add("hilbert_ball_clamp_sin", G::Balls, {{-1, 1, 0, 0.5}}, Assembly::Single, true, 0.2, TargetId::PointwiseSin, 4);
  return out;
}

ExtensionOperator build_operator(const Scenario1D& sc) {
  ModeConfig mode;
  mode.clamp = sc.clamp;
  mode.theta = sc.theta;
  mode.safety = sc.safety;
  auto make_target = [&](const Space& space) {
    switch (sc.target) {
      case TargetId::PointEval: return TargetMap::point_eval(space, 0.0);
      case TargetId::PointwiseSin: return TargetMap::pointwise_sin(space);
      case TargetId::QuadNorm: return TargetMap::quad_norm(space);
      default: throw std::invalid_argument("scenario: unsupported 1-D target");
    }
  };
  if (sc.geometry == Scenario1D::Geometry::Balls) {
    const Space space = Space::hilbert(1);
    std::vector<Ball> balls;
    for (const auto& s : sc.segments) balls.emplace_back(space, std::vector<double>{s.anchor}, 0.5 * (s.hi - s.lo), s.delta);
    auto fam = SegmentFamily::of_balls(std::move(balls));
    return sc.assembly == Assembly::Single ? ExtensionOperator::single(fam, make_target(space), mode)
                                           : ExtensionOperator::family(fam, make_target(space), mode);
  }
  const Space space = Space::interval(1);
  const GridPtr grid = space.grid();
  if (sc.geometry == Scenario1D::Geometry::Half) {
    const auto& s = sc.segments.at(0);
    HalfSpaceSplit half(grid, {true}, {s.anchor}, s.delta);
    return ExtensionOperator::seeley(half, make_target(space), mode);
  }
  std::vector<Band> bands;
  for (const auto& s : sc.segments) {
    std::optional<GridFunction> phi, psi;
    if (std::isfinite(s.lo)) phi = GridFunction::constant(grid, s.lo);
    if (std::isfinite(s.hi)) psi = GridFunction::constant(grid, s.hi);
    bands.emplace_back(phi, psi, GridFunction::constant(grid, s.anchor), s.delta);
  }
  auto fam = SegmentFamily::of_bands(std::move(bands));
  return sc.assembly == Assembly::Single ? ExtensionOperator::single(fam, make_target(space), mode)
                                         : ExtensionOperator::family(fam, make_target(space), mode);
}

OracleResult oracle_1d(const Scenario1D& sc, std::size_t samples, std::uint64_t seed) {
  const ExtensionOperator op = build_operator(sc);
  std::vector<double> xs;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-sc.range, sc.range);
  for (std::size_t s = 0; s < samples; ++s) xs.push_back(unif(rng));
  const double eps = sc.clamp ? 1.0 : scalar_ref::epsilon(sc);
  for (const auto& s : sc.segments) {
    for (double v : {s.lo, s.hi, s.anchor, s.lo - s.delta, s.hi + s.delta, s.lo + sc.theta, s.hi - sc.theta,
                     s.anchor + eps * (s.hi - s.anchor), s.anchor + eps * (s.lo - s.anchor)})
      if (std::isfinite(v)) xs.push_back(v);
  }
  OracleResult res;
  for (double x : xs) {
    const std::vector<double> xv{x};
    const double lib = op.extend(xv).components()[0];
    const double ref = scalar_ref::extend(sc, x);
    const double diff = std::abs(lib - ref);
    if (diff > res.max_output_diff || std::isnan(diff)) res.max_output_diff = diff, res.witness = x;
    if (sc.assembly == Assembly::Family) {
      for (std::size_t i = 0; i < sc.segments.size(); ++i)
        res.max_weight_diff = std::max(res.max_weight_diff, std::abs(op.weight(i, xv) - scalar_ref::weight(sc, i, x)));
    }
    ++res.samples;
  }
  return res;
}

}  // namespace whext
