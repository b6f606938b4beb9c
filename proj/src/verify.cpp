#include "whext/verify.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace whext {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool radial(const BlidMap& h) { return h.kind() == BlidKind::Ball || h.kind() == BlidKind::Sup; }

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// Scale used for the unbounded side of semi-infinite bands.
double reach(const BlidMap& h) { return 10.0 * std::max(1.0, h.bound().finite_side); }

// Regime boundaries of H_i in r (per coordinate for band / half, in the norm
// variable for ball / sup), together with the weight boundaries.
std::vector<double> thresholds(const BlidMap& h, std::size_t k, bool with_weight) {
  std::vector<double> t;
  auto add = [&](double v) {
    if (std::isfinite(v)) t.push_back(v);
  };
  const double d = h.delta();
  if (radial(h)) {
    const double a = h.radius();
    if (h.is_clamp()) {
      add(a - h.theta()), add(a);
    } else {
      add(h.epsilon() * a), add(h.epsilon() * (a + d));
    }
    if (with_weight) add(a), add(a + d);
    return t;
  }
  const double lo = h.lower(k), hi = h.upper(k);
  if (h.is_clamp()) {
    const double th = h.theta();
    add(lo - th), add(lo + th), add(hi - th), add(hi + th);
  } else {
    const double e = h.epsilon();
    add(e * (lo - d)), add(e * lo), add(e * hi), add(e * (hi + d));
  }
  if (with_weight) add(lo - d), add(lo), add(hi), add(hi + d);
  return t;
}

std::vector<double> axpy_copy(std::span<const double> x, double s, std::span<const double> d) {
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += s * d[k];
  return y;
}

CheckReport make_report(std::string id, std::uint64_t seed, Severity severity = Severity::Required) {
  CheckReport r;
  r.id = std::move(id);
  r.seed = seed;
  r.severity = severity;
  return r;
}

// Keeps the worst error and its witness.
struct Worst {
  double error = 0.0;
  std::vector<double> witness;
  void offer(double e, std::span<const double> x) {
    if (e > error || (std::isnan(e) && !std::isnan(error))) {
      error = e;
      witness.assign(x.begin(), x.end());
    }
  }
};

bool band_family(const ExtensionOperator& op) {
  return op.assembly() == Assembly::Family && op.segments() &&
         op.segments()->kind() == SegmentFamily::Kind::Band;
}

Evaluator extender(const ExtensionOperator& op) {
  return [&op](std::span<const double> x) { return op.extend(x); };
}

// Per-coordinate sign of the side on which every segment is bounded
// (+1 / -1), 0 when both sides are, NaN when neither is.
double far_sign(const ExtensionOperator& op) {
  if (op.half_space()) return 1.0;
  bool lower = false, upper = false;
  for (std::size_t i = 0; i < op.segment_count(); ++i) {
    const BlidBound b = op.blid(i).bound();
    lower = lower || b.lower_unbounded;
    upper = upper || b.upper_unbounded;
  }
  if (lower && upper) return kNaN;
  if (lower) return 1.0;
  if (upper) return -1.0;
  return 0.0;
}

}  // namespace

void validate(const ProbeConfig& cfg) {
  if (cfg.q_check < 1 || cfg.q_check > 2) throw std::invalid_argument("probe: q_check must be 1 or 2");
  if (cfg.steps.empty()) throw std::invalid_argument("probe: step ladder is empty");
  for (double h : cfg.steps)
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("probe: steps must be finite and > 0");
  for (std::size_t k = 1; k < cfg.steps.size(); ++k)
    if (!(cfg.steps[k] < cfg.steps[k - 1])) throw std::invalid_argument("probe: steps must be decreasing");
  if (!(cfg.deriv_step > 0.0) || !(cfg.deriv2_step > 0.0)) throw std::invalid_argument("probe: steps must be > 0");
  if (cfg.samples == 0) throw std::invalid_argument("probe: samples must be > 0");
  if (cfg.path_points < 3) throw std::invalid_argument("probe: path_points must be >= 3");
}

TargetValue central_difference(const Evaluator& f, std::span<const double> x, std::span<const double> d, int order,
                               double h) {
  if (x.size() != d.size()) throw std::invalid_argument("central_difference: shape mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("central_difference: h must be > 0");
  const auto fp = f(axpy_copy(x, h, d));
  const auto fm = f(axpy_copy(x, -h, d));
  if (order == 1) return fp.plus(-1.0, fm).scaled(0.5 / h);
  if (order == 2) return fp.plus(-2.0, f(x)).plus(1.0, fm).scaled(1.0 / (h * h));
  throw std::invalid_argument("central_difference: order must be 1 or 2");
}

DerivEstimate dir_deriv(const Evaluator& f, std::span<const double> x, std::span<const double> d, int order,
                        double h) {
  const auto d0 = central_difference(f, x, d, order, h);
  const auto d1 = central_difference(f, x, d, order, h / 2);
  const auto d2 = central_difference(f, x, d, order, h / 4);
  const double e1 = distance(d0, d1), e2 = distance(d1, d2);
  const double scale = 1.0 + f(x).norm();
  const double noise = 1e3 * DBL_EPSILON * scale / std::pow(h / 4, order);
  const double slope = (e2 > noise && e1 > noise) ? std::log2(e1 / e2) : kNaN;
  return {order, d0, h, slope};
}

// ---------------------------------------------------------------- Sampler

Sampler::Sampler(const ExtensionOperator& op, std::uint64_t seed) : op_(op), rng_(seed) {}

double Sampler::uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

std::vector<double> Sampler::direction() {
  const std::size_t n = op_.space().dim();
  std::vector<double> d(n, 0.0);
  const bool hilbert = op_.space().kind() == SpaceKind::Hilbert;
  std::normal_distribution<double> gauss;
  auto active = [&](std::size_t k) { return !op_.half_space() || op_.half_space()->mask()[k]; };
  double norm = 0.0;
  while (norm == 0.0) {
    for (std::size_t k = 0; k < n; ++k) d[k] = active(k) ? (hilbert ? gauss(rng_) : uniform(-1.0, 1.0)) : 0.0;
    norm = op_.space().norm(d);
  }
  for (double& v : d) v /= norm;
  return d;
}

std::vector<double> Sampler::identity_r(const BlidMap& h) {
  std::vector<double> r(h.dim());
  if (radial(h)) {
    const double rho = h.is_clamp() ? h.radius() - h.theta() : h.epsilon() * h.radius();
    if (h.kind() == BlidKind::Ball) {
      std::normal_distribution<double> gauss;
      double norm = 0.0;
      while (norm == 0.0) {
        for (double& v : r) v = gauss(rng_);
        norm = h_norm(r);
      }
      const double s = rho * std::pow(uniform(0.0, 1.0), 1.0 / static_cast<double>(r.size())) / norm;
      for (double& v : r) v *= s;
    } else {
      for (double& v : r) v = uniform(-rho, rho);
    }
    return r;
  }
  const double L = reach(h);
  for (std::size_t k = 0; k < r.size(); ++k) {
    double a = h.lower(k), b = h.upper(k);
    if (h.is_clamp()) {
      a += h.theta(), b -= h.theta();
    } else {
      a *= h.epsilon(), b *= h.epsilon();
    }
    if (!std::isfinite(a) && !std::isfinite(b)) a = -L, b = L;
    else if (!std::isfinite(a)) a = b - L;
    else if (!std::isfinite(b)) b = a + L;
    r[k] = uniform(a, b);
  }
  return r;
}

std::vector<double> Sampler::wide_r(const BlidMap& h, double extent) {
  std::vector<double> r(h.dim());
  const bool hilbert = h.kind() == BlidKind::Ball;
  if (uniform(0.0, 1.0) < 0.5) {
    std::normal_distribution<double> gauss;
    double norm = 0.0;
    while (norm == 0.0) {
      for (double& v : r) v = hilbert ? gauss(rng_) : uniform(-1.0, 1.0);
      norm = hilbert ? h_norm(r) : sup_norm(r);
    }
    const double s = uniform(0.0, extent) / norm;
    for (double& v : r) v *= s;
  } else {
    const double e = hilbert ? extent / std::sqrt(static_cast<double>(r.size())) : extent;
    for (double& v : r) v = uniform(-e, e);
  }
  return r;
}

std::vector<double> Sampler::core(std::size_t i) {
  const BlidMap& h = op_.blid(i);
  std::vector<double> x(op_.space().dim());
  if (op_.half_space())
    for (double& v : x) v = uniform(-2.0, 2.0);
  auto r = identity_r(h);
  // Keep the sample inside the segment as well (epsilon > 1 overrides).
  if (radial(h)) {
    const double rho = h.kind() == BlidKind::Ball ? h_norm(r) : sup_norm(r);
    if (rho >= h.radius())
      for (double& v : r) v *= 0.999 * h.radius() / rho;
  } else {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] >= h.upper(k) || r[k] <= h.lower(k)) r[k] = uniform(std::max(h.lower(k), -reach(h)),
                                                                  std::min(h.upper(k), reach(h)));
    }
  }
  for (std::size_t k = 0; k < r.size(); ++k) x[h.index()[k]] = h.anchor()[k] + r[k];
  return x;
}

std::vector<double> Sampler::segment(std::size_t i) {
  const BlidMap& h = op_.blid(i);
  std::vector<double> x(op_.space().dim());
  if (op_.half_space())
    for (double& v : x) v = uniform(-2.0, 2.0);
  std::vector<double> r(h.dim());
  if (radial(h)) {
    std::normal_distribution<double> gauss;
    const bool hilbert = h.kind() == BlidKind::Ball;
    double norm = 0.0;
    while (norm == 0.0) {
      for (double& v : r) v = hilbert ? gauss(rng_) : uniform(-1.0, 1.0);
      norm = hilbert ? h_norm(r) : sup_norm(r);
    }
    const double s = h.radius() * uniform(0.0, 1.0) / norm;
    for (double& v : r) v *= s;
  } else {
    const double L = reach(h);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double a = std::isfinite(h.lower(k)) ? h.lower(k) : std::min(h.upper(k), 0.0) - L;
      const double b = std::isfinite(h.upper(k)) ? h.upper(k) : std::max(h.lower(k), 0.0) + L;
      r[k] = uniform(a, b);
      if (r[k] == a) r[k] = 0.5 * (a + b);
    }
  }
  for (std::size_t k = 0; k < r.size(); ++k) x[h.index()[k]] = h.anchor()[k] + r[k];
  return x;
}

std::vector<double> Sampler::hull() {
  const std::size_t n = op_.space().dim();
  std::vector<double> x(n);
  const std::size_t i = std::uniform_int_distribution<std::size_t>(0, op_.segment_count() - 1)(rng_);
  const BlidMap& h = op_.blid(i);
  if (radial(h)) {
    auto r = wide_r(h, h.radius() + h.delta() + 1.0);
    for (std::size_t k = 0; k < n; ++k) x[k] = h.anchor()[k] + r[k];
    return x;
  }
  for (double& v : x) v = uniform(-2.0, 2.0);
  // Box over all band-like segments, per coordinate.
  for (std::size_t k = 0; k < h.dim(); ++k) {
    double a = kInf, b = -kInf;
    for (std::size_t j = 0; j < op_.segment_count(); ++j) {
      const BlidMap& g = op_.blid(j);
      for (double t : thresholds(g, k, true)) a = std::min(a, g.anchor()[k] + t), b = std::max(b, g.anchor()[k] + t);
      a = std::min(a, g.anchor()[k] - reach(g) * (std::isfinite(g.lower(k)) ? 0.0 : 1.0));
      b = std::max(b, g.anchor()[k] + reach(g) * (std::isfinite(g.upper(k)) ? 0.0 : 1.0));
    }
    if (!std::isfinite(a) || !std::isfinite(b)) a = -1.0, b = 1.0;
    x[h.index()[k]] = uniform(a - 1.0, b + 1.0);
  }
  return x;
}

std::vector<double> Sampler::shell(double radius) {
  const std::size_t n = op_.space().dim();
  std::vector<double> x(n);
  if (op_.space().kind() == SpaceKind::Hilbert) {
    auto d = direction();
    const double s = radius * uniform(0.5, 1.0);
    for (std::size_t k = 0; k < n; ++k) x[k] = s * d[k];
    return x;
  }
  const double sign = far_sign(op_);
  if (op_.half_space()) {
    // U held at a fixed point so far-field values are comparable across radii.
    std::mt19937_64 fixed(0x5eedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : x) v = u(fixed);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (op_.half_space() && !op_.half_space()->mask()[k]) continue;
    double s = sign;
    if (!(s == 1.0 || s == -1.0)) s = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    x[k] = s * radius * uniform(0.5, 1.0);
  }
  return x;
}

// ---------------------------------------------------------------- geometry

double support_radius(const ExtensionOperator& op) {
  double R = 0.0;
  for (std::size_t i = 0; i < op.segment_count(); ++i) {
    const BlidMap& h = op.blid(i);
    if (radial(h)) {
      double t = 0.0;
      for (double v : thresholds(h, 0, true)) t = std::max(t, v);
      R = std::max(R, op.space().norm(h.anchor()) + t);
      continue;
    }
    for (std::size_t k = 0; k < h.dim(); ++k) {
      R = std::max(R, std::abs(h.anchor()[k]));
      for (double t : thresholds(h, k, true)) R = std::max(R, std::abs(h.anchor()[k] + t));
    }
  }
  return R;
}

bool far_field_exhaustible(const ExtensionOperator& op) { return !std::isnan(far_sign(op)); }

namespace {

double segment_sup(const ExtensionOperator& op, std::size_t i) {
  std::vector<double> lo, hi;
  op.segment_box(i, lo, hi);
  return op.target().sup_over_box(lo, hi);
}

}  // namespace

double closure_sup_bound(const ExtensionOperator& op) {
  double b = 0.0;
  for (std::size_t i = 0; i < op.segment_count(); ++i) b = std::max(b, segment_sup(op, i));
  return b;
}

// ---------------------------------------------------------------- checks

CheckReport blid_law_check(const BlidMap& h, std::size_t identity_samples, std::size_t bound_samples,
                           std::uint64_t seed) {
  std::string id = std::string("blid_law:") + to_string(h.kind()) + (h.is_clamp() ? ":clamp" : ":literal");
  auto rep = make_report(id, seed);
  // The sampler only needs the geometry through the blid itself.
  std::mt19937_64 rng(seed);
  auto unif = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };

  Worst ident;
  const double L = reach(h);
  for (std::size_t s = 0; s < identity_samples; ++s) {
    std::vector<double> r(h.dim());
    if (radial(h)) {
      const double rho = h.is_clamp() ? h.radius() - h.theta() : h.epsilon() * h.radius();
      for (double& v : r) v = unif(-1.0, 1.0);
      const double n = h.kind() == BlidKind::Ball ? h_norm(r) : sup_norm(r);
      const double scale = n > 0.0 ? rho * unif(0.0, 1.0) / n : 0.0;
      for (double& v : r) v *= scale;
    } else {
      for (std::size_t k = 0; k < r.size(); ++k) {
        double a = h.lower(k), b = h.upper(k);
        if (h.is_clamp()) a += h.theta(), b -= h.theta();
        else a *= h.epsilon(), b *= h.epsilon();
        if (!std::isfinite(a) && !std::isfinite(b)) a = -L, b = L;
        else if (!std::isfinite(a)) a = b - L;
        else if (!std::isfinite(b)) b = a + L;
        r[k] = unif(a, b);
      }
    }
    const auto y = h.apply(r);
    double e = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) e = std::max(e, std::abs(y[k] - r[k]));
    ident.offer(e, r);
  }

  Worst excess;
  const BlidBound ab = h.applied_bound();
  const double extent = 10.0 * (ab.finite_side > 0.0 ? ab.finite_side : 1.0);
  const bool hilbert = h.kind() == BlidKind::Ball;
  for (std::size_t s = 0; s < bound_samples; ++s) {
    std::vector<double> r(h.dim());
    if (s % 2 == 0) {
      for (double& v : r) v = unif(-1.0, 1.0);
      const double n = hilbert ? h_norm(r) : sup_norm(r);
      const double scale = n > 0.0 ? unif(0.0, extent) / n : 0.0;
      for (double& v : r) v *= scale;
    } else {
      const double e = hilbert ? extent / std::sqrt(static_cast<double>(r.size())) : extent;
      for (double& v : r) v = unif(-e, e);
    }
    const auto y = h.apply(r);
    excess.offer(h.extent(y) - ab.finite_side, r);
  }

  const double tol = 1e-12;
  rep.pass = ident.error <= tol && excess.error <= tol;
  rep.worst_error = std::max(ident.error, std::max(0.0, excess.error));
  rep.witness = ident.error > tol || excess.error <= 0.0 ? ident.witness : excess.witness;
  rep.detail = fmt("identity error %.3g, bound excess %.3g", ident.error, std::max(0.0, excess.error)) +
               fmt(" over bound %.6g", ab.finite_side);
  return rep;
}

CheckReport containment_check(const ExtensionOperator& op, std::size_t samples, std::uint64_t seed) {
  auto rep = make_report("containment", seed);
  Sampler sampler(op, seed);
  std::size_t bad = 0, total = 0;
  Worst worst;
  for (std::size_t i = 0; i < op.segment_count(); ++i) {
    const BlidMap& h = op.blid(i);
    const double b = h.bound().finite_side;
    const double extent = 10.0 * (b > 0.0 ? b : 1.0);
    for (std::size_t s = 0; s < samples; ++s, ++total) {
      std::vector<double> x(op.space().dim());
      if (op.half_space())
        for (double& v : x) v = sampler.uniform(-2.0, 2.0);
      const auto r = sampler.wide_r(h, extent);
      for (std::size_t k = 0; k < r.size(); ++k) x[h.index()[k]] = h.anchor()[k] + r[k];
      const auto y = h.apply_at(x);
      if (h.contained(y)) continue;
      ++bad;
      // How far the image sits past the segment boundary.
      double exc = 0.0;
      if (radial(h)) {
        std::vector<double> d(y.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = y[k] - h.anchor()[k];
        exc = op.space().norm(d) - h.radius();
      } else {
        for (std::size_t k = 0; k < h.dim(); ++k) {
          const double v = y[h.index()[k]];
          exc = std::max(exc, std::max(v - (h.anchor()[k] + h.upper(k)), (h.anchor()[k] + h.lower(k)) - v));
        }
      }
      worst.offer(std::max(exc, DBL_MIN), x);
    }
  }
  rep.pass = bad == 0;
  rep.worst_error = worst.error;
  rep.witness = worst.witness;
  rep.detail = std::to_string(bad) + " of " + std::to_string(total) + " blid images outside the segment";
  return rep;
}

CheckReport restriction_check(const ExtensionOperator& op, const ProbeConfig& cfg) {
  auto rep = make_report("restriction", cfg.seed);
  Sampler sampler(op, cfg.seed);
  Worst worst;
  try {
    for (std::size_t i = 0; i < op.segment_count(); ++i) {
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        const auto x = sampler.core(i);
        worst.offer(distance(op.extend(x), op.target().eval(x)), x);
      }
    }
  } catch (const ContainmentError& e) {
    rep.pass = false;
    rep.worst_error = kInf;
    rep.detail = e.what();
    return rep;
  }
  rep.pass = worst.error <= cfg.restriction_tol;
  rep.worst_error = worst.error;
  rep.witness = worst.witness;
  rep.detail = fmt("max |F - f| on the identity cores %.3g (tol %.1g)", worst.error, cfg.restriction_tol);
  return rep;
}

CheckReport restriction_gap_probe(const ExtensionOperator& op, const ProbeConfig& cfg) {
  auto rep = make_report("restriction_gap", cfg.seed, Severity::Informational);
  Sampler sampler(op, cfg.seed + 1);
  Worst worst;
  std::size_t outside = 0, total = 0;
  try {
    for (std::size_t i = 0; i < op.segment_count(); ++i) {
      const BlidMap& h = op.blid(i);
      for (std::size_t s = 0; s < cfg.samples; ++s, ++total) {
        const auto x = sampler.segment(i);
        std::vector<double> r(h.dim());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = x[h.index()[k]] - h.anchor()[k];
        if (h.in_identity_region(r)) continue;
        ++outside;
        worst.offer(distance(op.extend(x), op.target().eval(x)), x);
      }
    }
  } catch (const ContainmentError& e) {
    rep.pass = false;
    rep.detail = e.what();
    return rep;
  }
  rep.worst_error = worst.error;
  rep.witness = worst.witness;
  rep.detail = fmt("max |F - f| on the segments outside the cores %.3g; ", worst.error) +
               std::to_string(outside) + " of " + std::to_string(total) + " samples outside the cores";
  return rep;
}

CheckReport weight_partition_check(const ExtensionOperator& op, std::size_t samples, std::uint64_t seed) {
  auto rep = make_report("weight_partition", seed);
  Sampler sampler(op, seed);
  std::size_t overlaps = 0, wrong = 0;
  Worst worst;
  const std::size_t n = op.segment_count();
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> x;
    if (s % 2 == 0) x = sampler.segment(s / 2 % n);
    else x = sampler.hull();
    const auto w = op.weights(x);
    std::size_t nonzero = 0;
    for (double v : w) nonzero += v != 0.0;
    if (nonzero > 1) {
      ++overlaps;
      worst.offer(static_cast<double>(nonzero - 1), x);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!op.in_segment(i, x)) continue;
      double e = std::abs(w[i] - 1.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) e = std::max(e, std::abs(w[j]));
      if (e != 0.0) {
        ++wrong;
        worst.offer(e, x);
      }
    }
  }
  rep.pass = overlaps == 0 && wrong == 0;
  rep.worst_error = worst.error;
  rep.witness = worst.witness;
  rep.detail = std::to_string(overlaps) + " samples with overlapping weights, " + std::to_string(wrong) +
               " segment samples with weights other than exactly 1 / 0";
  return rep;
}

CheckReport bounded_scan(const ExtensionOperator& op, const ProbeConfig& cfg) {
  auto rep = make_report("bounded_scan", cfg.seed);
  Sampler sampler(op, cfg.seed);
  const auto F = extender(op);
  const double Rs = support_radius(op);
  const bool exhaustible = far_field_exhaustible(op);
  std::vector<double> seg_sup(op.segment_count());
  for (std::size_t i = 0; i < seg_sup.size(); ++i) seg_sup[i] = segment_sup(op, i);

  Worst value, far;
  bool finite = true;
  std::string far_note;
  double prev_sup = kInf;
  std::vector<double> first_d1, first_d2;
  try {
    for (double R : cfg.radii) {
      const bool far_field = exhaustible && R / 2 > Rs;
      double sup_f = 0.0, sup_d1 = 0.0, sup_d2 = 0.0;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        const auto x = sampler.shell(R);
        const auto d = sampler.direction();
        const auto y = F(x);
        double bound = 0.0;
        if (op.assembly() == Assembly::Family) {
          const auto w = op.weights(x);
          for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] != 0.0) bound += w[i] * seg_sup[i];
        } else {
          bound = seg_sup[0];
        }
        const double fn = y.norm();
        value.offer(fn - bound - cfg.value_tol, x);
        sup_f = std::max(sup_f, fn);
        const auto d1 = central_difference(F, x, d, 1, cfg.deriv_step);
        double n1 = d1.norm(), n2 = 0.0;
        if (cfg.q_check >= 2) n2 = central_difference(F, x, d, 2, cfg.deriv2_step).norm();
        if (!std::isfinite(fn) || !std::isfinite(n1) || !std::isfinite(n2)) finite = false;
        sup_d1 = std::max(sup_d1, n1), sup_d2 = std::max(sup_d2, n2);
        if (far_field) far.offer(std::max(n1, n2), x);
      }
      if (far_field) {
        if (sup_f > prev_sup * (1.0 + 1e-12) + 1e-12) {
          far.offer(sup_f - prev_sup, {});
          far_note += fmt(" sup |F| grew to %.6g at R = %g;", sup_f, R);
        }
        prev_sup = sup_f;
      }
      rep.detail += fmt("R=%g: sup|F| %.6g", R, sup_f) + fmt(", sup|D1| %.3g, sup|D2| %.3g; ", sup_d1, sup_d2);
    }
  } catch (const ContainmentError& e) {
    rep.pass = false;
    rep.worst_error = kInf;
    rep.detail = e.what();
    return rep;
  }
  const bool value_ok = value.error <= 0.0;
  const bool far_ok = far.error <= cfg.far_field_tol;
  rep.pass = finite && value_ok && far_ok;
  rep.worst_error = std::max(std::max(0.0, value.error), far.error);
  rep.witness = !value_ok ? value.witness : far.witness;
  rep.detail += fmt("support radius %.6g, closure bound %.6g", Rs, closure_sup_bound(op));
  if (!exhaustible) rep.detail += "; far field not exhausted (segments unbounded on both sides), decay not checked";
  if (!value_ok) rep.detail += fmt("; |F| exceeded the closure bound by %.3g", value.error);
  if (!far_ok) rep.detail += fmt("; far-field derivative %.3g", far.error) + far_note;
  if (!finite) rep.detail += "; non-finite values";
  return rep;
}

namespace {

// Path parameters where some coordinate of x0 + s d crosses a regime
// boundary of a blid or weight.
std::vector<double> seam_parameters(const ExtensionOperator& op, std::span<const double> x0,
                                    std::span<const double> d, double S) {
  std::vector<double> out;
  const bool weights = op.assembly() == Assembly::Family;
  for (std::size_t i = 0; i < op.segment_count(); ++i) {
    const BlidMap& h = op.blid(i);
    if (radial(h)) {
      std::vector<double> r0(x0.size());
      for (std::size_t k = 0; k < r0.size(); ++k) r0[k] = x0[k] - h.anchor()[k];
      for (double rho : thresholds(h, 0, weights)) {
        if (h.kind() == BlidKind::Ball) {
          // ||r0 + s d||^2 = rho^2
          double a = 0.0, b = 0.0, c = -rho * rho;
          for (std::size_t k = 0; k < r0.size(); ++k) a += d[k] * d[k], b += 2 * r0[k] * d[k], c += r0[k] * r0[k];
          const double disc = b * b - 4 * a * c;
          if (disc < 0.0 || a == 0.0) continue;
          out.push_back((-b - std::sqrt(disc)) / (2 * a));
          out.push_back((-b + std::sqrt(disc)) / (2 * a));
        } else {
          for (std::size_t k = 0; k < r0.size(); ++k) {
            if (d[k] == 0.0) continue;
            out.push_back((rho - r0[k]) / d[k]);
            out.push_back((-rho - r0[k]) / d[k]);
          }
        }
      }
      continue;
    }
    for (std::size_t k = 0; k < h.dim(); ++k) {
      const std::size_t j = h.index()[k];
      if (d[j] == 0.0) continue;
      const double r0 = x0[j] - h.anchor()[k];
      for (double t : thresholds(h, k, weights)) out.push_back((t - r0) / d[j]);
    }
  }
  std::erase_if(out, [S](double s) { return !(std::abs(s) < S); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double path_half_length(const BlidMap& h) {
  double t = 1.0;
  for (std::size_t k = 0; k < (radial(h) ? 1 : h.dim()); ++k)
    for (double v : thresholds(h, k, true)) t = std::max(t, std::abs(v));
  return 1.25 * t;
}

}  // namespace

std::vector<CheckReport> seam_probe(const ExtensionOperator& op, const ProbeConfig& cfg) {
  const bool sup_kind = op.segment_count() > 0 && op.blid(0).kind() == BlidKind::Sup;
  const bool min_weight = band_family(op);
  auto jump = make_report("seam_jump", cfg.seed);
  auto d1s = make_report("seam_d1_stability", cfg.seed);
  auto d2s = make_report("seam_d2_stability", cfg.seed,
                         (min_weight || sup_kind) ? Severity::Informational : Severity::Required);
  auto c1 = make_report("seam_c1", cfg.seed, sup_kind ? Severity::Informational : Severity::Required);

  Sampler sampler(op, cfg.seed);
  const auto F = extender(op);
  std::vector<double> steps = cfg.steps;
  std::sort(steps.begin(), steps.end(), std::greater<>());
  const double hc = 1e-7;

  Worst wj, w1, w2, wc;
  std::size_t seams = 0;
  try {
    for (std::size_t p = 0; p < cfg.paths; ++p) {
      const std::size_t i = p % op.segment_count();
      const BlidMap& h = op.blid(i);
      std::vector<double> x0(op.space().dim());
      if (op.half_space())
        for (double& v : x0) v = sampler.uniform(-1.0, 1.0);
      for (std::size_t k = 0; k < h.dim(); ++k) x0[h.index()[k]] = h.anchor()[k];
      const auto d = sampler.direction();
      const double S = path_half_length(h);
      const std::size_t P = cfg.path_points;
      const double ds = 2 * S / static_cast<double>(P - 1);

      std::vector<TargetValue> Fv;
      std::vector<double> sup1(steps.size(), 0.0), sup2(steps.size(), 0.0);
      std::vector<double> n1_max(P, 0.0), n2_max(P, 0.0);
      double supF = 0.0;
      Fv.reserve(P);
      for (std::size_t j = 0; j < P; ++j) {
        const auto x = axpy_copy(x0, -S + ds * static_cast<double>(j), d);
        Fv.push_back(F(x));
        supF = std::max(supF, Fv.back().norm());
        for (std::size_t q = 0; q < steps.size(); ++q) {
          const double a = central_difference(F, x, d, 1, steps[q]).norm();
          const double b = cfg.q_check >= 2 ? central_difference(F, x, d, 2, steps[q]).norm() : 0.0;
          sup1[q] = std::max(sup1[q], a), sup2[q] = std::max(sup2[q], b);
          n1_max[j] = std::max(n1_max[j], a), n2_max[j] = std::max(n2_max[j], b);
        }
      }
      // Increments bounded by the local slope: catches jumps between points.
      for (std::size_t j = 0; j + 1 < P; ++j) {
        const double L = std::max(n1_max[j], n1_max[j + 1]);
        const double L2 = std::max(n2_max[j], n2_max[j + 1]);
        const double allowed = (L + 0.5 * L2 * ds) * ds * (1 + 1e-6) + 1e-12 * (1 + supF);
        const double inc = distance(Fv[j + 1], Fv[j]);
        if (inc > allowed) wj.offer(inc - allowed, axpy_copy(x0, -S + ds * static_cast<double>(j), d));
      }
      const double floor1 = 1e-6 * (1 + supF);
      const double floor2 = 1e-4 * (1 + supF);
      w1.offer(std::max(0.0, sup1.back() - cfg.blowup_factor * sup1.front() - floor1), x0);
      w2.offer(std::max(0.0, sup2.back() - cfg.blowup_factor * sup2.front() - floor2), x0);

      // One-sided second-order derivatives on both sides of each seam.
      for (double s : seam_parameters(op, x0, d, S)) {
        ++seams;
        auto at = [&](double t) { return F(axpy_copy(x0, s + t, d)); };
        const auto f0 = at(0.0), fp1 = at(hc), fp2 = at(2 * hc), fm1 = at(-hc), fm2 = at(-2 * hc);
        const auto right = f0.scaled(-3.0).plus(4.0, fp1).plus(-1.0, fp2).scaled(0.5 / hc);
        const auto left = f0.scaled(3.0).plus(-4.0, fm1).plus(1.0, fm2).scaled(0.5 / hc);
        wc.offer(distance(right, left), axpy_copy(x0, s, d));
      }
    }
  } catch (const ContainmentError& e) {
    for (auto* r : {&jump, &d1s, &d2s, &c1}) {
      r->pass = false;
      r->worst_error = kInf;
      r->detail = e.what();
    }
    return {jump, d1s, d2s, c1};
  }

  jump.pass = wj.error <= 0.0, jump.worst_error = wj.error, jump.witness = wj.witness;
  jump.detail = fmt("largest increment beyond the local slope bound %.3g", wj.error) + " over " +
                std::to_string(cfg.paths) + " paths";
  d1s.pass = w1.error <= 0.0, d1s.worst_error = w1.error, d1s.witness = w1.witness;
  d1s.detail = fmt("first differences: growth beyond %.3g x as h shrinks: %.3g", cfg.blowup_factor, w1.error);
  d2s.pass = w2.error <= 0.0, d2s.worst_error = w2.error, d2s.witness = w2.witness;
  d2s.detail = fmt("second differences: growth beyond %.3g x as h shrinks: %.3g", cfg.blowup_factor, w2.error);
  if (d2s.severity == Severity::Informational)
    d2s.detail += min_weight ? " (min-combined band weight is only Lipschitz)" : " (sup norm is only Lipschitz)";
  c1.pass = wc.error <= cfg.seam_c1_tol, c1.worst_error = wc.error, c1.witness = wc.witness;
  c1.detail = fmt("max one-sided derivative mismatch %.3g", wc.error) + " at " + std::to_string(seams) + " seams" +
              fmt(" (tol %.1g)", cfg.seam_c1_tol);
  return {jump, d1s, d2s, c1};
}

CheckReport derivative_oracle_check(const TargetMap& f, std::size_t samples, std::uint64_t seed) {
  auto rep = make_report(std::string("deriv_oracle:") + to_string(f.id()), seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::normal_distribution<double> gauss;
  const Evaluator F = [&f](std::span<const double> x) { return f.eval(x); };
  const std::size_t n = f.space().dim();
  const bool hilbert = f.space().kind() == SpaceKind::Hilbert;
  const double h = 1e-4;
  const std::vector<double> ladder{1e-2, 1e-3, 1e-4};
  Worst worst;
  double slope_lo = kInf, slope_hi = -kInf;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> x(n), d(n);
    for (double& v : x) v = 2.0 * unif(rng);
    double norm = 0.0;
    while (norm == 0.0) {
      for (double& v : d) v = hilbert ? gauss(rng) : unif(rng);
      norm = f.space().norm(d);
    }
    for (double& v : d) v /= norm;
    const auto exact = f.deriv1(x, d);
    const double scale = std::max(1.0, exact.norm());
    worst.offer(distance(central_difference(F, x, d, 1, h), exact) / scale, x);
    if (!f.is_quadratic()) {
      std::vector<double> e;
      for (double hh : ladder) e.push_back(distance(central_difference(F, x, d, 1, hh), exact));
      for (std::size_t j = 0; j + 1 < e.size(); ++j) {
        const double slope = std::log10(e[j] / e[j + 1]);
        slope_lo = std::min(slope_lo, slope), slope_hi = std::max(slope_hi, slope);
      }
    }
  }
  const double tol = 1e-6;
  bool slope_ok = true;
  if (!f.is_quadratic()) slope_ok = slope_lo >= 1.8 && slope_hi <= 2.2;
  rep.pass = worst.error <= tol && slope_ok;
  rep.worst_error = worst.error;
  rep.witness = worst.witness;
  rep.detail = fmt("max relative error %.3g at h = 1e-4", worst.error);
  if (!f.is_quadratic()) rep.detail += fmt("; observed order in [%.3f, %.3f]", slope_lo, slope_hi);
  else rep.detail += "; quadratic map, differences exact up to rounding";
  return rep;
}

std::vector<CheckReport> run_checks(const ExtensionOperator& op, const ProbeConfig& cfg) {
  validate(cfg);
  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < op.segment_count(); ++i) {
    auto r = blid_law_check(op.blid(i), cfg.samples, 10 * cfg.samples, cfg.seed + i);
    r.id += ":" + std::to_string(i + 1);
    out.push_back(std::move(r));
  }
  out.push_back(containment_check(op, 10 * cfg.samples, cfg.seed));
  out.push_back(restriction_check(op, cfg));
  out.push_back(restriction_gap_probe(op, cfg));
  if (op.assembly() == Assembly::Family) out.push_back(weight_partition_check(op, 10 * cfg.samples, cfg.seed));
  out.push_back(bounded_scan(op, cfg));
  for (auto& r : seam_probe(op, cfg)) out.push_back(std::move(r));
  out.push_back(derivative_oracle_check(op.target(), 100, cfg.seed));
  return out;
}

bool required_checks_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.pass || r.severity == Severity::Informational; });
}

void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << "check,pass,worst_error,seed,witness\n";
  for (const auto& r : reports) {
    out << (r.severity == Severity::Informational ? "info:" : "") << r.id << ',' << (r.pass ? 1 : 0) << ','
        << format_real(r.worst_error) << ',' << r.seed;
    for (double v : r.witness) out << ',' << format_real(v);
    out << '\n';
  }
}

std::string summary_text(const std::vector<CheckReport>& reports) {
  std::ostringstream s;
  std::size_t failed = 0;
  for (const auto& r : reports) failed += !r.pass && r.severity == Severity::Required;
  s << reports.size() << " checks, " << failed << " required failures\n";
  for (const auto& r : reports) {
    s << (r.pass ? "PASS " : "FAIL ") << r.id;
    if (r.severity == Severity::Informational) s << " [info]";
    s << "  worst=" << format_real(r.worst_error) << "  " << r.detail << '\n';
  }
  return s.str();
}

}  // namespace whext
