#include "whext/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace whext {

const char* to_string(TargetId id) {
  switch (id) {
    case TargetId::QuadIntegral: return "quad_integral";
    case TargetId::PointEval: return "point_eval";
    case TargetId::PointwiseSin: return "pointwise_sin";
    case TargetId::LinearFunctional: return "linear_functional";
    case TargetId::QuadNorm: return "quad_norm";
  }
  return "?";
}

std::optional<TargetId> target_from_string(const std::string& name) {
  for (auto id : {TargetId::QuadIntegral, TargetId::PointEval, TargetId::PointwiseSin, TargetId::LinearFunctional,
                  TargetId::QuadNorm}) {
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

TargetMap TargetMap::quad_integral(const Space& space) {
  if (!space.has_grid()) throw std::invalid_argument("quad_integral needs a C[0,1] grid");
  TargetMap f(TargetId::QuadIntegral, space);
  f.quad_ = space.grid()->trapezoid_weights();
  return f;
}

TargetMap TargetMap::point_eval(const Space& space, double t0) {
  TargetMap f(TargetId::PointEval, space);
  f.t0_ = t0;
  if (space.has_grid()) {
    f.index_ = space.grid()->nearest(t0);
  } else {
    if (!(t0 >= 0.0) || t0 >= static_cast<double>(space.dim()) || t0 != std::floor(t0))
      throw std::invalid_argument("point_eval on a Hilbert model needs a coordinate index");
    f.index_ = static_cast<std::size_t>(t0);
  }
  return f;
}

TargetMap TargetMap::pointwise_sin(const Space& space) { return TargetMap(TargetId::PointwiseSin, space); }

TargetMap TargetMap::linear_functional(const Space& space, GridFunction weight) {
  if (!space.has_grid() || !same_grid(*space.grid(), *weight.grid()))
    throw std::invalid_argument("linear_functional: weight must live on the model grid");
  TargetMap f(TargetId::LinearFunctional, space);
  f.quad_ = space.grid()->trapezoid_weights();
  for (std::size_t k = 0; k < f.quad_.size(); ++k) f.quad_[k] *= weight[k];
  return f;
}

TargetMap TargetMap::quad_norm(const Space& space) { return TargetMap(TargetId::QuadNorm, space); }

TargetValue TargetMap::wrap(std::vector<double> v) const {
  if (space_.has_grid()) return GridFunction(space_.grid(), std::move(v));
  return v;
}

TargetValue TargetMap::zero() const {
  if (id_ == TargetId::PointwiseSin) return wrap(std::vector<double>(space_.dim(), 0.0));
  return 0.0;
}

TargetValue TargetMap::eval(std::span<const double> x) const {
  space_.check(x, to_string(id_));
  switch (id_) {
    case TargetId::QuadIntegral: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += quad_[k] * x[k] * x[k];
      return s;
    }
    case TargetId::PointEval: return x[index_];
    case TargetId::PointwiseSin: {
      std::vector<double> v(x.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(x[k]);
      return wrap(std::move(v));
    }
    case TargetId::LinearFunctional: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += quad_[k] * x[k];
      return s;
    }
    case TargetId::QuadNorm: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    }
  }
  throw std::logic_error("unknown target");
}

TargetValue TargetMap::deriv1(std::span<const double> x, std::span<const double> d) const {
  space_.check(x, to_string(id_));
  space_.check(d, to_string(id_));
  switch (id_) {
    case TargetId::QuadIntegral: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += quad_[k] * x[k] * d[k];
      return 2.0 * s;
    }
    case TargetId::PointEval: return d[index_];
    case TargetId::PointwiseSin: {
      std::vector<double> v(x.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::cos(x[k]) * d[k];
      return wrap(std::move(v));
    }
    case TargetId::LinearFunctional: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += quad_[k] * d[k];
      return s;
    }
    case TargetId::QuadNorm: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * d[k];
      return 2.0 * s;
    }
  }
  throw std::logic_error("unknown target");
}

TargetValue TargetMap::deriv2(std::span<const double> x, std::span<const double> d) const {
  space_.check(x, to_string(id_));
  space_.check(d, to_string(id_));
  switch (id_) {
    case TargetId::QuadIntegral: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += quad_[k] * d[k] * d[k];
      return 2.0 * s;
    }
    case TargetId::PointEval:
    case TargetId::LinearFunctional: return 0.0;
    case TargetId::PointwiseSin: {
      std::vector<double> v(x.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = -std::sin(x[k]) * d[k] * d[k];
      return wrap(std::move(v));
    }
    case TargetId::QuadNorm: {
      double s = 0.0;
      for (double v : d) s += v * v;
      return 2.0 * s;
    }
  }
  throw std::logic_error("unknown target");
}

namespace {

double sup_abs_sin(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || b - a >= std::numbers::pi) return 1.0;
  const double m = std::ceil((a - std::numbers::pi / 2) / std::numbers::pi);
  if (std::numbers::pi / 2 + m * std::numbers::pi <= b) return 1.0;
  return std::max(std::abs(std::sin(a)), std::abs(std::sin(b)));
}

double max_square(double a, double b) { return std::max(a * a, b * b); }

}  // namespace

double TargetMap::sup_over_box(std::span<const double> lo, std::span<const double> hi) const {
  space_.check(lo, "sup_over_box");
  space_.check(hi, "sup_over_box");
  switch (id_) {
    case TargetId::QuadIntegral: {
      double s = 0.0;
      for (std::size_t k = 0; k < lo.size(); ++k) s += quad_[k] * max_square(lo[k], hi[k]);
      return s;
    }
    case TargetId::PointEval: return std::max(std::abs(lo[index_]), std::abs(hi[index_]));
    case TargetId::PointwiseSin: {
      std::vector<double> s(lo.size());
      for (std::size_t k = 0; k < s.size(); ++k) s[k] = sup_abs_sin(lo[k], hi[k]);
      return space_.has_grid() ? sup_norm(s) : h_norm(s);
    }
    case TargetId::LinearFunctional: {
      double up = 0.0, down = 0.0;
      for (std::size_t k = 0; k < lo.size(); ++k) {
        const double c = quad_[k];
        if (c == 0.0) continue;
        up += std::max(c * lo[k], c * hi[k]);
        down += std::min(c * lo[k], c * hi[k]);
      }
      return std::max(std::abs(up), std::abs(down));
    }
    case TargetId::QuadNorm: {
      double s = 0.0;
      for (std::size_t k = 0; k < lo.size(); ++k) s += max_square(lo[k], hi[k]);
      return s;
    }
  }
  throw std::logic_error("unknown target");
}

}  // namespace whext
