#pragma once

// Catalog of smooth test maps f : X -> Y with closed-form derivatives.

#include <optional>
#include <span>
#include <string>

#include "whext/grid_space.hpp"

namespace whext {

enum class TargetId { QuadIntegral, PointEval, PointwiseSin, LinearFunctional, QuadNorm };

const char* to_string(TargetId id);
std::optional<TargetId> target_from_string(const std::string& name);

class TargetMap {
 public:
  // integral of x(t)^2 (trapezoid); needs a uniform grid with N >= 2
  static TargetMap quad_integral(const Space& space);
  // x(t0), t0 snapped to the nearest grid point (coordinate index for Hilbert)
  static TargetMap point_eval(const Space& space, double t0);
  // t -> sin(x(t)); a grid function on grid spaces, a vector on Hilbert
  static TargetMap pointwise_sin(const Space& space);
  // integral of w(t) x(t)
  static TargetMap linear_functional(const Space& space, GridFunction weight);
  // sum of x_k^2 (||x||^2 in the Hilbert model)
  static TargetMap quad_norm(const Space& space);

  TargetId id() const { return id_; }
  const Space& space() const { return space_; }
  double t0() const { return t0_; }
  std::size_t eval_index() const { return index_; }
  // Trapezoid weights times w(t) (linear functional) or trapezoid weights.
  std::span<const double> quad_weights() const { return quad_; }

  TargetValue eval(std::span<const double> x) const;
  // Df(x)[d]
  TargetValue deriv1(std::span<const double> x, std::span<const double> d) const;
  // D^2 f(x)[d, d]
  TargetValue deriv2(std::span<const double> x, std::span<const double> d) const;
  // Zero of Y with the output shape.
  TargetValue zero() const;

  // Polynomial of degree <= 2 in x: central differences are exact up to
  // rounding.
  bool is_quadratic() const { return id_ != TargetId::PointwiseSin; }

  // Sup of ||f|| over the box prod_k [lo_k, hi_k] (entries may be infinite).
  double sup_over_box(std::span<const double> lo, std::span<const double> hi) const;

 private:
  TargetMap(TargetId id, Space space) : id_(id), space_(std::move(space)) {}
  TargetValue wrap(std::vector<double> v) const;

  TargetId id_;
  Space space_;
  double t0_ = 0.0;
  std::size_t index_ = 0;
  std::vector<double> quad_;
};

}  // namespace whext
