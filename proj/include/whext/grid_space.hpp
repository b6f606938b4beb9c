#pragma once

// Discrete models of the function spaces the extension operators act on.
//
//   C[0,1]  : values on the uniform grid t_k = k/(N-1)
//   C(M)    : values on an arbitrary finite label set M
//   Hilbert : R^n with the Euclidean inner product
//
// Pointwise conditions are only ever checked at grid points.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace whext {

class Grid {
 public:
  // t_k = k/(n-1); n == 1 yields the single point {0}.
  static std::shared_ptr<const Grid> uniform(std::size_t n);
  // Finite sample set of a compact space; labels must be finite and distinct.
  static std::shared_ptr<const Grid> labels(std::vector<double> points);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t k) const { return points_[k]; }
  std::span<const double> points() const { return points_; }
  bool is_uniform() const { return uniform_; }

  // Index of the grid point closest to t (first one on ties).
  std::size_t nearest(double t) const;

  // Trapezoid weights on [0,1]; uniform grids with N >= 2 only.
  std::vector<double> trapezoid_weights() const;

 private:
  Grid(std::vector<double> points, bool uniform)
      : points_(std::move(points)), uniform_(uniform) {}

  std::vector<double> points_;
  bool uniform_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Same sample points (not necessarily the same object).
bool same_grid(const Grid& a, const Grid& b);

class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<double> values);

  static GridFunction constant(GridPtr grid, double value);
  template <class F>
  static GridFunction sample(GridPtr grid, F&& f) {
    std::vector<double> v(grid->size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f((*grid)[k]);
    return GridFunction(std::move(grid), std::move(v));
  }

  const GridPtr& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const GridFunction& a, const GridFunction& b);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

class HVector {
 public:
  explicit HVector(std::vector<double> coords);

  std::span<const double> coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }

  friend bool operator==(const HVector&, const HVector&) = default;

 private:
  std::vector<double> coords_;
};

double sup_norm(std::span<const double> x);
double sup_norm(const GridFunction& x);
double h_norm(std::span<const double> x);
double h_norm(const HVector& x);

// Trapezoid rule over [0,1]. Throws std::invalid_argument for N < 2 or a
// non-uniform grid.
double integrate(const GridFunction& x);

GridFunction axpy(double alpha, const GridFunction& x, const GridFunction& y);
HVector axpy(double alpha, const HVector& x, const HVector& y);

enum class SpaceKind { Interval, Compact, Hilbert };

// The model space an operator works in. Elements are passed around as spans
// of length dim(); the space decides which norm applies.
class Space {
 public:
  static Space interval(std::size_t n);
  static Space compact(std::vector<double> labels);
  static Space hilbert(std::size_t n);
  static Space over(GridPtr grid, SpaceKind kind);

  SpaceKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  // Null for Hilbert spaces.
  const GridPtr& grid() const { return grid_; }
  bool has_grid() const { return grid_ != nullptr; }

  // Sup norm for C[0,1] / C(M), Euclidean for Hilbert.
  double norm(std::span<const double> x) const;

  // Throws std::invalid_argument when x.size() != dim().
  void check(std::span<const double> x, const char* what) const;

 private:
  Space(SpaceKind kind, GridPtr grid, std::size_t dim)
      : kind_(kind), grid_(std::move(grid)), dim_(dim) {}

  SpaceKind kind_;
  GridPtr grid_;
  std::size_t dim_;
};

const char* to_string(SpaceKind kind);

// Element of the target Banach space Y.
class TargetValue {
 public:
  using Storage = std::variant<double, std::vector<double>, GridFunction>;
  enum class Kind { Scalar, Vector, Func };

  TargetValue(double v) : value_(v) {}
  TargetValue(std::vector<double> v) : value_(std::move(v)) {}
  TargetValue(GridFunction v) : value_(std::move(v)) {}

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  const Storage& storage() const { return value_; }

  double scalar() const { return std::get<double>(value_); }
  std::span<const double> components() const;
  std::size_t size() const { return components().size(); }

  // Zero element with the same shape.
  TargetValue zero_like() const;
  TargetValue scaled(double alpha) const;
  // this + alpha * other; shapes must match.
  TargetValue plus(double alpha, const TargetValue& other) const;
  // |.| for scalars, Euclidean for vectors, sup for functions.
  double norm() const;
  // norm(a - b)
  friend double distance(const TargetValue& a, const TargetValue& b);

  bool finite() const;

  friend bool operator==(const TargetValue&, const TargetValue&) = default;

 private:
  Storage value_;
};

// 17 significant digits, round-trippable.
std::string format_real(double v);

// CSV rows `t,value`.
void write_csv(std::ostream& out, const GridFunction& x);
// Reads rows written by write_csv; the grid is rebuilt from the t column
// (uniform if it matches k/(N-1) exactly, labels otherwise).
GridFunction read_csv(std::istream& in);

}  // namespace whext
