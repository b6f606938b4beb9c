#include "whext/grid_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace whext {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

std::shared_ptr<const Grid> Grid::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Grid::uniform: N must be >= 1");
  std::vector<double> t(n, 0.0);
  for (std::size_t k = 0; k < n && n > 1; ++k) t[k] = static_cast<double>(k) / static_cast<double>(n - 1);
  return std::shared_ptr<const Grid>(new Grid(std::move(t), true));
}

std::shared_ptr<const Grid> Grid::labels(std::vector<double> points) {
  if (points.empty()) throw std::invalid_argument("Grid::labels: |M| must be >= 1");
  require_finite(points, "Grid::labels");
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("Grid::labels: duplicate label");
  return std::shared_ptr<const Grid>(new Grid(std::move(points), false));
}

std::size_t Grid::nearest(double t) const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (std::abs(points_[k] - t) < std::abs(points_[best] - t)) best = k;
  }
  return best;
}

std::vector<double> Grid::trapezoid_weights() const {
  if (!uniform_) throw std::invalid_argument("quadrature requires a uniform C[0,1] grid");
  if (points_.size() < 2) throw std::invalid_argument("quadrature requires N >= 2");
  const double h = 1.0 / static_cast<double>(points_.size() - 1);
  std::vector<double> w(points_.size(), h);
  w.front() = w.back() = 0.5 * h;
  return w;
}

bool same_grid(const Grid& a, const Grid& b) {
  return &a == &b || (a.size() == b.size() && a.is_uniform() == b.is_uniform() &&
                      std::equal(a.points().begin(), a.points().end(), b.points().begin()));
}

bool operator==(const GridFunction& a, const GridFunction& b) {
  return same_grid(*a.grid_, *b.grid_) && a.values_ == b.values_;
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("GridFunction: null grid");
  if (values_.size() != grid_->size())
    throw std::invalid_argument("GridFunction: value count does not match grid size");
  require_finite(values_, "GridFunction");
}

GridFunction GridFunction::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  return GridFunction(std::move(grid), std::vector<double>(n, value));
}

HVector::HVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("HVector: dimension must be >= 1");
  require_finite(coords_, "HVector");
}

double sup_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const GridFunction& x) { return sup_norm(x.values()); }

double h_norm(std::span<const double> x) {
  // Scaled accumulation to avoid overflow for large entries.
  const double scale = sup_norm(x);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) {
    const double q = v / scale;
    s += q * q;
  }
  return scale * std::sqrt(s);
}

double h_norm(const HVector& x) { return h_norm(x.coords()); }

double integrate(const GridFunction& x) {
  const auto w = x.grid()->trapezoid_weights();
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * x[k];
  return s;
}

GridFunction axpy(double alpha, const GridFunction& x, const GridFunction& y) {
  if (!same_grid(*x.grid(), *y.grid()))
    throw std::invalid_argument("axpy: grid mismatch");
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = alpha * x[k] + y[k];
  return GridFunction(x.grid(), std::move(out));
}

HVector axpy(double alpha, const HVector& x, const HVector& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("axpy: dimension mismatch");
  std::vector<double> out(x.dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = alpha * x[k] + y[k];
  return HVector(std::move(out));
}

Space Space::interval(std::size_t n) { return Space(SpaceKind::Interval, Grid::uniform(n), n); }

Space Space::compact(std::vector<double> labels) {
  auto g = Grid::labels(std::move(labels));
  const auto n = g->size();
  return Space(SpaceKind::Compact, std::move(g), n);
}

Space Space::hilbert(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Space::hilbert: dimension must be >= 1");
  return Space(SpaceKind::Hilbert, nullptr, n);
}

Space Space::over(GridPtr grid, SpaceKind kind) {
  if (kind == SpaceKind::Hilbert) throw std::invalid_argument("Space::over: Hilbert spaces have no grid");
  const auto n = grid->size();
  return Space(kind, std::move(grid), n);
}

double Space::norm(std::span<const double> x) const {
  return kind_ == SpaceKind::Hilbert ? h_norm(x) : sup_norm(x);
}

void Space::check(std::span<const double> x, const char* what) const {
  if (x.size() != dim_) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(dim_) +
                                " coordinates, got " + std::to_string(x.size()));
  }
}

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Interval: return "c01";
    case SpaceKind::Compact: return "cm";
    case SpaceKind::Hilbert: return "hilbert";
  }
  return "?";
}

std::span<const double> TargetValue::components() const {
  switch (value_.index()) {
    case 0: return {&std::get<double>(value_), 1};
    case 1: return std::get<std::vector<double>>(value_);
    default: return std::get<GridFunction>(value_).values();
  }
}

TargetValue TargetValue::zero_like() const { return scaled(0.0); }

TargetValue TargetValue::scaled(double alpha) const {
  switch (value_.index()) {
    case 0: return alpha * std::get<double>(value_);
    case 1: {
      auto v = std::get<std::vector<double>>(value_);
      for (double& x : v) x *= alpha;
      return v;
    }
    default: {
      const auto& f = std::get<GridFunction>(value_);
      std::vector<double> v(f.values().begin(), f.values().end());
      for (double& x : v) x *= alpha;
      return GridFunction(f.grid(), std::move(v));
    }
  }
}

TargetValue TargetValue::plus(double alpha, const TargetValue& other) const {
  if (other.value_.index() != value_.index() || other.size() != size())
    throw std::invalid_argument("TargetValue: shape mismatch");
  auto a = components();
  auto b = other.components();
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + alpha * b[k];
  switch (value_.index()) {
    case 0: return v[0];
    case 1: return v;
    default: return GridFunction(std::get<GridFunction>(value_).grid(), std::move(v));
  }
}

double TargetValue::norm() const {
  switch (value_.index()) {
    case 0: return std::abs(std::get<double>(value_));
    case 1: return h_norm(std::get<std::vector<double>>(value_));
    default: return sup_norm(std::get<GridFunction>(value_));
  }
}

double distance(const TargetValue& a, const TargetValue& b) { return a.plus(-1.0, b).norm(); }

bool TargetValue::finite() const {
  for (double v : components())
    if (!std::isfinite(v)) return false;
  return true;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const GridFunction& x) {
  for (std::size_t k = 0; k < x.size(); ++k)
    out << format_real((*x.grid())[k]) << ',' << format_real(x[k]) << '\n';
}

GridFunction read_csv(std::istream& in) {
  std::vector<double> t, v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("read_csv: line " + std::to_string(lineno) + ": expected `t,value`");
    try {
      t.push_back(std::stod(line.substr(0, comma)));
      v.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("read_csv: line " + std::to_string(lineno) + ": malformed number");
    }
  }
  if (t.empty()) throw std::invalid_argument("read_csv: no rows");
  auto uniform = Grid::uniform(t.size());
  const bool is_uniform = std::equal(t.begin(), t.end(), uniform->points().begin());
  return GridFunction(is_uniform ? uniform : Grid::labels(t), std::move(v));
}

}  // namespace whext
