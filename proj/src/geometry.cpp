#include "whext/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "whext/bump_kit.hpp"

namespace whext {

namespace {

void require_grid(const GridFunction& f, const GridPtr& grid, const char* what) {
  if (!same_grid(*f.grid(), *grid)) throw std::invalid_argument(std::string("Band: ") + what + " grid mismatch");
}

}  // namespace

Band::Band(std::optional<GridFunction> phi, std::optional<GridFunction> psi, GridFunction anchor, double delta)
    : phi_(std::move(phi)), psi_(std::move(psi)), anchor_(std::move(anchor)), delta_(delta) {
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) throw std::invalid_argument("Band: delta must be finite and > 0");
  if (phi_) require_grid(*phi_, grid(), "phi");
  if (psi_) require_grid(*psi_, grid(), "psi");
  for (std::size_t k = 0; k < size(); ++k) {
    if (!(this->phi(k) < anchor_[k] && anchor_[k] < this->psi(k))) {
      throw std::invalid_argument("Band: anchor must satisfy phi(t) < z(t) < psi(t); violated at t = " +
                                  format_real((*grid())[k]));
    }
  }
}

double Band::phi(std::size_t k) const { return phi_ ? (*phi_)[k] : -kInf; }
double Band::psi(std::size_t k) const { return psi_ ? (*psi_)[k] : kInf; }

Ball::Ball(Space space, std::vector<double> center, double radius, double delta)
    : space_(std::move(space)), center_(std::move(center)), radius_(radius), delta_(delta) {
  space_.check(center_, "Ball centre");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw std::invalid_argument("Ball: radius must be finite and > 0");
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) throw std::invalid_argument("Ball: delta must be finite and > 0");
  for (double c : center_)
    if (!std::isfinite(c)) throw std::invalid_argument("Ball: non-finite centre");
}

HalfSpaceSplit::HalfSpaceSplit(GridPtr grid, std::vector<bool> mask, std::vector<double> anchor_w, double delta)
    : grid_(std::move(grid)), mask_(std::move(mask)), anchor_w_(std::move(anchor_w)), delta_(delta) {
  if (mask_.size() != grid_->size()) throw std::invalid_argument("HalfSpaceSplit: mask length does not match grid");
  for (std::size_t k = 0; k < mask_.size(); ++k)
    if (mask_[k]) w_index_.push_back(k);
  if (w_index_.empty()) throw std::invalid_argument("HalfSpaceSplit: mask must select at least one point");
  if (anchor_w_.size() != w_index_.size())
    throw std::invalid_argument("HalfSpaceSplit: anchor length must equal the number of W coordinates");
  for (double z : anchor_w_)
    if (!(z < 0.0) || !std::isfinite(z)) throw std::invalid_argument("HalfSpaceSplit: anchor must be < 0 on W");
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) throw std::invalid_argument("HalfSpaceSplit: delta must be finite and > 0");
}

Band HalfSpaceSplit::w_band() const {
  std::vector<double> t;
  for (auto k : w_index_) t.push_back((*grid_)[k]);
  GridPtr sub = whole_space() ? grid_ : Grid::labels(std::move(t));
  return Band(std::nullopt, GridFunction::constant(sub, 0.0), GridFunction(sub, anchor_w_), delta_);
}

SegmentFamily SegmentFamily::of_bands(std::vector<Band> bands) {
  if (bands.empty()) throw std::invalid_argument("SegmentFamily: at least one segment required");
  const auto& grid = bands.front().grid();
  for (const auto& b : bands) {
    if (!same_grid(*b.grid(), *grid)) throw std::invalid_argument("SegmentFamily: bands live on different grids");
    if (b.unbounded_both() && bands.size() > 1)
      throw std::invalid_argument("SegmentFamily: a band unbounded on both sides must be the only member");
  }
  SegmentFamily f(Kind::Band, Space::over(grid, grid->is_uniform() ? SpaceKind::Interval : SpaceKind::Compact));
  f.bands_ = std::move(bands);
  return f;
}

SegmentFamily SegmentFamily::of_balls(std::vector<Ball> balls) {
  if (balls.empty()) throw std::invalid_argument("SegmentFamily: at least one segment required");
  const Space& space = balls.front().space();
  for (const auto& b : balls) {
    if (b.space().kind() != space.kind() || b.space().dim() != space.dim())
      throw std::invalid_argument("SegmentFamily: balls live in different spaces");
  }
  SegmentFamily f(Kind::Ball, space);
  f.balls_ = std::move(balls);
  return f;
}

ValidationReport validate_band_family(const SegmentFamily& family) {
  if (family.kind() != SegmentFamily::Kind::Band) throw std::invalid_argument("validate_band_family: not a band family");
  ValidationReport report;
  const auto& bands = family.bands();
  const auto& grid = *family.space().grid();
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < bands.size(); ++i) {
    for (std::size_t j = i + 1; j < bands.size(); ++j) {
      const Band& a = bands[i];
      const Band& b = bands[j];
      bool all_below = true, all_above = true;
      for (std::size_t k = 0; k < n; ++k) {
        all_below = all_below && a.psi(k) < b.phi(k);
        all_above = all_above && b.psi(k) < a.phi(k);
      }
      auto record = [&](std::size_t k, const char* reason) {
        report.violations.push_back({i, j, grid[k], a.psi(k), b.phi(k), reason});
      };
      if (!all_below && !all_above) {
        // Deepest pointwise overlap, or the first order switch if the bands
        // never overlap at a grid point.
        std::size_t best = 0;
        double depth = -kInf;
        for (std::size_t k = 0; k < n; ++k) {
          const double d = std::min(a.psi(k), b.psi(k)) - std::max(a.phi(k), b.phi(k));
          if (d > depth) depth = d, best = k;
        }
        if (depth < 0.0) {
          const bool below0 = a.psi(0) < b.phi(0);
          for (best = 0; best < n && (a.psi(best) < b.phi(best)) == below0; ++best) {
          }
          if (best == n) best = 0;
          record(best, "order switch");
        } else {
          record(best, "overlap");
        }
        continue;
      }
      // Ordered; the closed delta-enlargements must not touch.
      const Band& lo = all_below ? a : b;
      const Band& hi = all_below ? b : a;
      std::size_t best = 0;
      double depth = -kInf;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = (lo.psi(k) + lo.delta()) - (hi.phi(k) - hi.delta());
        if (d > depth) depth = d, best = k;
      }
      if (depth >= 0.0) record(best, "delta enlargements intersect");
    }
  }
  return report;
}

ValidationReport validate_ball_family(const SegmentFamily& family) {
  if (family.kind() != SegmentFamily::Kind::Ball) throw std::invalid_argument("validate_ball_family: not a ball family");
  ValidationReport report;
  const auto& balls = family.balls();
  const Space& space = family.space();
  std::vector<double> diff(space.dim());
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = balls[i].center()[k] - balls[j].center()[k];
      const double dist = space.norm(diff);
      const double need =
          balls[i].radius() + balls[j].radius() + std::max(balls[i].delta(), balls[j].delta());
      if (!(dist > need))
        report.violations.push_back({i, j, std::numeric_limits<double>::quiet_NaN(), dist, need, "balls too close"});
    }
  }
  return report;
}

ValidationReport validate(const SegmentFamily& family) {
  return family.kind() == SegmentFamily::Kind::Band ? validate_band_family(family) : validate_ball_family(family);
}

void write_violations_csv(std::ostream& out, const ValidationReport& report) {
  out << "pair_i,pair_j,witness_t,psi_i,phi_j\n";
  for (const auto& v : report.violations) {
    out << v.i + 1 << ',' << v.j + 1 << ',' << (std::isnan(v.witness_t) ? std::string() : format_real(v.witness_t))
        << ',' << format_real(v.psi_i) << ',' << format_real(v.phi_j) << '\n';
  }
}

double band_margin(const Band& band) {
  double m = kInf;
  for (std::size_t k = 0; k < band.size(); ++k) {
    const double z = band.anchor(k);
    if (!band.lower_infinite()) m = std::min(m, z - band.phi(k));
    if (!band.upper_infinite()) m = std::min(m, band.psi(k) - z);
  }
  return m;
}

Membership contains(const Band& band, std::span<const double> x) {
  if (x.size() != band.size()) throw std::invalid_argument("contains: shape mismatch");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(band.phi(k) < x[k] && x[k] < band.psi(k))) return Membership::BoundaryOrOutside;
  }
  return Membership::Inside;
}

Membership contains(const Ball& ball, std::span<const double> x) {
  ball.space().check(x, "contains");
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) r[k] = x[k] - ball.center()[k];
  return ball.space().norm(r) < ball.radius() ? Membership::Inside : Membership::BoundaryOrOutside;
}

Membership contains(const HalfSpaceSplit& half, std::span<const double> x) {
  if (x.size() != half.mask().size()) throw std::invalid_argument("contains: mask mismatch");
  for (auto k : half.w_index())
    if (!(x[k] < 0.0)) return Membership::BoundaryOrOutside;
  return Membership::Inside;
}

}  // namespace whext
