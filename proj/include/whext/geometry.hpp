#pragma once

// Segment families: bands in C[0,1] (or C(M)), balls in Hilbert / C(M)
// models, and the half-space of the Seeley construction.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whext/grid_space.hpp"

namespace whext {

// {x : phi(t) < x(t) < psi(t) for every grid point t}. A missing phi / psi
// means -inf / +inf.
class Band {
 public:
  Band(std::optional<GridFunction> phi, std::optional<GridFunction> psi, GridFunction anchor, double delta);

  const GridPtr& grid() const { return anchor_.grid(); }
  std::size_t size() const { return anchor_.size(); }
  double phi(std::size_t k) const;
  double psi(std::size_t k) const;
  double anchor(std::size_t k) const { return anchor_[k]; }
  const GridFunction& anchor() const { return anchor_; }
  double delta() const { return delta_; }
  bool lower_infinite() const { return !phi_; }
  bool upper_infinite() const { return !psi_; }
  bool unbounded_both() const { return !phi_ && !psi_; }
  const std::optional<GridFunction>& phi_function() const { return phi_; }
  const std::optional<GridFunction>& psi_function() const { return psi_; }

 private:
  std::optional<GridFunction> phi_, psi_;
  GridFunction anchor_;
  double delta_;
};

// {x : ||x - center|| < radius} in the norm of `space`.
class Ball {
 public:
  Ball(Space space, std::vector<double> center, double radius, double delta);

  const Space& space() const { return space_; }
  std::span<const double> center() const { return center_; }
  double radius() const { return radius_; }
  double delta() const { return delta_; }

 private:
  Space space_;
  std::vector<double> center_;
  double radius_, delta_;
};

// X = U (+) W with W picked by a coordinate mask; E = {w(t) < 0 on W}.
class HalfSpaceSplit {
 public:
  HalfSpaceSplit(GridPtr grid, std::vector<bool> mask, std::vector<double> anchor_w, double delta);

  const GridPtr& grid() const { return grid_; }
  const std::vector<bool>& mask() const { return mask_; }
  // Positions of the W coordinates in the full grid.
  const std::vector<std::size_t>& w_index() const { return w_index_; }
  std::span<const double> anchor_w() const { return anchor_w_; }
  double delta() const { return delta_; }
  bool whole_space() const { return w_index_.size() == mask_.size(); }

  // The W part as a lower-unbounded band (phi = -inf, psi = 0) on the
  // masked points.
  Band w_band() const;

 private:
  GridPtr grid_;
  std::vector<bool> mask_;
  std::vector<std::size_t> w_index_;
  std::vector<double> anchor_w_;
  double delta_;
};

class SegmentFamily {
 public:
  enum class Kind { Band, Ball };

  static SegmentFamily of_bands(std::vector<Band> bands);
  static SegmentFamily of_balls(std::vector<Ball> balls);

  Kind kind() const { return kind_; }
  const Space& space() const { return space_; }
  std::size_t size() const { return kind_ == Kind::Band ? bands_.size() : balls_.size(); }
  const std::vector<Band>& bands() const { return bands_; }
  const std::vector<Ball>& balls() const { return balls_; }

 private:
  SegmentFamily(Kind kind, Space space) : kind_(kind), space_(std::move(space)) {}

  Kind kind_;
  Space space_;
  std::vector<Band> bands_;
  std::vector<Ball> balls_;
};

struct Violation {
  std::size_t i, j;  // 0-based, i < j
  // Band pairs: witness grid point and psi_i(t), phi_j(t) there.
  // Ball pairs: witness_t is NaN, psi_i holds the centre distance and phi_j
  // the required separation.
  double witness_t;
  double psi_i, phi_j;
  std::string reason;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_band_family(const SegmentFamily& family);
ValidationReport validate_ball_family(const SegmentFamily& family);
ValidationReport validate(const SegmentFamily& family);

// Segment numbers in the CSV are 1-based.
void write_violations_csv(std::ostream& out, const ValidationReport& report);

// min over the grid of min(z - phi, psi - z) over the finite sides.
double band_margin(const Band& band);

enum class Membership { Inside, BoundaryOrOutside };

Membership contains(const Band& band, std::span<const double> x);
Membership contains(const Ball& ball, std::span<const double> x);
Membership contains(const HalfSpaceSplit& half, std::span<const double> x);

}  // namespace whext
