#pragma once

// Bounded locally identical ("blid") maps H : X -> X.
//
//   band : H(r)(t) = h(r(t), t) * r(t), one bump profile per grid point
//   ball : H(r) = h(||r||^2) * r   (Euclidean norm, Hilbert model)
//   sup  : H(r) = h(sup_t |r(t)|) * r   (C(M) model)
//   half : band blid on the W coordinates with phi = -inf, psi = 0
//
// Two modes are available. Literal{eps} evaluates eps * H(r / eps); eps = 1
// is the raw map. Clamp{theta} is the identity on the segment shrunk by theta
// and maps everything into the closed segment: band / half coordinates
// saturate smoothly at the sides, balls retract through a bump that falls
// from 1 at radius a - theta to 0 at radius a.

#include <span>
#include <variant>
#include <vector>

#include "whext/bump_kit.hpp"
#include "whext/geometry.hpp"

namespace whext {

enum class BlidKind { Band, Ball, Sup, Half };
const char* to_string(BlidKind kind);

struct Literal {
  double epsilon = 1.0;
};
struct Clamp {
  double theta;
};
using BlidMode = std::variant<Literal, Clamp>;

struct BlidBound {
  // sup ||H(r)|| over the model; +inf when a side is unbounded.
  double value;
  // Bound on the finite side(s) only.
  double finite_side;
  bool lower_unbounded = false;
  bool upper_unbounded = false;
};

// Smooth one-sided saturation used by Clamp mode: identity for
// s <= hi - theta, exactly hi for s >= hi + theta, derivative
// 1 - T((s - hi + theta) / (2 theta)) in between.
double clamp_upper(double s, double hi, double theta);
double clamp_upper_d1(double s, double hi, double theta);
// Mirror image: identity for s >= lo + theta, exactly lo for s <= lo - theta.
double clamp_lower(double s, double lo, double theta);
double clamp_lower_d1(double s, double lo, double theta);
// Integral of 1 - T over [0, v], v in [0, 1]; equals 1/2 at v = 1.
double transition_complement_integral(double v);

class BlidMap {
 public:
  static BlidMap for_band(const Band& band, BlidMode mode = Literal{});
  // Hilbert balls give a `ball` blid, C(M) / C[0,1] balls a `sup` blid.
  static BlidMap for_ball(const Ball& ball, BlidMode mode = Literal{});
  static BlidMap for_half(const HalfSpaceSplit& half, BlidMode mode = Literal{});

  // Same geometry, different mode. Throws std::invalid_argument for
  // epsilon <= 0 or theta outside (0, margin).
  BlidMap with_mode(BlidMode mode) const;

  BlidKind kind() const { return kind_; }
  const BlidMode& mode() const { return mode_; }
  bool is_clamp() const { return std::holds_alternative<Clamp>(mode_); }
  double epsilon() const;
  double theta() const;

  // Number of coordinates of r (the W coordinates for a half blid).
  std::size_t dim() const { return anchor_.size(); }
  // Number of coordinates of x for apply_at / contained.
  std::size_t full_dim() const { return full_dim_; }
  std::span<const double> anchor() const { return anchor_; }
  // Positions of the r coordinates inside x (identity except for half).
  const std::vector<std::size_t>& index() const { return index_; }

  // Thresholds phi - z, psi - z per coordinate (band / half).
  double lower(std::size_t k) const { return lower_[k]; }
  double upper(std::size_t k) const { return upper_[k]; }
  BumpProfile profile(std::size_t k) const;
  // Scalar profile in the norm variable (ball: squared norm, sup: norm).
  BumpProfile radial_profile() const;
  double radius() const { return radius_; }
  double delta() const { return delta_; }

  // Distance budget from the anchor to the finite sides.
  double margin() const { return margin_; }

  // Unscaled H(r).
  std::vector<double> raw(std::span<const double> r) const;
  // The mode-applied map in r coordinates.
  std::vector<double> apply(std::span<const double> r) const;
  // z + apply(x - z) on the full space; returns x bit-exactly on the
  // identity region and passes U coordinates of a half blid through.
  std::vector<double> apply_at(std::span<const double> x) const;

  // Whether apply(r) == r is guaranteed.
  bool in_identity_region(std::span<const double> r) const;
  // Literal: y strictly inside the finite sides. Clamp: y in the closure.
  bool contained(std::span<const double> y) const;

  // Bound of the raw map (mode ignored).
  BlidBound bound() const;
  // Bound of the mode-applied map.
  BlidBound applied_bound() const;
  // Size of an output of apply() measured the way the bounds are: the norm
  // for ball / sup, and for band / half the largest excursion towards a
  // finite side.
  double extent(std::span<const double> out) const;

 private:
  BlidMap() = default;
  std::vector<double> evaluate(std::span<const double> r, const BlidMode& mode) const;
  double norm(std::span<const double> r) const;

  BlidKind kind_{};
  BlidMode mode_ = Literal{};
  std::vector<double> anchor_;
  std::vector<double> lower_, upper_;
  // Absolute sides phi, psi (band / half).
  std::vector<double> phi_, psi_;
  std::vector<std::size_t> index_;
  std::size_t full_dim_ = 0;
  double radius_ = 0.0;
  double delta_ = 0.0;
  double margin_ = 0.0;
};

// epsilon = safety * margin / bound on the constraining sides.
double epsilon_for(const BlidMap& h, double safety = 0.5);

// Convenience wrappers mirroring the individual constructions.
std::vector<double> band_blid_apply(const BlidMap& h, std::span<const double> r);
std::vector<double> ball_blid_apply(const BlidMap& h, std::span<const double> r);
std::vector<double> sup_blid_apply(const BlidMap& h, std::span<const double> r);
std::vector<double> scaled_apply(const BlidMap& h, std::span<const double> r);
std::vector<double> clamp_apply(const BlidMap& h, std::span<const double> r);

}  // namespace whext
