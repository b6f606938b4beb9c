#pragma once

// C-infinity transition and bump functions.
//
// The transition is T(s) = g(s) / (g(s) + g(1-s)) with g(s) = exp(-1/s) for
// s > 0 and 0 otherwise. T is exactly 0 for s <= 0 and exactly 1 for s >= 1,
// so plateaus and supports are exact in floating point.

#include <limits>

namespace whext {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

double transition(double s);
double transition_d1(double s);

// Bump with plateau [lower, upper] and transition width delta on each side.
// lower = -inf / upper = +inf turn that side into a constant 1.
class BumpProfile {
 public:
  BumpProfile(double lower, double upper, double delta);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double delta() const { return delta_; }
  bool lower_infinite() const { return lower_ == -kInf; }
  bool upper_infinite() const { return upper_ == kInf; }

  bool on_plateau(double a) const { return lower_ <= a && a <= upper_; }
  // Outside the closed support [lower - delta, upper + delta].
  bool off_support(double a) const { return a <= lower_ - delta_ || a >= upper_ + delta_; }

 private:
  double lower_, upper_, delta_;
};

double bump_eval(const BumpProfile& p, double a);
double bump_d1(const BumpProfile& p, double a);

}  // namespace whext
