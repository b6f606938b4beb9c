#include "whext/bump_kit.hpp"

#include <cmath>
#include <stdexcept>

namespace whext {

namespace {

// exp(1/s - 1/(1-s)) = g(1-s)/g(s) as an exponent; T = 1/(1+e^u).
double log_ratio(double s) { return 1.0 / s - 1.0 / (1.0 - s); }

}  // namespace

double transition(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double u = log_ratio(s);
  if (u > 0.0) {
    const double e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(u));
}

double transition_d1(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  // T' = T (1 - T) (1/s^2 + 1/(1-s)^2); T(1-T) = e^{-|u|} / (1 + e^{-|u|})^2.
  const double e = std::exp(-std::abs(log_ratio(s)));
  const double tt = e / ((1.0 + e) * (1.0 + e));
  const double q = 1.0 - s;
  return tt * (1.0 / (s * s) + 1.0 / (q * q));
}

BumpProfile::BumpProfile(double lower, double upper, double delta)
    : lower_(lower), upper_(upper), delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("BumpProfile: delta must be finite and > 0");
  if (std::isnan(lower) || std::isnan(upper)) throw std::invalid_argument("BumpProfile: NaN threshold");
  if (lower == kInf || upper == -kInf) throw std::invalid_argument("BumpProfile: inverted infinite edge");
  if (!(lower < upper)) throw std::invalid_argument("BumpProfile: lower must be < upper");
}

double bump_eval(const BumpProfile& p, double a) {
  if (p.on_plateau(a)) return 1.0;
  if (p.off_support(a)) return 0.0;
  if (a > p.upper()) return transition((p.upper() + p.delta() - a) / p.delta());
  return transition((a - p.lower() + p.delta()) / p.delta());
}

double bump_d1(const BumpProfile& p, double a) {
  if (p.on_plateau(a) || p.off_support(a)) return 0.0;
  if (a > p.upper()) return -transition_d1((p.upper() + p.delta() - a) / p.delta()) / p.delta();
  return transition_d1((a - p.lower() + p.delta()) / p.delta()) / p.delta();
}

}  // namespace whext
