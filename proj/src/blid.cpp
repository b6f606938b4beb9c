#include "whext/blid.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace whext {

namespace {

// Integral of T over [0, v] for v in [0, 1/2].
double transition_integral_half(double v) {
  if (v <= 0.0) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate([](double x) { return transition(x); }, 0.0, v, 6, 1e-13);
}

// Integral of T over [0, v], v in [0, 1]. Uses T(x) = 1 - T(1 - x) to keep
// the quadrature interval at most [0, 1/2].
double transition_integral(double v) {
  if (v <= 0.5) return transition_integral_half(v);
  return v - 0.5 + transition_integral_half(1.0 - v);
}

std::vector<double> minus(std::span<const double> a, std::span<const double> b) {
  std::vector<double> r(a.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

}  // namespace

const char* to_string(BlidKind kind) {
  switch (kind) {
    case BlidKind::Band: return "band";
    case BlidKind::Ball: return "ball";
    case BlidKind::Sup: return "sup";
    case BlidKind::Half: return "half";
  }
  return "?";
}

double transition_complement_integral(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return v - transition_integral(v);
}

double clamp_upper(double s, double hi, double theta) {
  if (s <= hi - theta) return s;
  if (s >= hi + theta) return hi;
  const double v = (s - (hi - theta)) / (2.0 * theta);
  return std::min(hi, (hi - theta) + 2.0 * theta * transition_complement_integral(v));
}

double clamp_upper_d1(double s, double hi, double theta) {
  if (s <= hi - theta) return 1.0;
  if (s >= hi + theta) return 0.0;
  return 1.0 - transition((s - (hi - theta)) / (2.0 * theta));
}

double clamp_lower(double s, double lo, double theta) { return -clamp_upper(-s, -lo, theta); }

double clamp_lower_d1(double s, double lo, double theta) { return clamp_upper_d1(-s, -lo, theta); }

BlidMap BlidMap::for_band(const Band& band, BlidMode mode) {
  BlidMap h;
  h.kind_ = BlidKind::Band;
  h.full_dim_ = band.size();
  h.index_.resize(band.size());
  std::iota(h.index_.begin(), h.index_.end(), std::size_t{0});
  for (std::size_t k = 0; k < band.size(); ++k) {
    const double z = band.anchor(k);
    h.anchor_.push_back(z);
    h.lower_.push_back(band.lower_infinite() ? -kInf : band.phi(k) - z);
    h.upper_.push_back(band.upper_infinite() ? kInf : band.psi(k) - z);
    h.phi_.push_back(band.phi(k));
    h.psi_.push_back(band.psi(k));
  }
  h.delta_ = band.delta();
  h.margin_ = band_margin(band);
  return h.with_mode(mode);
}

BlidMap BlidMap::for_ball(const Ball& ball, BlidMode mode) {
  BlidMap h;
  h.kind_ = ball.space().kind() == SpaceKind::Hilbert ? BlidKind::Ball : BlidKind::Sup;
  h.anchor_.assign(ball.center().begin(), ball.center().end());
  h.full_dim_ = h.anchor_.size();
  h.index_.resize(h.full_dim_);
  std::iota(h.index_.begin(), h.index_.end(), std::size_t{0});
  h.radius_ = ball.radius();
  h.delta_ = ball.delta();
  h.margin_ = ball.radius();
  return h.with_mode(mode);
}

BlidMap BlidMap::for_half(const HalfSpaceSplit& half, BlidMode mode) {
  BlidMap h = for_band(half.w_band(), Literal{});
  h.kind_ = BlidKind::Half;
  h.index_ = half.w_index();
  h.full_dim_ = half.mask().size();
  return h.with_mode(mode);
}

BlidMap BlidMap::with_mode(BlidMode mode) const {
  if (const auto* lit = std::get_if<Literal>(&mode)) {
    if (!(lit->epsilon > 0.0) || !std::isfinite(lit->epsilon))
      throw std::invalid_argument("blid: epsilon must be finite and > 0");
  } else {
    const double theta = std::get<Clamp>(mode).theta;
    if (!(theta > 0.0) || !(theta < margin_))
      throw std::invalid_argument("blid: clamp theta = " + format_real(theta) +
                                  " must lie in (0, margin) with segment margin " + format_real(margin_));
  }
  BlidMap h = *this;
  h.mode_ = mode;
  return h;
}

double BlidMap::epsilon() const {
  const auto* lit = std::get_if<Literal>(&mode_);
  return lit ? lit->epsilon : 1.0;
}

double BlidMap::theta() const {
  const auto* c = std::get_if<Clamp>(&mode_);
  return c ? c->theta : 0.0;
}

BumpProfile BlidMap::profile(std::size_t k) const { return BumpProfile(lower_.at(k), upper_.at(k), delta_); }

BumpProfile BlidMap::radial_profile() const {
  if (kind_ == BlidKind::Ball) {
    const double a2 = radius_ * radius_;
    const double out = (radius_ + delta_) * (radius_ + delta_);
    return BumpProfile(0.0, a2, out - a2);
  }
  return BumpProfile(0.0, radius_, delta_);
}

double BlidMap::norm(std::span<const double> r) const {
  return kind_ == BlidKind::Ball ? h_norm(r) : sup_norm(r);
}

namespace {

// Factor multiplying r in eps * H(r / eps).
double pointwise_factor(const BumpProfile& p, double r, double eps) { return bump_eval(p, r / eps); }

double radial_factor(const BlidMap& h, double rho, double eps) {
  const double s = rho / eps;
  return bump_eval(h.radial_profile(), h.kind() == BlidKind::Ball ? s * s : s);
}

// Clamp mode on balls: a bump with plateau a - theta that reaches zero at the
// sphere ||r|| = a (squared variable for the Euclidean norm).
double collar_factor(const BlidMap& h, double rho, double theta) {
  const double inner = h.radius() - theta;
  if (h.kind() == BlidKind::Ball) {
    const double i2 = inner * inner;
    return bump_eval(BumpProfile(0.0, i2, h.radius() * h.radius() - i2), rho * rho);
  }
  return bump_eval(BumpProfile(0.0, inner, theta), rho);
}

double clamp_pointwise(double s, double lo, double hi, double theta) {
  if (s > hi - theta) return clamp_upper(s, hi, theta);
  if (s < lo + theta) return clamp_lower(s, lo, theta);
  return s;
}

}  // namespace

std::vector<double> BlidMap::raw(std::span<const double> r) const { return evaluate(r, Literal{1.0}); }

std::vector<double> BlidMap::apply(std::span<const double> r) const { return evaluate(r, mode_); }

std::vector<double> BlidMap::evaluate(std::span<const double> r, const BlidMode& mode) const {
  if (r.size() != dim()) throw std::invalid_argument("blid apply: shape mismatch");
  std::vector<double> out(r.begin(), r.end());
  const bool radial = kind_ == BlidKind::Ball || kind_ == BlidKind::Sup;
  if (const auto* lit = std::get_if<Literal>(&mode)) {
    if (radial) {
      const double f = radial_factor(*this, norm(r), lit->epsilon);
      for (double& v : out) v *= f;
    } else {
      for (std::size_t k = 0; k < out.size(); ++k) out[k] *= pointwise_factor(profile(k), r[k], lit->epsilon);
    }
    return out;
  }
  const double theta = std::get<Clamp>(mode).theta;
  if (radial) {
    const double f = collar_factor(*this, norm(r), theta);
    if (f != 1.0)
      for (double& v : out) v *= f;
  } else {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = clamp_pointwise(r[k], lower_[k], upper_[k], theta);
  }
  return out;
}

std::vector<double> BlidMap::apply_at(std::span<const double> x) const {
  if (x.size() != full_dim_) throw std::invalid_argument("blid apply_at: shape mismatch");
  std::vector<double> y(x.begin(), x.end());
  std::vector<double> r(dim());
  for (std::size_t k = 0; k < dim(); ++k) r[k] = x[index_[k]] - anchor_[k];
  const bool radial = kind_ == BlidKind::Ball || kind_ == BlidKind::Sup;

  if (const auto* lit = std::get_if<Literal>(&mode_)) {
    if (radial) {
      const double f = radial_factor(*this, norm(r), lit->epsilon);
      if (f != 1.0)
        for (std::size_t k = 0; k < dim(); ++k) y[index_[k]] = anchor_[k] + f * r[k];
    } else {
      for (std::size_t k = 0; k < dim(); ++k) {
        const double f = pointwise_factor(profile(k), r[k], lit->epsilon);
        if (f != 1.0) y[index_[k]] = anchor_[k] + f * r[k];
      }
    }
    return y;
  }

  const double theta = std::get<Clamp>(mode_).theta;
  if (radial) {
    const double f = collar_factor(*this, norm(r), theta);
    if (f != 1.0)
      for (std::size_t k = 0; k < dim(); ++k) y[index_[k]] = anchor_[k] + f * r[k];
    return y;
  }
  for (std::size_t k = 0; k < dim(); ++k) {
    const double s = r[k];
    const double lo = lower_[k], hi = upper_[k];
    const double phi = phi_[k], psi = psi_[k];
    double& out = y[index_[k]];
    if (s >= hi + theta) {
      out = psi;
    } else if (s <= lo - theta) {
      out = phi;
    } else if (s > hi - theta || s < lo + theta) {
      out = std::clamp(anchor_[k] + clamp_pointwise(s, lo, hi, theta), phi, psi);
    }
  }
  return y;
}

bool BlidMap::in_identity_region(std::span<const double> r) const {
  if (r.size() != dim()) throw std::invalid_argument("blid: shape mismatch");
  const bool radial = kind_ == BlidKind::Ball || kind_ == BlidKind::Sup;
  if (const auto* lit = std::get_if<Literal>(&mode_)) {
    if (radial) return norm(r) / lit->epsilon <= radius_;
    for (std::size_t k = 0; k < dim(); ++k) {
      const double s = r[k] / lit->epsilon;
      if (!(lower_[k] <= s && s <= upper_[k])) return false;
    }
    return true;
  }
  const double theta = std::get<Clamp>(mode_).theta;
  if (radial) return norm(r) <= radius_ - theta;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!(lower_[k] + theta <= r[k] && r[k] <= upper_[k] - theta)) return false;
  }
  return true;
}

bool BlidMap::contained(std::span<const double> y) const {
  if (y.size() != full_dim_) throw std::invalid_argument("blid contained: shape mismatch");
  const bool closed = is_clamp();
  if (kind_ == BlidKind::Ball || kind_ == BlidKind::Sup) {
    const auto r = minus(y, anchor_);
    const double rho = norm(r);
    if (!closed) return rho < radius_;
    // Norm evaluation of z + f r carries a few ulps of rounding.
    const double slack = 64.0 * DBL_EPSILON * (sup_norm(anchor_) + radius_);
    return rho <= radius_ + slack;
  }
  for (std::size_t k = 0; k < dim(); ++k) {
    const double v = y[index_[k]];
    const double phi = phi_[k], psi = psi_[k];
    if (closed ? !(phi <= v && v <= psi) : !(phi < v && v < psi)) return false;
  }
  return true;
}

BlidBound BlidMap::bound() const {
  if (kind_ == BlidKind::Ball || kind_ == BlidKind::Sup) {
    const double b = radius_ + delta_;
    return {b, b};
  }
  BlidBound b{0.0, 0.0};
  for (std::size_t k = 0; k < dim(); ++k) {
    if (std::isfinite(lower_[k])) b.finite_side = std::max(b.finite_side, std::abs(lower_[k] - delta_));
    else b.lower_unbounded = true;
    if (std::isfinite(upper_[k])) b.finite_side = std::max(b.finite_side, std::abs(upper_[k] + delta_));
    else b.upper_unbounded = true;
  }
  b.value = (b.lower_unbounded || b.upper_unbounded) ? kInf : b.finite_side;
  return b;
}

BlidBound BlidMap::applied_bound() const {
  BlidBound b = bound();
  if (const auto* lit = std::get_if<Literal>(&mode_)) {
    b.finite_side *= lit->epsilon;
    if (std::isfinite(b.value)) b.value *= lit->epsilon;
    return b;
  }
  if (kind_ == BlidKind::Ball || kind_ == BlidKind::Sup) {
    b.value = b.finite_side = radius_;
    return b;
  }
  b.finite_side = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (std::isfinite(lower_[k])) b.finite_side = std::max(b.finite_side, std::abs(lower_[k]));
    if (std::isfinite(upper_[k])) b.finite_side = std::max(b.finite_side, std::abs(upper_[k]));
  }
  b.value = (b.lower_unbounded || b.upper_unbounded) ? kInf : b.finite_side;
  return b;
}

double BlidMap::extent(std::span<const double> out) const {
  if (kind_ == BlidKind::Ball || kind_ == BlidKind::Sup) return norm(out);
  double e = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const bool lo = std::isfinite(lower_[k]), hi = std::isfinite(upper_[k]);
    if (lo && hi) e = std::max(e, std::abs(out[k]));
    else if (hi) e = std::max(e, out[k]);
    else if (lo) e = std::max(e, -out[k]);
  }
  return e;
}

double epsilon_for(const BlidMap& h, double safety) {
  if (!(safety > 0.0 && safety < 1.0)) throw std::invalid_argument("epsilon_for: safety must lie in (0, 1)");
  const double margin = h.margin();
  if (!(margin > 0.0)) throw std::invalid_argument("epsilon_for: segment margin must be > 0");
  const BlidBound b = h.bound();
  // No finite side: every epsilon keeps the image inside.
  if (!std::isfinite(margin)) return 1.0;
  return safety * margin / b.finite_side;
}

namespace {

void require_kind(const BlidMap& h, std::initializer_list<BlidKind> kinds, const char* what) {
  for (auto k : kinds)
    if (h.kind() == k) return;
  throw std::invalid_argument(std::string(what) + ": wrong blid kind " + to_string(h.kind()));
}

}  // namespace

std::vector<double> band_blid_apply(const BlidMap& h, std::span<const double> r) {
  require_kind(h, {BlidKind::Band, BlidKind::Half}, "band_blid_apply");
  return h.raw(r);
}

std::vector<double> ball_blid_apply(const BlidMap& h, std::span<const double> r) {
  require_kind(h, {BlidKind::Ball}, "ball_blid_apply");
  return h.raw(r);
}

std::vector<double> sup_blid_apply(const BlidMap& h, std::span<const double> r) {
  require_kind(h, {BlidKind::Sup}, "sup_blid_apply");
  return h.raw(r);
}

std::vector<double> scaled_apply(const BlidMap& h, std::span<const double> r) {
  if (h.is_clamp()) throw std::invalid_argument("scaled_apply: blid is in clamp mode");
  return h.apply(r);
}

std::vector<double> clamp_apply(const BlidMap& h, std::span<const double> r) {
  if (!h.is_clamp()) throw std::invalid_argument("clamp_apply: blid is not in clamp mode");
  return h.apply(r);
}

}  // namespace whext
