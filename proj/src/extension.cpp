#include "whext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace whext {

namespace {

std::string describe(const ValidationReport& report) {
  if (report.ok()) return "segment family is valid";
  const auto& v = report.violations.front();
  std::string s = "segments " + std::to_string(v.i + 1) + " and " + std::to_string(v.j + 1) + ": " + v.reason;
  if (!std::isnan(v.witness_t)) s += " at t = " + format_real(v.witness_t);
  if (report.violations.size() > 1) s += " (+" + std::to_string(report.violations.size() - 1) + " more)";
  return s;
}

}  // namespace

const char* to_string(Assembly a) {
  switch (a) {
    case Assembly::Family: return "family";
    case Assembly::Single: return "single";
    case Assembly::Seeley: return "seeley";
  }
  return "?";
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(describe(report)), report_(std::move(report)) {}

ExtensionOperator ExtensionOperator::family(const SegmentFamily& family, const TargetMap& target,
                                            const ModeConfig& mode) {
  if (auto report = validate(family); !report.ok()) throw ValidationError(std::move(report));
  if (target.space().dim() != family.space().dim())
    throw std::invalid_argument("extension: target and segments live in different spaces");
  ExtensionOperator op(Assembly::Family, family.space(), target);
  op.family_ = family;
  op.build_blids(mode);
  return op;
}

ExtensionOperator ExtensionOperator::single(const SegmentFamily& family, const TargetMap& target,
                                            const ModeConfig& mode) {
  if (family.size() != 1) throw std::invalid_argument("extend_single needs exactly one segment");
  ExtensionOperator op = ExtensionOperator::family(family, target, mode);
  op.assembly_ = Assembly::Single;
  return op;
}

ExtensionOperator ExtensionOperator::seeley(const HalfSpaceSplit& half, const TargetMap& target,
                                            const ModeConfig& mode) {
  if (!target.space().has_grid() || !same_grid(*target.space().grid(), *half.grid()))
    throw std::invalid_argument("extend_seeley: target must live on the half-space grid");
  ExtensionOperator op(Assembly::Seeley, target.space(), target);
  op.half_ = half;
  op.build_blids(mode);
  return op;
}

void ExtensionOperator::build_blids(const ModeConfig& mode) {
  std::vector<BlidMap> raw;
  if (half_) {
    raw.push_back(BlidMap::for_half(*half_));
  } else if (family_->kind() == SegmentFamily::Kind::Band) {
    for (const auto& b : family_->bands()) raw.push_back(BlidMap::for_band(b));
  } else {
    for (const auto& b : family_->balls()) raw.push_back(BlidMap::for_ball(b));
  }
  if (mode.clamp) {
    for (auto& h : raw) blids_.push_back(h.with_mode(Clamp{mode.theta}));
    return;
  }
  // One epsilon shared by every segment.
  double eps = kInf;
  if (mode.epsilon) {
    eps = *mode.epsilon;
  } else {
    for (const auto& h : raw) eps = std::min(eps, epsilon_for(h, mode.safety));
  }
  for (auto& h : raw) blids_.push_back(h.with_mode(Literal{eps}));
}

double ExtensionOperator::weight(std::size_t i, std::span<const double> x) const {
  space_.check(x, "weight");
  if (i >= blids_.size()) throw std::out_of_range("weight: segment index out of range");
  if (half_) {
    double w = 1.0;
    for (auto k : half_->w_index()) {
      w = std::min(w, bump_eval(BumpProfile(-kInf, 0.0, half_->delta()), x[k]));
      if (w == 0.0) break;
    }
    return w;
  }
  if (family_->kind() == SegmentFamily::Kind::Band) {
    const Band& b = family_->bands()[i];
    double w = 1.0;
    for (std::size_t k = 0; k < x.size() && w > 0.0; ++k) {
      w = std::min(w, bump_eval(BumpProfile(b.phi(k), b.psi(k), b.delta()), x[k]));
    }
    return w;
  }
  const Ball& ball = family_->balls()[i];
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = x[k] - ball.center()[k];
  const BumpProfile p = blids_[i].radial_profile();
  if (space_.kind() == SpaceKind::Hilbert) {
    const double rho = h_norm(r);
    return bump_eval(p, rho * rho);
  }
  return bump_eval(p, sup_norm(r));
}

std::vector<double> ExtensionOperator::weights(std::span<const double> x) const {
  std::vector<double> w(blids_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight(i, x);
  return w;
}

TargetValue ExtensionOperator::build_Fi(std::size_t i, std::span<const double> x) const {
  space_.check(x, "build_Fi");
  const BlidMap& h = blids_.at(i);
  const auto y = h.apply_at(x);
  if (!h.contained(y)) {
    throw ContainmentError(i, "segment " + std::to_string(i + 1) +
                                  ": blid image left the segment closure; target evaluated outside its domain");
  }
  return target_.eval(y);
}

TargetValue ExtensionOperator::extend(std::span<const double> x) const {
  switch (assembly_) {
    case Assembly::Family: return extend_family(x);
    case Assembly::Single: return extend_single(x);
    case Assembly::Seeley: return extend_seeley(x);
  }
  throw std::logic_error("unknown assembly");
}

TargetValue ExtensionOperator::extend_family(std::span<const double> x) const {
  TargetValue sum = target_.zero();
  for (std::size_t i = 0; i < blids_.size(); ++i) {
    const double w = weight(i, x);
    if (w == 0.0) continue;
    sum = sum.plus(w, build_Fi(i, x));
  }
  return sum;
}

TargetValue ExtensionOperator::extend_single(std::span<const double> x) const {
  if (blids_.size() != 1) throw std::logic_error("extend_single: operator has more than one segment");
  return build_Fi(0, x);
}

TargetValue ExtensionOperator::extend_seeley(std::span<const double> x) const {
  if (!half_) throw std::logic_error("extend_seeley: operator has no half-space split");
  if (x.size() != half_->mask().size()) throw std::invalid_argument("extend_seeley: mask mismatch");
  // U coordinates pass through apply_at untouched.
  return build_Fi(0, x);
}

void ExtensionOperator::segment_box(std::size_t i, std::vector<double>& lo, std::vector<double>& hi) const {
  const std::size_t n = space_.dim();
  lo.assign(n, -kInf);
  hi.assign(n, kInf);
  if (half_) {
    for (auto k : half_->w_index()) hi[k] = 0.0;
    return;
  }
  if (family_->kind() == SegmentFamily::Kind::Band) {
    const Band& b = family_->bands().at(i);
    for (std::size_t k = 0; k < n; ++k) lo[k] = b.phi(k), hi[k] = b.psi(k);
    return;
  }
  const Ball& b = family_->balls().at(i);
  for (std::size_t k = 0; k < n; ++k) lo[k] = b.center()[k] - b.radius(), hi[k] = b.center()[k] + b.radius();
}

bool ExtensionOperator::in_segment(std::size_t i, std::span<const double> x) const {
  if (half_) return contains(*half_, x) == Membership::Inside;
  if (family_->kind() == SegmentFamily::Kind::Band) return contains(family_->bands().at(i), x) == Membership::Inside;
  return contains(family_->balls().at(i), x) == Membership::Inside;
}

void write_batch_csv(std::ostream& out, const ExtensionOperator& op, const std::vector<std::vector<double>>& samples) {
  const std::size_t m = op.target().zero().size();
  out << "sample_id";
  for (std::size_t i = 0; i < op.segment_count(); ++i) out << ",weight_" << i + 1;
  if (op.target().zero().kind() == TargetValue::Kind::Scalar) {
    out << ",out";
  } else {
    for (std::size_t c = 0; c < m; ++c) out << ",out_" << c + 1;
  }
  out << '\n';
  for (std::size_t s = 0; s < samples.size(); ++s) {
    out << s;
    for (double w : op.weights(samples[s])) out << ',' << format_real(w);
    const auto value = op.extend(samples[s]);
    for (double v : value.components()) out << ',' << format_real(v);
    out << '\n';
  }
}

}  // namespace whext
