#pragma once

// Extension operators F : X -> Y built from a segment family, one blid per
// segment and a target map f.
//
//   family : F(x) = sum_i w_i(x) f(z_i + H_i(x - z_i))
//   single : F(x) = f(z + H(x - z))            (one segment, no weight)
//   seeley : F(u, w) = f(u, z + H(w - z))      (half-space, semi-infinite blid)
//
// H_i is the mode-applied blid (epsilon-scaled or clamped). The weight w_i is
// the minimum over grid points of the pointwise bump for bands, and the bump
// of ||x - z_i||^2 (Hilbert) or sup |x - z_i| (C(M)) for balls.

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "whext/blid.hpp"
#include "whext/geometry.hpp"
#include "whext/targets.hpp"

namespace whext {

enum class Assembly { Family, Single, Seeley };
const char* to_string(Assembly a);

struct ModeConfig {
  bool clamp = false;
  // Literal mode: epsilon = safety * min_i(margin_i / bound_i) unless given.
  double safety = 0.5;
  std::optional<double> epsilon;
  // Clamp mode.
  double theta = 0.1;
};

// Raised when the family fails non-intercept validation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Raised when the pipeline would evaluate f outside the closure of a segment.
class ContainmentError : public std::logic_error {
 public:
  ContainmentError(std::size_t segment, const std::string& what)
      : std::logic_error(what), segment_(segment) {}
  std::size_t segment() const { return segment_; }

 private:
  std::size_t segment_;
};

class ExtensionOperator {
 public:
  static ExtensionOperator family(const SegmentFamily& family, const TargetMap& target, const ModeConfig& mode);
  static ExtensionOperator single(const SegmentFamily& family, const TargetMap& target, const ModeConfig& mode);
  static ExtensionOperator seeley(const HalfSpaceSplit& half, const TargetMap& target, const ModeConfig& mode);

  Assembly assembly() const { return assembly_; }
  const Space& space() const { return space_; }
  const TargetMap& target() const { return target_; }
  std::size_t segment_count() const { return blids_.size(); }
  const BlidMap& blid(std::size_t i) const { return blids_.at(i); }
  const std::optional<SegmentFamily>& segments() const { return family_; }
  const std::optional<HalfSpaceSplit>& half_space() const { return half_; }

  double weight(std::size_t i, std::span<const double> x) const;
  std::vector<double> weights(std::span<const double> x) const;

  // f(z_i + H_i(x - z_i)); throws ContainmentError if the argument leaves
  // the segment closure.
  TargetValue build_Fi(std::size_t i, std::span<const double> x) const;

  // Dispatches on assembly().
  TargetValue extend(std::span<const double> x) const;
  TargetValue extend_family(std::span<const double> x) const;
  TargetValue extend_single(std::span<const double> x) const;
  TargetValue extend_seeley(std::span<const double> x) const;

  TargetValue extend(const GridFunction& x) const { return extend(x.values()); }
  TargetValue extend(const HVector& x) const { return extend(x.coords()); }

  // Per-coordinate box containing the closure of segment i.
  void segment_box(std::size_t i, std::vector<double>& lo, std::vector<double>& hi) const;
  // Whether x lies in segment i (strict, as in contains()).
  bool in_segment(std::size_t i, std::span<const double> x) const;

 private:
  ExtensionOperator(Assembly a, Space space, TargetMap target)
      : assembly_(a), space_(std::move(space)), target_(std::move(target)) {}

  void build_blids(const ModeConfig& mode);

  Assembly assembly_;
  Space space_;
  TargetMap target_;
  std::optional<SegmentFamily> family_;
  std::optional<HalfSpaceSplit> half_;
  std::vector<BlidMap> blids_;
};

// sample_id, weight_1..weight_n, output components.
void write_batch_csv(std::ostream& out, const ExtensionOperator& op, const std::vector<std::vector<double>>& samples);

}  // namespace whext
