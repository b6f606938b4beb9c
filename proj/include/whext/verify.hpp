#pragma once

// Numerical verification of the extension constructions: finite-difference
// derivative estimates, restriction and containment checks, boundedness
// scans and seam probes. Every check is driven by a seeded generator and is
// reproducible from the seed recorded in its report.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "whext/extension.hpp"

namespace whext {

struct ProbeConfig {
  int q_check = 2;
  // Step ladder for seam probes and Richardson slopes (decreasing).
  std::vector<double> steps{1e-3, 1e-4, 1e-5};
  double deriv_step = 1e-4;   // order-1 estimates
  double deriv2_step = 1e-3;  // order-2 estimates
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::vector<double> radii{1.0, 10.0, 100.0, 1000.0};
  std::size_t paths = 20;
  std::size_t path_points = 401;

  double restriction_tol = 1e-12;
  double bound_tol = 1e-12;
  double value_tol = 1e-9;
  double far_field_tol = 1e-8;
  double seam_c1_tol = 1e-4;
  // sup_path ||D(h_min)|| <= blowup_factor * sup_path ||D(h_max)|| + floor
  double blowup_factor = 2.0;
};

void validate(const ProbeConfig& cfg);

struct DerivEstimate {
  int order;
  TargetValue value;
  double h;
  // Observed convergence order from D(h), D(h/2), D(h/4); NaN when the
  // differences are at rounding level (e.g. polynomial maps).
  double richardson_slope;
};

using Evaluator = std::function<TargetValue(std::span<const double>)>;

// order 1: (F(x+hd) - F(x-hd)) / 2h; order 2: (F(x+hd) - 2F(x) + F(x-hd)) / h^2
TargetValue central_difference(const Evaluator& f, std::span<const double> x, std::span<const double> d, int order,
                               double h);
DerivEstimate dir_deriv(const Evaluator& f, std::span<const double> x, std::span<const double> d, int order, double h);

enum class Severity { Required, Informational };

struct CheckReport {
  std::string id;
  bool pass = true;
  Severity severity = Severity::Required;
  double worst_error = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> witness;
  std::string detail;
};

// Draws inputs relative to an operator's geometry.
class Sampler {
 public:
  Sampler(const ExtensionOperator& op, std::uint64_t seed);

  double uniform(double a, double b);
  std::mt19937_64& rng() { return rng_; }

  // x in the identity core of segment i: z_i + (identity region of H_i).
  std::vector<double> core(std::size_t i);
  // x in the open segment V_i (may lie outside the core).
  std::vector<double> segment(std::size_t i);
  // x with every extended coordinate at distance in [R/2, R] from the
  // origin, on the side where all segments are bounded.
  std::vector<double> shell(double radius);
  // x in the box hull of all enlarged supports, widened by one unit.
  std::vector<double> hull();
  // Unit direction in the space norm; zero on U coordinates of a half-space.
  std::vector<double> direction();

  // r in the identity region of a blid.
  std::vector<double> identity_r(const BlidMap& h);
  // r with ||r|| <= extent, half radial (uniform radius along a random
  // direction), half per-coordinate uniform.
  std::vector<double> wide_r(const BlidMap& h, double extent);

 private:
  const ExtensionOperator& op_;
  std::mt19937_64 rng_;
};

// Largest |x| reached by any enlarged support / clamp collar.
double support_radius(const ExtensionOperator& op);
// Whether every coordinate has a side on which all segments are bounded.
bool far_field_exhaustible(const ExtensionOperator& op);
// sup over the segment closures of ||f|| (0 included for families).
double closure_sup_bound(const ExtensionOperator& op);

// Identity on the declared identity region and compliance with the applied
// bound. The id names the blid kind and mode.
CheckReport blid_law_check(const BlidMap& h, std::size_t identity_samples, std::size_t bound_samples,
                           std::uint64_t seed);
// z_i + H_i(r) strictly inside finite sides (Literal) / inside the closure
// (Clamp) for r up to 10 times the raw blid bound.
CheckReport containment_check(const ExtensionOperator& op, std::size_t samples, std::uint64_t seed);
// extend == f on the identity cores.
CheckReport restriction_check(const ExtensionOperator& op, const ProbeConfig& cfg);
// Mismatch of extend vs f on V_i outside the core; informational.
CheckReport restriction_gap_probe(const ExtensionOperator& op, const ProbeConfig& cfg);
// <= 1 nonzero weight; exact 1 / 0 weights on the segments.
CheckReport weight_partition_check(const ExtensionOperator& op, std::size_t samples, std::uint64_t seed);
// Sup of ||F|| and of order <= q_check directional derivatives over shells.
CheckReport bounded_scan(const ExtensionOperator& op, const ProbeConfig& cfg);
// Jump, h-stability and C^1 seam checks along random paths through the
// segments.
std::vector<CheckReport> seam_probe(const ExtensionOperator& op, const ProbeConfig& cfg);
// Central differences vs the closed-form derivative on 100 seeded (x, d).
CheckReport derivative_oracle_check(const TargetMap& f, std::size_t samples, std::uint64_t seed);

// All operator-level checks in a fixed order.
std::vector<CheckReport> run_checks(const ExtensionOperator& op, const ProbeConfig& cfg);

bool required_checks_pass(const std::vector<CheckReport>& reports);
// check,pass,worst_error,seed,witness...
void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports);
std::string summary_text(const std::vector<CheckReport>& reports);

}  // namespace whext
