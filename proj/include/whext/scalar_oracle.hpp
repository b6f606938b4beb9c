#pragma once

// One-dimensional reference implementation of the extension pipeline. It
// shares no code with the library: the transition uses the exp-ratio form,
// the clamp integral a composite Gauss-Legendre rule, and epsilon is
// recomputed from the scalar geometry.

#include <cstdint>
#include <string>
#include <vector>

#include "whext/extension.hpp"

namespace whext {

struct Scenario1D {
  enum class Geometry { Bands, Balls, Half };
  struct Segment {
    double lo, hi;  // sides; a ball is (center - a, center + a)
    double anchor;  // z (the centre for balls)
    double delta;
  };

  std::string name;
  Geometry geometry = Geometry::Bands;
  std::vector<Segment> segments;  // Half: one segment with lo = -inf, hi = 0
  Assembly assembly = Assembly::Family;
  bool clamp = false;
  double theta = 0.1;
  double safety = 0.5;
  TargetId target = TargetId::PointEval;
  double range = 5.0;
};

struct OracleResult {
  std::size_t samples = 0;
  double max_weight_diff = 0.0;
  double max_output_diff = 0.0;
  double witness = 0.0;  // x of the largest output difference
};

std::vector<Scenario1D> shipped_1d_scenarios();

// The library operator for a scenario (N = 1 grid or 1-D Hilbert space).
ExtensionOperator build_operator(const Scenario1D& sc);

namespace scalar_ref {
double transition(double s);
double bump(double lower, double upper, double delta, double a);
// integral of 1 - T over [0, v]
double complement_integral(double v);
double epsilon(const Scenario1D& sc);
double weight(const Scenario1D& sc, std::size_t i, double x);
double extend(const Scenario1D& sc, double x);
}  // namespace scalar_ref

// Library vs reference on `samples` seeded points in [-range, range] plus the
// segment sides, anchors and transition edges.
OracleResult oracle_1d(const Scenario1D& sc, std::size_t samples, std::uint64_t seed);

}  // namespace whext
