#pragma once

// Scenario configuration and the validate / extend / check / plotdata
// commands behind the CLI.
//
// Config grammar (one `key = value` per line, `#` starts a comment):
//
//   space = c01 | cm | hilbert       n = <int>   labels = <t0>,<t1>,...
//   assembly = family | single | seeley
//   mode = literal | clamp           safety, theta, epsilon = <real>
//   target = quad_integral | point_eval | pointwise_sin | linear_functional | quad_norm
//   target_t0 = <real>               target_weight = <field>
//   seed, samples, q_check = <int>   steps = <h1>,<h2>,...
//   path_origin, path_direction = <field>
//   path_range = <s0>,<s1>           path_points = <int>
//
//   [segment]
//   type = band | ball | half
//   phi, psi, anchor, center = <field>
//   radius, delta = <real>
//   mask = all | samples:<0|1>,... | range:<t0>,<t1>
//
// <field> is const:v, affine:a,b (a*t + b), samples:v0,v1,..., inf or -inf.
// On a Hilbert space t is the coordinate index.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "whext/extension.hpp"
#include "whext/scalar_oracle.hpp"
#include "whext/verify.hpp"

namespace whext {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldSpec {
  enum class Form { Const, Affine, Samples, PosInf, NegInf };
  Form form = Form::Const;
  std::vector<double> values{0.0};

  static FieldSpec constant(double v) { return {Form::Const, {v}}; }
  static FieldSpec parse(const std::string& text);
  std::string str() const;
  bool infinite() const { return form == Form::PosInf || form == Form::NegInf; }
  // Values at the points t (throws ConfigError on a length mismatch).
  std::vector<double> at(const std::vector<double>& t) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct MaskSpec {
  enum class Form { All, Samples, Range };
  Form form = Form::All;
  std::vector<double> values;

  static MaskSpec parse(const std::string& text);
  std::string str() const;
  std::vector<bool> at(const std::vector<double>& t) const;

  friend bool operator==(const MaskSpec&, const MaskSpec&) = default;
};

struct SegmentSpec {
  enum class Type { Band, Ball, Half };
  Type type = Type::Band;
  FieldSpec phi{FieldSpec::Form::NegInf, {}};
  FieldSpec psi{FieldSpec::Form::PosInf, {}};
  std::optional<FieldSpec> anchor;
  FieldSpec center = FieldSpec::constant(0.0);
  double radius = 1.0;
  double delta = 0.1;
  MaskSpec mask;

  friend bool operator==(const SegmentSpec&, const SegmentSpec&) = default;
};

struct Scenario {
  SpaceKind space = SpaceKind::Interval;
  std::size_t n = 101;
  std::vector<double> labels;
  Assembly assembly = Assembly::Family;
  bool clamp = false;
  double safety = 0.5;
  double theta = 0.1;
  std::optional<double> epsilon;
  TargetId target = TargetId::QuadIntegral;
  double target_t0 = 0.5;
  FieldSpec target_weight = FieldSpec::constant(1.0);
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  int q_check = 2;
  std::vector<double> steps{1e-3, 1e-4, 1e-5};
  std::optional<FieldSpec> path_origin, path_direction;
  double path_s0 = -1.0, path_s1 = 1.0;
  std::size_t path_points = 201;
  std::vector<SegmentSpec> segments;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string emit_scenario(const Scenario& sc);

// Model space, grid points (coordinate indices on Hilbert) and built objects.
Space scenario_space(const Scenario& sc);
std::vector<double> scenario_points(const Scenario& sc);
SegmentFamily build_family(const Scenario& sc);
TargetMap build_target(const Scenario& sc);
ModeConfig build_mode(const Scenario& sc);
ProbeConfig build_probe(const Scenario& sc);
ExtensionOperator build_extension(const Scenario& sc);
// Scalar scenario when the configuration lives on a single point.
std::optional<Scenario1D> as_1d(const Scenario& sc);
CheckReport oracle_check(const Scenario1D& sc, std::size_t samples, std::uint64_t seed);

struct RunOptions {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::string> mode;  // literal | clamp
  std::optional<std::string> input;  // extend: CSV with one sample per row
};

struct RunOutput {
  int exit_code = 0;  // 0 ok, 1 check / validation failure, 2 config error
  std::string summary;
  std::vector<std::string> files;
  std::vector<CheckReport> reports;
};

RunOutput cmd_validate(const RunOptions& opt);
RunOutput cmd_extend(const RunOptions& opt);
RunOutput cmd_check(const RunOptions& opt);
RunOutput cmd_plotdata(const RunOptions& opt);

}  // namespace whext
