#include "whext/app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace whext {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && t[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) throw ConfigError("expected a real number, got '" + t + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw ConfigError("expected a comma-separated list of reals");
  return out;
}

std::uint64_t parse_count(const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("expected a non-negative integer, got '" + t + "'");
  return v;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + format_real(v[k]);
  return s;
}

const char* assembly_name(Assembly a) { return to_string(a); }

}  // namespace

// ---------------------------------------------------------------- fields

FieldSpec FieldSpec::parse(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return {Form::PosInf, {}};
  if (t == "-inf") return {Form::NegInf, {}};
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw ConfigError("expected const:, affine:, samples:, inf or -inf, got '" + t + "'");
  const std::string kind = t.substr(0, colon), rest = t.substr(colon + 1);
  if (kind == "const") return {Form::Const, {parse_real(rest)}};
  if (kind == "affine") {
    auto v = parse_reals(rest);
    if (v.size() != 2) throw ConfigError("affine: needs exactly two numbers a,b");
    return {Form::Affine, v};
  }
  if (kind == "samples") return {Form::Samples, parse_reals(rest)};
  throw ConfigError("unknown field form '" + kind + "'");
}

std::string FieldSpec::str() const {
  switch (form) {
    case Form::Const: return "const:" + format_real(values.at(0));
    case Form::Affine: return "affine:" + join(values);
    case Form::Samples: return "samples:" + join(values);
    case Form::PosInf: return "inf";
    case Form::NegInf: return "-inf";
  }
  return "";
}

std::vector<double> FieldSpec::at(const std::vector<double>& t) const {
  std::vector<double> v(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    switch (form) {
      case Form::Const: v[k] = values.at(0); break;
      case Form::Affine: v[k] = values.at(0) * t[k] + values.at(1); break;
      case Form::Samples:
        if (values.size() != t.size())
          throw ConfigError("samples: got " + std::to_string(values.size()) + " values for " +
                            std::to_string(t.size()) + " grid points");
        v[k] = values[k];
        break;
      case Form::PosInf: v[k] = kInf; break;
      case Form::NegInf: v[k] = -kInf; break;
    }
  }
  return v;
}

MaskSpec MaskSpec::parse(const std::string& text) {
  const std::string t = trim(text);
  if (t == "all") return {Form::All, {}};
  const auto colon = t.find(':');
  const std::string kind = colon == std::string::npos ? t : t.substr(0, colon);
  if (kind == "samples") return {Form::Samples, parse_reals(t.substr(colon + 1))};
  if (kind == "range") {
    auto v = parse_reals(t.substr(colon + 1));
    if (v.size() != 2) throw ConfigError("range: needs exactly two numbers");
    return {Form::Range, v};
  }
  throw ConfigError("mask must be all, samples:... or range:a,b, got '" + t + "'");
}

std::string MaskSpec::str() const {
  switch (form) {
    case Form::All: return "all";
    case Form::Samples: return "samples:" + join(values);
    case Form::Range: return "range:" + join(values);
  }
  return "";
}

std::vector<bool> MaskSpec::at(const std::vector<double>& t) const {
  std::vector<bool> m(t.size(), true);
  if (form == Form::Samples) {
    if (values.size() != t.size()) throw ConfigError("mask samples: length does not match the grid");
    for (std::size_t k = 0; k < t.size(); ++k) m[k] = values[k] != 0.0;
  } else if (form == Form::Range) {
    for (std::size_t k = 0; k < t.size(); ++k) m[k] = values[0] <= t[k] && t[k] <= values[1];
  }
  return m;
}

// ---------------------------------------------------------------- parsing

namespace {

void set_global(Scenario& sc, const std::string& key, const std::string& value) {
  if (key == "space") {
    if (value == "c01") sc.space = SpaceKind::Interval;
    else if (value == "cm") sc.space = SpaceKind::Compact;
    else if (value == "hilbert") sc.space = SpaceKind::Hilbert;
    else throw ConfigError("expected c01, cm or hilbert");
  } else if (key == "n") {
    sc.n = parse_count(value);
  } else if (key == "labels") {
    sc.labels = parse_reals(value);
  } else if (key == "assembly") {
    if (value == "family") sc.assembly = Assembly::Family;
    else if (value == "single") sc.assembly = Assembly::Single;
    else if (value == "seeley") sc.assembly = Assembly::Seeley;
    else throw ConfigError("expected family, single or seeley");
  } else if (key == "mode") {
    if (value != "literal" && value != "clamp") throw ConfigError("expected literal or clamp");
    sc.clamp = value == "clamp";
  } else if (key == "safety") {
    sc.safety = parse_real(value);
  } else if (key == "theta") {
    sc.theta = parse_real(value);
  } else if (key == "epsilon") {
    sc.epsilon = parse_real(value);
  } else if (key == "target") {
    auto id = target_from_string(value);
    if (!id) throw ConfigError("unknown target '" + value + "'");
    sc.target = *id;
  } else if (key == "target_t0") {
    sc.target_t0 = parse_real(value);
  } else if (key == "target_weight") {
    sc.target_weight = FieldSpec::parse(value);
  } else if (key == "seed") {
    sc.seed = parse_count(value);
  } else if (key == "samples") {
    sc.samples = parse_count(value);
  } else if (key == "q_check") {
    sc.q_check = static_cast<int>(parse_count(value));
  } else if (key == "steps") {
    sc.steps = parse_reals(value);
  } else if (key == "path_origin") {
    sc.path_origin = FieldSpec::parse(value);
  } else if (key == "path_direction") {
    sc.path_direction = FieldSpec::parse(value);
  } else if (key == "path_range") {
    auto v = parse_reals(value);
    if (v.size() != 2) throw ConfigError("expected s0,s1");
    sc.path_s0 = v[0], sc.path_s1 = v[1];
  } else if (key == "path_points") {
    sc.path_points = parse_count(value);
  } else {
    throw ConfigError("unknown key");
  }
}

void set_segment(SegmentSpec& seg, const std::string& key, const std::string& value) {
  if (key == "type") {
    if (value == "band") seg.type = SegmentSpec::Type::Band;
    else if (value == "ball") seg.type = SegmentSpec::Type::Ball;
    else if (value == "half") seg.type = SegmentSpec::Type::Half;
    else throw ConfigError("expected band, ball or half");
  } else if (key == "phi") {
    seg.phi = FieldSpec::parse(value);
  } else if (key == "psi") {
    seg.psi = FieldSpec::parse(value);
  } else if (key == "anchor") {
    seg.anchor = FieldSpec::parse(value);
  } else if (key == "center") {
    seg.center = FieldSpec::parse(value);
  } else if (key == "radius") {
    seg.radius = parse_real(value);
  } else if (key == "delta") {
    seg.delta = parse_real(value);
  } else if (key == "mask") {
    seg.mask = MaskSpec::parse(value);
  } else {
    throw ConfigError("unknown segment key");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool in_segment = false;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    const std::string where = "line " + std::to_string(line);
    if (s == "[segment]") {
      sc.segments.emplace_back();
      in_segment = true;
      seen.clear();
      continue;
    }
    if (s.front() == '[') throw ConfigError(where + ": unknown section " + s);
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (!seen.insert(key).second) throw ConfigError(where + ": key '" + key + "' given twice");
    try {
      if (in_segment) set_segment(sc.segments.back(), key, value);
      else set_global(sc, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": key '" + key + "': " + e.what());
    }
  }
  if (sc.segments.empty()) throw ConfigError("config: no [segment] section");
  if (sc.space == SpaceKind::Compact ? sc.labels.empty() : sc.n == 0)
    throw ConfigError(sc.space == SpaceKind::Compact ? "config: cm space needs labels" : "config: n must be >= 1");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string emit_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << "space = " << to_string(sc.space) << '\n';
  if (sc.space == SpaceKind::Compact) out << "labels = " << join(sc.labels) << '\n';
  else out << "n = " << sc.n << '\n';
  out << "assembly = " << assembly_name(sc.assembly) << '\n';
  out << "mode = " << (sc.clamp ? "clamp" : "literal") << '\n';
  out << "safety = " << format_real(sc.safety) << '\n';
  out << "theta = " << format_real(sc.theta) << '\n';
  if (sc.epsilon) out << "epsilon = " << format_real(*sc.epsilon) << '\n';
  out << "target = " << to_string(sc.target) << '\n';
  out << "target_t0 = " << format_real(sc.target_t0) << '\n';
  out << "target_weight = " << sc.target_weight.str() << '\n';
  out << "seed = " << sc.seed << '\n';
  out << "samples = " << sc.samples << '\n';
  out << "q_check = " << sc.q_check << '\n';
  out << "steps = " << join(sc.steps) << '\n';
  if (sc.path_origin) out << "path_origin = " << sc.path_origin->str() << '\n';
  if (sc.path_direction) out << "path_direction = " << sc.path_direction->str() << '\n';
  out << "path_range = " << format_real(sc.path_s0) << ',' << format_real(sc.path_s1) << '\n';
  out << "path_points = " << sc.path_points << '\n';
  for (const auto& seg : sc.segments) {
    out << "\n[segment]\n";
    switch (seg.type) {
      case SegmentSpec::Type::Band:
        out << "type = band\nphi = " << seg.phi.str() << "\npsi = " << seg.psi.str() << '\n';
        break;
      case SegmentSpec::Type::Ball:
        out << "type = ball\ncenter = " << seg.center.str() << "\nradius = " << format_real(seg.radius) << '\n';
        break;
      case SegmentSpec::Type::Half: out << "type = half\nmask = " << seg.mask.str() << '\n'; break;
    }
    if (seg.anchor) out << "anchor = " << seg.anchor->str() << '\n';
    out << "delta = " << format_real(seg.delta) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- building

Space scenario_space(const Scenario& sc) {
  switch (sc.space) {
    case SpaceKind::Interval: return Space::interval(sc.n);
    case SpaceKind::Compact: return Space::compact(sc.labels);
    case SpaceKind::Hilbert: return Space::hilbert(sc.n);
  }
  throw ConfigError("unknown space");
}

std::vector<double> scenario_points(const Scenario& sc) {
  const Space space = scenario_space(sc);
  if (space.has_grid()) {
    const auto p = space.grid()->points();
    return {p.begin(), p.end()};
  }
  std::vector<double> t(space.dim());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k);
  return t;
}

namespace {

std::string segment_prefix(std::size_t i) { return "segment " + std::to_string(i + 1) + ": "; }

Band make_band(const Scenario& sc, const Space& space, const SegmentSpec& seg, std::size_t i) {
  if (!space.has_grid()) throw ConfigError(segment_prefix(i) + "bands need a c01 or cm space");
  if (seg.phi.form == FieldSpec::Form::PosInf) throw ConfigError(segment_prefix(i) + "phi cannot be +inf");
  if (seg.psi.form == FieldSpec::Form::NegInf) throw ConfigError(segment_prefix(i) + "psi cannot be -inf");
  const auto t = scenario_points(sc);
  const GridPtr grid = space.grid();
  std::optional<GridFunction> phi, psi;
  const auto pv = seg.phi.at(t), qv = seg.psi.at(t);
  if (!seg.phi.infinite()) phi = GridFunction(grid, pv);
  if (!seg.psi.infinite()) psi = GridFunction(grid, qv);
  std::vector<double> z(t.size());
  if (seg.anchor) {
    z = seg.anchor->at(t);
  } else {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (phi && psi) z[k] = 0.5 * (pv[k] + qv[k]);
      else if (psi) z[k] = qv[k] - 1.0;
      else if (phi) z[k] = pv[k] + 1.0;
      else z[k] = 0.0;
    }
  }
  return Band(phi, psi, GridFunction(grid, z), seg.delta);
}

HalfSpaceSplit make_half(const Scenario& sc, const Space& space, const SegmentSpec& seg) {
  if (!space.has_grid()) throw ConfigError("segment 1: half-spaces need a c01 or cm space");
  const auto t = scenario_points(sc);
  const auto mask = seg.mask.at(t);
  const auto z = seg.anchor ? seg.anchor->at(t) : std::vector<double>(t.size(), -1.0);
  std::vector<double> zw;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (mask[k]) zw.push_back(z[k]);
  return HalfSpaceSplit(space.grid(), mask, zw, seg.delta);
}

template <class F>
auto wrap_config(const std::string& prefix, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix + e.what());
  }
}

}  // namespace

SegmentFamily build_family(const Scenario& sc) {
  const Space space = scenario_space(sc);
  const auto kind = sc.segments.front().type;
  if (kind == SegmentSpec::Type::Half) throw ConfigError("half-space segments need assembly = seeley");
  std::vector<Band> bands;
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < sc.segments.size(); ++i) {
    const auto& seg = sc.segments[i];
    if (seg.type != kind) throw ConfigError(segment_prefix(i) + "all segments must have the same type");
    wrap_config(segment_prefix(i), [&] {
      if (kind == SegmentSpec::Type::Band) {
        bands.push_back(make_band(sc, space, seg, i));
      } else {
        balls.emplace_back(space, seg.center.at(scenario_points(sc)), seg.radius, seg.delta);
      }
      return 0;
    });
  }
  return kind == SegmentSpec::Type::Band ? SegmentFamily::of_bands(std::move(bands))
                                         : SegmentFamily::of_balls(std::move(balls));
}

TargetMap build_target(const Scenario& sc) {
  const Space space = scenario_space(sc);
  return wrap_config("target: ", [&] {
    switch (sc.target) {
      case TargetId::QuadIntegral: return TargetMap::quad_integral(space);
      case TargetId::PointEval: return TargetMap::point_eval(space, sc.target_t0);
      case TargetId::PointwiseSin: return TargetMap::pointwise_sin(space);
      case TargetId::LinearFunctional:
        if (!space.has_grid()) throw std::invalid_argument("linear_functional needs a grid space");
        return TargetMap::linear_functional(space, GridFunction(space.grid(), sc.target_weight.at(scenario_points(sc))));
      case TargetId::QuadNorm: return TargetMap::quad_norm(space);
    }
    throw std::invalid_argument("unknown target");
  });
}

ModeConfig build_mode(const Scenario& sc) {
  ModeConfig m;
  m.clamp = sc.clamp;
  m.safety = sc.safety;
  m.epsilon = sc.epsilon;
  m.theta = sc.theta;
  if (!(m.safety > 0.0 && m.safety < 1.0)) throw ConfigError("safety must lie in (0, 1)");
  return m;
}

ProbeConfig build_probe(const Scenario& sc) {
  ProbeConfig p;
  p.q_check = sc.q_check;
  p.steps = sc.steps;
  p.samples = sc.samples;
  p.seed = sc.seed;
  wrap_config("probe: ", [&] {
    validate(p);
    return 0;
  });
  return p;
}

ExtensionOperator build_extension(const Scenario& sc) {
  const TargetMap target = build_target(sc);
  const ModeConfig mode = build_mode(sc);
  if (sc.assembly == Assembly::Seeley) {
    if (sc.segments.size() != 1 || sc.segments[0].type != SegmentSpec::Type::Half)
      throw ConfigError("assembly = seeley needs exactly one half segment");
    const Space space = scenario_space(sc);
    return wrap_config("", [&] { return ExtensionOperator::seeley(make_half(sc, space, sc.segments[0]), target, mode); });
  }
  const SegmentFamily fam = build_family(sc);
  return wrap_config("", [&] {
    return sc.assembly == Assembly::Single ? ExtensionOperator::single(fam, target, mode)
                                           : ExtensionOperator::family(fam, target, mode);
  });
}

std::optional<Scenario1D> as_1d(const Scenario& sc) {
  const Space space = scenario_space(sc);
  if (space.dim() != 1) return std::nullopt;
  if (sc.target != TargetId::PointEval && sc.target != TargetId::PointwiseSin && sc.target != TargetId::QuadNorm)
    return std::nullopt;
  const auto t = scenario_points(sc);
  Scenario1D s1;
  s1.name = "config";
  s1.assembly = sc.assembly;
  s1.clamp = sc.clamp;
  s1.theta = sc.theta;
  s1.safety = sc.safety;
  s1.target = sc.target;
  if (sc.epsilon) return std::nullopt;
  double reach = 1.0;
  for (std::size_t i = 0; i < sc.segments.size(); ++i) {
    const auto& seg = sc.segments[i];
    Scenario1D::Segment s{};
    s.delta = seg.delta;
    switch (seg.type) {
      case SegmentSpec::Type::Band: {
        const Band b = make_band(sc, space, seg, i);
        s1.geometry = Scenario1D::Geometry::Bands;
        s = {b.phi(0), b.psi(0), b.anchor(0), b.delta()};
        break;
      }
      case SegmentSpec::Type::Ball: {
        if (space.kind() != SpaceKind::Hilbert) return std::nullopt;
        const double c = seg.center.at(t)[0];
        s1.geometry = Scenario1D::Geometry::Balls;
        s = {c - seg.radius, c + seg.radius, c, seg.delta};
        break;
      }
      case SegmentSpec::Type::Half: {
        if (!seg.mask.at(t)[0]) return std::nullopt;
        s1.geometry = Scenario1D::Geometry::Half;
        s = {-kInf, 0.0, seg.anchor ? seg.anchor->at(t)[0] : -1.0, seg.delta};
        break;
      }
    }
    for (double v : {s.lo, s.hi, s.anchor})
      if (std::isfinite(v)) reach = std::max(reach, std::abs(v) + 2 * s.delta + 1.0);
    s1.segments.push_back(s);
  }
  s1.range = reach;
  return s1;
}

CheckReport oracle_check(const Scenario1D& sc, std::size_t samples, std::uint64_t seed) {
  CheckReport r;
  r.id = "oracle_1d:" + sc.name;
  r.seed = seed;
  const OracleResult res = oracle_1d(sc, samples, seed);
  r.worst_error = std::max(res.max_output_diff, res.max_weight_diff);
  r.pass = r.worst_error <= 1e-12;
  r.witness = {res.witness};
  std::ostringstream d;
  d << res.samples << " scalars, output diff " << format_real(res.max_output_diff) << ", weight diff "
    << format_real(res.max_weight_diff);
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------- commands

namespace {

Scenario prepare(const RunOptions& opt) {
  Scenario sc = load_scenario(opt.config);
  if (opt.seed) sc.seed = *opt.seed;
  if (opt.samples) sc.samples = *opt.samples;
  if (opt.mode) {
    if (*opt.mode != "literal" && *opt.mode != "clamp") throw ConfigError("--mode must be literal or clamp");
    sc.clamp = *opt.mode == "clamp";
  }
  return sc;
}

std::string out_path(const RunOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  return f;
}

RunOutput config_failure(const std::string& what) {
  RunOutput out;
  out.exit_code = 2;
  out.summary = "error: " + what + '\n';
  return out;
}

RunOutput validation_failure(const RunOptions& opt, const ValidationReport& report, int code) {
  RunOutput out;
  out.exit_code = code;
  const std::string path = out_path(opt, "violations.csv");
  auto f = open_out(path);
  write_violations_csv(f, report);
  out.files.push_back(path);
  std::ostringstream s;
  s << "invalid segment family: " << report.violations.size() << " violating pair(s)\n";
  for (const auto& v : report.violations) {
    s << "  segments " << v.i + 1 << " and " << v.j + 1 << ": " << v.reason;
    if (!std::isnan(v.witness_t)) s << " (witness t = " << format_real(v.witness_t) << ")";
    s << '\n';
  }
  out.summary = s.str();
  return out;
}

// Runs body, mapping configuration problems to exit code 2.
template <class F>
RunOutput guarded(const RunOptions& opt, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    return validation_failure(opt, e.report(), 2);
  } catch (const ConfigError& e) {
    return config_failure(e.what());
  } catch (const std::invalid_argument& e) {
    return config_failure(e.what());
  } catch (const std::out_of_range& e) {
    return config_failure(e.what());
  }
}

std::vector<std::vector<double>> read_samples(const std::string& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read samples '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    try {
      row = parse_reals(line);
    } catch (const ConfigError&) {
      if (rows.empty() && n == 1) continue;  // header
      throw ConfigError("samples line " + std::to_string(n) + ": not a list of numbers");
    }
    if (row.size() != dim)
      throw ConfigError("samples line " + std::to_string(n) + ": expected " + std::to_string(dim) + " values, got " +
                        std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RunOutput cmd_validate(const RunOptions& opt) {
  return guarded(opt, [&] {
    const Scenario sc = prepare(opt);
    RunOutput out;
    if (sc.assembly == Assembly::Seeley) {
      if (sc.segments.size() != 1 || sc.segments[0].type != SegmentSpec::Type::Half)
        throw ConfigError("assembly = seeley needs exactly one half segment");
      const Space space = scenario_space(sc);
      wrap_config("segment 1: ", [&] { return make_half(sc, space, sc.segments[0]); });
      out.summary = "valid: half-space split\n";
      return out;
    }
    const auto report = validate(build_family(sc));
    if (!report.ok()) return validation_failure(opt, report, 1);
    out.summary = "valid: " + std::to_string(sc.segments.size()) + " segment(s)\n";
    return out;
  });
}

RunOutput cmd_extend(const RunOptions& opt) {
  return guarded(opt, [&] {
    const Scenario sc = prepare(opt);
    const ExtensionOperator op = build_extension(sc);
    std::vector<std::vector<double>> xs;
    if (opt.input) {
      xs = read_samples(*opt.input, op.space().dim());
    } else {
      Sampler sampler(op, sc.seed);
      const std::size_t m = op.segment_count();
      for (std::size_t s = 0; s < sc.samples; ++s) {
        switch (s % 3) {
          case 0: xs.push_back(sampler.core(s / 3 % m)); break;
          case 1: xs.push_back(sampler.hull()); break;
          default: xs.push_back(sampler.shell(10.0)); break;
        }
      }
    }
    RunOutput out;
    const std::string path = out_path(opt, "extend.csv");
    auto f = open_out(path);
    try {
      write_batch_csv(f, op, xs);
    } catch (const ContainmentError& e) {
      out.exit_code = 1;
      out.summary = std::string("error: ") + e.what() + '\n';
      return out;
    }
    out.files.push_back(path);
    out.summary = "evaluated " + std::to_string(xs.size()) + " samples -> " + path + '\n';
    return out;
  });
}

RunOutput cmd_check(const RunOptions& opt) {
  return guarded(opt, [&] {
    const Scenario sc = prepare(opt);
    const ProbeConfig probe = build_probe(sc);
    const ExtensionOperator op = build_extension(sc);
    RunOutput out;
    out.reports = run_checks(op, probe);
    if (auto s1 = as_1d(sc)) out.reports.push_back(oracle_check(*s1, probe.samples, probe.seed));
    const std::string csv = out_path(opt, "report.csv"), txt = out_path(opt, "summary.txt");
    {
      auto f = open_out(csv);
      write_reports_csv(f, out.reports);
    }
    out.summary = summary_text(out.reports);
    {
      auto f = open_out(txt);
      f << out.summary;
    }
    out.files = {csv, txt};
    out.exit_code = required_checks_pass(out.reports) ? 0 : 1;
    return out;
  });
}

RunOutput cmd_plotdata(const RunOptions& opt) {
  return guarded(opt, [&] {
    const Scenario sc = prepare(opt);
    if (!sc.path_origin || !sc.path_direction)
      throw ConfigError("plotdata: no slice configured (set path_origin and path_direction)");
    if (sc.path_points < 2) throw ConfigError("plotdata: path_points must be >= 2");
    const ExtensionOperator op = build_extension(sc);
    const auto t = scenario_points(sc);
    const auto x0 = sc.path_origin->at(t), d = sc.path_direction->at(t);
    RunOutput out;
    const std::string path = out_path(opt, "plot.csv");
    auto f = open_out(path);
    f << "s";
    for (std::size_t i = 0; i < op.segment_count(); ++i) f << ",weight_" << i + 1;
    const bool scalar = op.target().zero().kind() == TargetValue::Kind::Scalar;
    const std::size_t m = op.target().zero().size();
    if (scalar) f << ",out";
    else
      for (std::size_t c = 0; c < m; ++c) f << ",out_" << c + 1;
    f << '\n';
    const double ds = (sc.path_s1 - sc.path_s0) / static_cast<double>(sc.path_points - 1);
    try {
      for (std::size_t j = 0; j < sc.path_points; ++j) {
        const double s = sc.path_s0 + ds * static_cast<double>(j);
        std::vector<double> x(x0.size());
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = x0[k] + s * d[k];
        f << format_real(s);
        for (double w : op.weights(x)) f << ',' << format_real(w);
        for (double v : op.extend(x).components()) f << ',' << format_real(v);
        f << '\n';
      }
    } catch (const ContainmentError& e) {
      out.exit_code = 1;
      out.summary = std::string("error: ") + e.what() + '\n';
      return out;
    }
    out.files.push_back(path);
    out.summary = "wrote " + std::to_string(sc.path_points) + " path points -> " + path + '\n';
    return out;
  });
}

}  // namespace whext
