// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "whext/app.hpp"

using namespace whext;
namespace fs = std::filesystem;

namespace {

const std::string kScenarios = WHEXT_SCENARIO_DIR;

const std::vector<std::string> kShipped{
    "band_single_literal", "band_single_clamp",      "band_family_literal",   "band_family_clamp",
    "semi_infinite_literal", "semi_infinite_clamp",  "hilbert_balls_literal", "hilbert_balls_clamp",
    "cm_balls_literal",    "cm_balls_clamp",         "seeley_partial_literal", "seeley_full_clamp",
    "band_1d_literal",     "seeley_1d_clamp"};

std::string path_of(const std::string& name) { return kScenarios + "/" + name + ".cfg"; }

struct Outcome {
  bool pass = true;
  std::string note;
  void fail(const std::string& what) {
    if (pass) note = what;
    pass = false;
  }
};

int failures = 0;

void report(int n, const char* title, const Outcome& o) {
  std::printf("criterion %d: %s  %s%s%s\n", n, o.pass ? "PASS" : "FAIL", title, o.note.empty() ? "" : "  ",
              o.note.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Blid maps of every kind at N = 101, in both modes.
std::vector<BlidMap> blid_suite() {
  const std::size_t n = 101;
  auto g = Grid::uniform(n);
  auto t = [&](double a, double b) { return GridFunction::sample(g, [=](double s) { return a * s + b; }); };
  const Band band(t(0.5, -1.0), t(0.5, 1.0), t(0.5, 0.1), 0.5);
  const Band semi(std::nullopt, t(-1.0, 1.0), t(-1.0, 0.0), 0.5);
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = std::sin(0.1 * static_cast<double>(k));
  const Ball ball(Space::hilbert(n), c, 1.5, 0.5);
  const Ball sup(Space::interval(n), c, 1.0, 0.25);
  std::vector<bool> mask(n);
  for (std::size_t k = 0; k < n; ++k) mask[k] = k >= 30;
  const HalfSpaceSplit half(g, mask, std::vector<double>(n - 30, -1.0), 0.5);

  std::vector<BlidMap> out;
  for (const BlidMap& h : {BlidMap::for_band(band), BlidMap::for_band(semi), BlidMap::for_ball(ball),
                           BlidMap::for_ball(sup), BlidMap::for_half(half)}) {
    out.push_back(h.with_mode(Literal{epsilon_for(h)}));
    out.push_back(h.with_mode(Clamp{0.25}));
  }
  return out;
}

Outcome blid_laws() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::uint64_t seed = 1001;
  for (const auto& h : blid_suite()) {
    const auto r = blid_law_check(h, 1000, 10000, seed++);
    worst = std::max(worst, r.worst_error);
    if (!r.pass) o.fail(r.id + ": " + r.detail);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > 10.0) o.fail("runtime " + fmt(secs) + " s > 10 s");
  if (o.pass) o.note = "10 configurations, worst " + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

template <class F>
Outcome over_shipped(F&& check) {
  Outcome o;
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& name : kShipped) {
    const Scenario sc = load_scenario(path_of(name));
    const ExtensionOperator op = build_extension(sc);
    std::vector<CheckReport> reps = check(sc, op);
    for (const auto& r : reps) {
      ++count;
      worst = std::max(worst, r.worst_error);
      if (!r.pass && r.severity == Severity::Required) o.fail(name + " " + r.id + ": " + r.detail);
    }
  }
  if (o.pass) o.note = std::to_string(count) + " reports, worst " + fmt(worst);
  return o;
}

Outcome containment() {
  return over_shipped([](const Scenario& sc, const ExtensionOperator& op) {
    return std::vector<CheckReport>{containment_check(op, 10000, sc.seed)};
  });
}

Outcome restriction() {
  return over_shipped([](const Scenario& sc, const ExtensionOperator& op) {
    auto cfg = build_probe(sc);
    cfg.samples = 1000;
    auto r = restriction_check(op, cfg);
    if (r.worst_error > 1e-12) r.pass = false;
    return std::vector<CheckReport>{r};
  });
}

Outcome weight_partition() {
  return over_shipped([](const Scenario& sc, const ExtensionOperator& op) {
    std::vector<CheckReport> out;
    if (op.assembly() == Assembly::Family && op.segments()->kind() == SegmentFamily::Kind::Band)
      out.push_back(weight_partition_check(op, 10000, sc.seed));
    return out;
  });
}

Outcome boundedness() {
  return over_shipped([](const Scenario& sc, const ExtensionOperator& op) {
    return std::vector<CheckReport>{bounded_scan(op, build_probe(sc))};
  });
}

Outcome derivative_oracle() {
  Outcome o;
  const Space c01 = Space::interval(101), h = Space::hilbert(50);
  const auto w = GridFunction::sample(c01.grid(), [](double t) { return std::exp(-t) * (1 + t); });
  const std::vector<TargetMap> catalog{TargetMap::quad_integral(c01),         TargetMap::point_eval(c01, 0.37),
                                       TargetMap::pointwise_sin(c01),         TargetMap::linear_functional(c01, w),
                                       TargetMap::quad_norm(c01),             TargetMap::quad_norm(h),
                                       TargetMap::pointwise_sin(h),           TargetMap::point_eval(h, 7)};
  double worst = 0.0;
  for (const auto& f : catalog) {
    const auto r = derivative_oracle_check(f, 100, 42);
    worst = std::max(worst, r.worst_error);
    if (!r.pass) o.fail(r.id + ": " + r.detail);
  }
  if (o.pass) o.note = std::to_string(catalog.size()) + " targets, worst relative error " + fmt(worst);
  return o;
}

Outcome scalar_oracle() {
  Outcome o;
  double worst = 0.0;
  std::size_t n = 0;
  bool seeley = false;
  for (const auto& sc : shipped_1d_scenarios()) {
    const auto r = oracle_1d(sc, 1000, 42);
    worst = std::max({worst, r.max_output_diff, r.max_weight_diff});
    seeley = seeley || sc.assembly == Assembly::Seeley;
    ++n;
    if (!(r.max_output_diff <= 1e-12 && r.max_weight_diff <= 1e-12))
      o.fail(sc.name + ": diff " + fmt(std::max(r.max_output_diff, r.max_weight_diff)));
  }
  for (const auto& name : {"band_1d_literal", "seeley_1d_clamp"}) {
    const auto s1 = as_1d(load_scenario(path_of(name)));
    if (!s1) {
      o.fail(std::string(name) + " is not one-dimensional");
      continue;
    }
    const auto r = oracle_check(*s1, 1000, 42);
    worst = std::max(worst, r.worst_error);
    ++n;
    if (!r.pass) o.fail(std::string(name) + ": " + r.detail);
  }
  if (n < 5 || !seeley) o.fail("suite needs >= 5 scenarios including Seeley");
  if (o.pass) o.note = std::to_string(n) + " scenarios, worst " + fmt(worst);
  return o;
}

Outcome validator(const fs::path& work) {
  Outcome o;
  struct Case {
    const char* name;
    int code;
    const char* csv;
  };
  const Case cases[] = {
      {"validate_ordered", 0, nullptr},
      {"validate_overlapping", 1, "pair_i,pair_j,witness_t,psi_i,phi_j\n1,2,0,1,0\n"},
      {"validate_crossing", 1, "pair_i,pair_j,witness_t,psi_i,phi_j\n1,2,1,0.5,-0.5\n"},
  };
  for (const auto& c : cases) {
    RunOptions opt;
    opt.config = path_of(c.name);
    opt.out_dir = (work / c.name).string();
    const auto out = cmd_validate(opt);
    if (out.exit_code != c.code) o.fail(std::string(c.name) + " exit " + std::to_string(out.exit_code));
    if (c.csv) {
      const auto got = slurp(work / c.name / "violations.csv");
      if (got != c.csv) o.fail(std::string(c.name) + " witness: " + got);
    }
  }
  if (o.pass) o.note = "exit codes 0/1/1, crossing witness t = 1";
  return o;
}

Outcome determinism(const fs::path& work) {
  Outcome o;
  for (const auto& name : {"band_family_literal", "hilbert_balls_clamp", "seeley_partial_literal"}) {
    std::string reports[2];
    for (int run = 0; run < 2; ++run) {
      RunOptions opt;
      opt.config = path_of(name);
      opt.out_dir = (work / ("det_" + std::to_string(run)) / name).string();
      const auto out = cmd_check(opt);
      if (out.exit_code != 0) o.fail(std::string(name) + " exit " + std::to_string(out.exit_code));
      reports[run] = slurp(fs::path(opt.out_dir) / "report.csv");
    }
    if (reports[0].empty() || reports[0] != reports[1]) o.fail(std::string(name) + ": reports differ");
  }
  if (o.pass) o.note = "report.csv byte-identical across runs (3 scenarios)";
  return o;
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "whext_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  try {
    report(1, "blid law suite", blid_laws());
    report(2, "image containment", containment());
    report(3, "restriction on identity cores", restriction());
    report(4, "weight partition", weight_partition());
    report(5, "boundedness scan", boundedness());
    report(6, "derivative oracle", derivative_oracle());
    report(7, "1-D oracle equivalence", scalar_oracle());
    report(8, "validator exit codes", validator(work));
    report(9, "determinism", determinism(work));
  } catch (const std::exception& e) {
    std::printf("aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
