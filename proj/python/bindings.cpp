#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whext/app.hpp"

namespace py = pybind11;
using namespace whext;

namespace {

py::object to_python(const TargetValue& v) {
  if (v.kind() == TargetValue::Kind::Scalar) return py::float_(v.scalar());
  const auto c = v.components();
  return py::cast(std::vector<double>(c.begin(), c.end()));
}

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["id"] = r.id;
  d["passed"] = r.pass;
  d["informational"] = r.severity == Severity::Informational;
  d["worst_error"] = r.worst_error;
  d["seed"] = r.seed;
  d["witness"] = r.witness;
  d["detail"] = r.detail;
  return d;
}

py::dict run_dict(const RunOutput& out) {
  py::dict d;
  d["exit_code"] = out.exit_code;
  d["summary"] = out.summary;
  d["files"] = out.files;
  py::list reports;
  for (const auto& r : out.reports) reports.append(report_dict(r));
  d["reports"] = reports;
  return d;
}

RunOptions options(const std::string& config, const std::string& out_dir, std::optional<std::uint64_t> seed,
                   std::optional<std::size_t> samples, std::optional<std::string> mode,
                   std::optional<std::string> input) {
  RunOptions o;
  o.config = config;
  o.out_dir = out_dir;
  o.seed = seed;
  o.samples = samples;
  o.mode = std::move(mode);
  o.input = std::move(input);
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smooth extension operators on discretized function spaces";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ContainmentError>(m, "ContainmentError", PyExc_RuntimeError);

  m.def("transition", &transition, py::arg("s"));
  m.def("transition_d1", &transition_d1, py::arg("s"));
  m.def(
      "bump",
      [](double lower, double upper, double delta, double a) { return bump_eval(BumpProfile(lower, upper, delta), a); },
      py::arg("lower"), py::arg("upper"), py::arg("delta"), py::arg("a"));
  m.def("clamp_upper", &clamp_upper, py::arg("s"), py::arg("hi"), py::arg("theta"));

  py::class_<ExtensionOperator>(m, "Operator")
      .def_static(
          "from_config", [](const std::string& text) { return build_extension(parse_scenario(text)); },
          py::arg("text"), "Build the operator described by config text.")
      .def_static(
          "load", [](const std::string& path) { return build_extension(load_scenario(path)); }, py::arg("path"))
      .def_property_readonly("dim", [](const ExtensionOperator& op) { return op.space().dim(); })
      .def_property_readonly("segment_count", &ExtensionOperator::segment_count)
      .def_property_readonly("assembly", [](const ExtensionOperator& op) { return to_string(op.assembly()); })
      .def(
          "extend", [](const ExtensionOperator& op, const std::vector<double>& x) { return to_python(op.extend(x)); },
          py::arg("x"))
      .def(
          "target", [](const ExtensionOperator& op, const std::vector<double>& x) {
            return to_python(op.target().eval(x));
          },
          py::arg("x"))
      .def(
          "weights", [](const ExtensionOperator& op, const std::vector<double>& x) { return op.weights(x); },
          py::arg("x"))
      .def(
          "check",
          [](const ExtensionOperator& op, std::uint64_t seed, std::size_t samples) {
            ProbeConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            py::list out;
            for (const auto& r : run_checks(op, cfg)) out.append(report_dict(r));
            return out;
          },
          py::arg("seed") = 42, py::arg("samples") = 1000);

  m.def(
      "roundtrip_config", [](const std::string& text) { return emit_scenario(parse_scenario(text)); },
      py::arg("text"), "Parse config text and emit it in canonical form.");

  m.def(
      "oracle_suite",
      [](std::size_t samples, std::uint64_t seed) {
        py::list out;
        for (const auto& sc : shipped_1d_scenarios()) out.append(report_dict(oracle_check(sc, samples, seed)));
        return out;
      },
      py::arg("samples") = 1000, py::arg("seed") = 42);

  auto command = [&m](const char* name, RunOutput (*fn)(const RunOptions&)) {
    m.def(
        name,
        [fn](const std::string& config, const std::string& out_dir, std::optional<std::uint64_t> seed,
             std::optional<std::size_t> samples, std::optional<std::string> mode, std::optional<std::string> input) {
          return run_dict(fn(options(config, out_dir, seed, samples, std::move(mode), std::move(input))));
        },
        py::arg("config"), py::arg("out_dir") = ".", py::arg("seed") = py::none(), py::arg("samples") = py::none(),
        py::arg("mode") = py::none(), py::arg("input") = py::none());
  };
  command("validate", &cmd_validate);
  command("extend", &cmd_extend);
  command("check", &cmd_check);
  command("plotdata", &cmd_plotdata);
}
