#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "biharm/certify.hpp"
#include "biharm/cli.hpp"
#include "biharm/errors.hpp"
#include "biharm/numerics.hpp"
#include "biharm/reduction.hpp"

namespace py = pybind11;
using namespace biharm;

namespace {

Registry registry_at(const std::optional<std::filesystem::path>& path) {
  return load_registry(path ? *path : default_registry_path());
}

CaseSpec one_case(const std::optional<std::filesystem::path>& registry, const std::string& name,
                  const ParamMap& params) {
  if (name == "all") throw ValidationError("select a single case");
  return resolve_cases(registry_at(registry), name, params).front();
}

std::string cases_json(const std::optional<std::filesystem::path>& registry) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : resolve_cases(registry_at(registry), "all", {}))
    rows.push_back({{"case", c.name},
                    {"group", c.group_label},
                    {"label", case_label(c)},
                    {"n", c.n},
                    {"d", c.d},
                    {"multiplicities", c.multiplicities},
                    {"params", c.parameters}});
  return rows.dump();
}

std::string derive_json(const std::optional<std::filesystem::path>& registry, const std::string& name,
                        const ParamMap& params) {
  return bundle_to_json(derive_bundle(one_case(registry, name, params))).dump();
}

std::string certify_json(const std::optional<std::filesystem::path>& registry, const std::string& name,
                         const ParamMap& params, long precision_bits) {
  return to_json(certify_case(one_case(registry, name, params), precision_bits)).dump();
}

py::dict integrate(const std::optional<std::filesystem::path>& registry, const std::string& name,
                   const ParamMap& params, const std::string& mode, double x0, double y0, double angle,
                   std::size_t steps, double h, double wall_epsilon) {
  IntegratorConfig cfg;
  cfg.mode = parse_mode(mode);
  cfg.max_steps = steps;
  cfg.h = h;
  cfg.wall_epsilon = wall_epsilon;
  Trajectory t;
  {
    py::gil_scoped_release release;
    const ProfileModel model(derive_bundle(one_case(registry, name, params)), wall_epsilon);
    t = integrate_curve(initial_state(x0, y0, angle), cfg, model);
  }
  std::vector<double> s, x, y, xd, yd, f, a2, rp, ro;
  for (const auto& smp : t.samples) {
    s.push_back(smp.state.s);
    x.push_back(smp.state.x);
    y.push_back(smp.state.y);
    xd.push_back(smp.state.xd);
    yd.push_back(smp.state.yd);
    f.push_back(smp.f);
    a2.push_back(smp.shape_norm_sq);
    rp.push_back(smp.res_poly);
    ro.push_back(smp.res_ode);
  }
  py::dict out;
  out["s"] = s;
  out["x"] = x;
  out["y"] = y;
  out["xd"] = xd;
  out["yd"] = yd;
  out["f"] = f;
  out["A2"] = a2;
  out["res_poly"] = rp;
  out["res_ode"] = ro;
  out["stop"] = to_string(t.stop);
  out["max_abs_f"] = t.max_abs_f;
  out["max_speed_drift"] = t.max_speed_drift;
  out["max_residual_rel"] = t.max_residual_rel;
  return out;
}

py::dict example_report(const std::optional<std::filesystem::path>& registry, const std::string& name) {
  const ExampleReport r = verify_paper_example(one_case(registry, name, {}));
  py::dict out;
  out["pass"] = r.pass;
  out["lambda"] = r.lambda ? py::cast(r.lambda->to_string()) : py::none();
  out["diffs"] = r.diffs;
  out["symmetry_03"] = r.symmetry_03;
  out["symmetry_12"] = r.symmetry_12;
  return out;
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"biharm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact reduction and resultant certification for cohomogeneity-one profile curves";

  auto value_error = py::handle(PyExc_ValueError);
  auto runtime_error = py::handle(PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", value_error);
  py::register_exception<ParseError>(m, "ParseError", value_error);
  py::register_exception<UnsupportedCaseError>(m, "UnsupportedCaseError", value_error);
  py::register_exception<BoundaryError>(m, "BoundaryError", runtime_error);
  py::register_exception<DomainError>(m, "DomainError", runtime_error);
  py::register_exception<PipelineError>(m, "PipelineError", runtime_error);

  m.def("default_registry_path", [] { return default_registry_path(); });
  m.def("cases_json", &cases_json, py::arg("registry") = py::none());
  m.def("derive_json", &derive_json, py::arg("registry"), py::arg("case"), py::arg("params"));
  m.def("certify_json", &certify_json, py::arg("registry"), py::arg("case"), py::arg("params"),
        py::arg("precision_bits") = kDefaultPrecisionBits, py::call_guard<py::gil_scoped_release>());
  m.def("integrate", &integrate, py::arg("registry"), py::arg("case"), py::arg("params"), py::arg("mode"),
        py::arg("x0"), py::arg("y0"), py::arg("angle"), py::arg("steps"), py::arg("h"), py::arg("wall_epsilon"));
  m.def("verify_paper_example", &example_report, py::arg("registry"), py::arg("case"));
  m.def("run_cli", &run, py::arg("args"));
}
