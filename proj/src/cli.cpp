#include "biharm/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "biharm/certify.hpp"
#include "biharm/errors.hpp"
#include "biharm/numerics.hpp"

namespace biharm {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<CaseSpec> resolve_cases(const Registry& reg, const std::string& selector, const ParamMap& overrides) {
  std::vector<CaseSpec> out;
  if (selector == "all") {
    if (!overrides.empty()) throw ValidationError("--param cannot be combined with --case all");
    for (const auto& t : reg.cases) out.push_back(instantiate_case(t));
    return out;
  }
  const CaseTemplate* t = reg.find(selector);
  if (!t) throw ValidationError("unknown case '" + selector + "' (see the cases subcommand)");
  if (!t->parametric() && !overrides.empty())
    throw ValidationError("case '" + selector + "' takes no parameters");
  out.push_back(instantiate_case(*t, overrides));
  return out;
}

ParamMap parse_param_overrides(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw ValidationError("malformed --param '" + item + "' (expected name=value)");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size()) throw ValidationError("--param " + key + ": '" + val + "' is not an integer");
    out[key] = v;
  }
  return out;
}

namespace {

json poly_json(const SpatialPoly& p) {
  return {{"poly", to_string(p)}, {"degree", homogeneous_degree(p).to_string()}, {"terms", p.size()}};
}

json reduced_json(const ReducedExpr& e) {
  json terms = json::object();
  const int deg = e.numerator.velocity_degree();
  for (const auto& [q, c] : e.numerator.terms())
    terms["xd^" + std::to_string(deg - q) + "*yd^" + std::to_string(q)] = to_string(c);
  return {{"numerator", terms}, {"qd_power", e.qd_power}, {"velocity_degree", deg}};
}

}  // namespace

json bundle_to_json(const ReductionBundle& b) {
  json j;
  j["case"] = b.spec.name;
  j["label"] = case_label(b.spec);
  j["group"] = b.spec.group_label;
  j["n"] = b.spec.n;
  j["d"] = b.spec.d;
  j["multiplicities"] = b.spec.multiplicities;
  j["params"] = json::object();
  for (const auto& [k, v] : b.spec.parameters) j["params"][k] = v;
  json walls = json::array();
  for (const auto& w : b.walls) walls.push_back(poly_json(w));
  j["walls"] = walls;
  j["qd"] = poly_json(b.qd);
  j["volume_sq"] = poly_json(b.volume_sq);
  j["T1"] = poly_json(b.t1);
  j["T2"] = poly_json(b.t2);
  for (std::size_t k = 0; k < 3; ++k) j["T" + std::to_string(k + 3)] = poly_json(b.t345[k]);
  j["R"] = reduced_json(b.r);
  j["R_dot"] = reduced_json(b.r_dot);
  j["R_ddot"] = reduced_json(b.r_ddot);
  json a = json::array();
  for (const auto& p : b.a_coeffs) a.push_back(poly_json(p));
  j["A"] = a;
  json c = json::array();
  for (const auto& p : b.c_coeffs) c.push_back(poly_json(p));
  j["C"] = c;
  j["expected_degrees"] = {{"A", 3 * (b.spec.d - 1)}, {"C", 4 * (b.spec.d - 1)}};
  return j;
}

std::string bundle_to_text(const ReductionBundle& b) {
  std::ostringstream os;
  os << "case " << case_label(b.spec) << "  n=" << b.spec.n << " d=" << b.spec.d << " m=(";
  for (std::size_t i = 0; i < b.spec.multiplicities.size(); ++i)
    os << (i ? "," : "") << b.spec.multiplicities[i];
  os << ")\n";
  for (std::size_t i = 0; i < b.walls.size(); ++i) os << "w" << i << " = " << to_string(b.walls[i]) << '\n';
  os << "Q = " << to_string(b.qd) << '\n';
  os << "T1 = " << to_string(b.t1) << '\n';
  os << "T2 = " << to_string(b.t2) << '\n';
  for (std::size_t k = 0; k < 3; ++k) os << "T" << k + 3 << " = " << to_string(b.t345[k]) << '\n';
  for (std::size_t j = 0; j < 4; ++j)
    os << "A" << j << " [" << homogeneous_degree(b.a_coeffs[j]).to_string() << "] = " << to_string(b.a_coeffs[j])
       << '\n';
  for (std::size_t j = 0; j < 6; ++j)
    os << "C" << j << " [" << homogeneous_degree(b.c_coeffs[j]).to_string() << "] = " << to_string(b.c_coeffs[j])
       << '\n';
  return os.str();
}

std::array<SpatialPoly, 4> published_u5_coefficients() {
  const SpatialPoly a0 =
      parse_spatial_poly("(775)*x^7*y^2 + (-363)*x^5*y^4 + (1237)*x^3*y^6 + (130)*x^1*y^8 + (-275)*x^9");
  const SpatialPoly a1 = scale(
      parse_spatial_poly("(-25)*x^2*y^7 + (540)*x^4*y^5 + (-118)*x^6*y^3 + (65)*x^8*y^1 + (-10)*y^9"), 8);
  return {a0, a1, a1.swapped(), a0.swapped()};
}

ExampleReport verify_paper_example(const CaseSpec& c) {
  ExampleReport rep;
  const auto derived = assemble_A(c);
  const auto published = published_u5_coefficients();
  rep.symmetry_03 = derived[0] == derived[3].swapped();
  rep.symmetry_12 = derived[1] == derived[2].swapped();

  for (std::size_t j = 0; j < 4 && !rep.lambda; ++j) {
    for (const auto& [e, pc] : published[j].terms()) {
      const FieldScalar dc = derived[j].coefficient(e.x, e.y);
      if (dc.is_zero()) continue;
      const FieldScalar ratio = dc / pc;
      if (ratio.is_rational()) rep.lambda = ratio.rational_part();
      break;
    }
  }
  if (!rep.lambda) {
    rep.diffs.push_back("no common rational scalar: derived coefficients vanish or are irrational");
    return rep;
  }
  const FieldScalar lam(*rep.lambda);
  for (std::size_t j = 0; j < 4; ++j) {
    SpatialPoly expected = scale(published[j], lam);
    std::vector<Exponent> keys;
    for (const auto& [e, _] : expected.terms()) keys.push_back(e);
    for (const auto& [e, _] : derived[j].terms())
      if (expected.coefficient(e.x, e.y).is_zero()) keys.push_back(e);
    for (const auto& e : keys) {
      const FieldScalar want = expected.coefficient(e.x, e.y);
      const FieldScalar got = derived[j].coefficient(e.x, e.y);
      if (want == got) continue;
      rep.diffs.push_back("A" + std::to_string(j) + " x^" + std::to_string(e.x) + "*y^" + std::to_string(e.y) +
                          ": derived " + got.to_string() + ", expected " + want.to_string());
    }
  }
  rep.pass = rep.diffs.empty() && rep.symmetry_03 && rep.symmetry_12;
  return rep;
}

namespace {

fs::path default_out_dir(const std::string& fallback) {
  if (const char* env = std::getenv("BIHARM_OUT_DIR"); env && *env) return env;
  return fallback;
}

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw ValidationError("output directory " + p.string() + " is not writable");
}

std::string file_stem(const CaseSpec& c) {
  std::string s = case_label(c);
  for (char& ch : s)
    if (ch == '[' || ch == ']' || ch == ',' || ch == '=') ch = '_';
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s;
}

struct Options {
  std::string registry;
  std::string format = "text";
  std::string case_sel;
  std::vector<std::string> params;
  std::string out;
  long precision = kDefaultPrecisionBits;
  unsigned jobs = 1;
  std::string mode = "minimal";
  double x0 = 1.0, y0 = 0.3, angle = 0.7, h = 1e-4, wall_eps = 1e-9;
  long steps = 10000;
};

Registry open_registry(const Options& o) {
  return load_registry(o.registry.empty() ? default_registry_path() : fs::path(o.registry));
}

int cmd_cases(const Options& o, std::ostream& out) {
  const Registry reg = open_registry(o);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& t : reg.cases) {
      const CaseSpec c = instantiate_case(t);
      arr.push_back({{"case", c.name},
                     {"group", c.group_label},
                     {"n", c.n},
                     {"d", c.d},
                     {"multiplicities", c.multiplicities},
                     {"params", t.defaults},
                     {"parametric", t.parametric()}});
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
  }
  out << std::left << std::setw(12) << "case" << std::setw(26) << "group" << std::setw(5) << "d" << std::setw(5)
      << "n" << "multiplicities\n";
  for (const auto& t : reg.cases) {
    const CaseSpec c = instantiate_case(t);
    std::string m;
    for (std::size_t i = 0; i < c.multiplicities.size(); ++i)
      m += (i ? "," : "") + std::to_string(c.multiplicities[i]);
    std::string name = t.parametric() ? case_label(c) : c.name;
    out << std::left << std::setw(12) << c.name << std::setw(26) << c.group_label << std::setw(5) << c.d
        << std::setw(5) << c.n << m;
    if (t.parametric()) out << "  (" << name << ", n=" << t.n_expr << ")";
    out << '\n';
  }
  return kExitOk;
}

int cmd_derive(const Options& o, std::ostream& out) {
  if (o.format != "json" && o.format != "text") throw ValidationError("--format must be json or text");
  const Registry reg = open_registry(o);
  const auto specs = resolve_cases(reg, o.case_sel, parse_param_overrides(o.params));
  if (specs.size() > 1 && o.out.empty()) throw ValidationError("--case all requires --out DIR");
  if (!o.out.empty()) ensure_dir(o.out);
  for (const auto& c : specs) {
    const ReductionBundle b = derive_bundle(c);
    const std::string body = o.format == "json" ? bundle_to_json(b).dump(2) + "\n" : bundle_to_text(b);
    if (o.out.empty()) {
      out << body;
      continue;
    }
    const fs::path p = fs::path(o.out) / (file_stem(c) + (o.format == "json" ? ".bundle.json" : ".bundle.txt"));
    std::ofstream f(p);
    if (!(f << body)) throw ValidationError("cannot write " + p.string());
    out << "wrote " << p.string() << '\n';
  }
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.precision < 64) throw ValidationError("--precision must be at least 64 bits");
  const Registry reg = open_registry(o);
  const auto specs =
      resolve_cases(reg, o.case_sel.empty() ? "all" : o.case_sel, parse_param_overrides(o.params));
  const fs::path dir = o.out.empty() ? default_out_dir("certs") : fs::path(o.out);
  ensure_dir(dir);

  std::vector<std::optional<Certificate>> certs(specs.size());
  std::vector<std::string> failures(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < specs.size(); k = next++) {
      try {
        Certificate c = certify_case(specs[k], o.precision);
        write_certificate(c, dir / (file_stem(specs[k]) + ".cert.json"));
        certs[k] = std::move(c);
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(specs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out << std::left << std::setw(24) << "case" << std::setw(4) << "d" << std::setw(8) << "degree" << std::setw(10)
      << "expected" << std::setw(7) << "roots" << std::setw(12) << "time_ms" << "conclusion\n";
  bool pipeline_failure = false;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    if (!certs[k]) {
      err << case_label(specs[k]) << ": " << failures[k] << '\n';
      pipeline_failure = true;
      continue;
    }
    const Certificate& c = *certs[k];
    out << std::left << std::setw(24) << case_label(specs[k]) << std::setw(4) << c.spec.d << std::setw(8)
        << (c.resultant_degree ? std::to_string(*c.resultant_degree) : "-") << std::setw(10) << c.expected_degree
        << std::setw(7) << c.roots.size() << std::setw(12) << std::fixed << std::setprecision(1) << c.duration_ms
        << c.conclusion << '\n';
    for (const auto& w : c.warnings) err << case_label(specs[k]) << ": warning: " << w << '\n';
  }
  out << "certificates written to " << dir.string() << '\n';
  return pipeline_failure ? kExitPipeline : kExitOk;
}

int cmd_integrate(const Options& o, std::ostream& out) {
  const Registry reg = open_registry(o);
  if (o.case_sel == "all") throw ValidationError("integrate needs a single --case");
  const auto specs = resolve_cases(reg, o.case_sel, parse_param_overrides(o.params));
  if (o.steps < 0) throw ValidationError("--steps must be non-negative");
  IntegratorConfig cfg;
  cfg.h = o.h;
  cfg.max_steps = static_cast<std::size_t>(o.steps);
  cfg.wall_epsilon = o.wall_eps;
  cfg.mode = parse_mode(o.mode);
  cfg.validate();
  const CaseSpec& c = specs.front();
  const ProfileModel model(derive_bundle(c), cfg.wall_epsilon);
  const Trajectory t = integrate_curve(initial_state(o.x0, o.y0, o.angle), cfg, model);

  fs::path path;
  if (o.out == "-") {
    write_trajectory_csv(t, out);
  } else {
    if (o.out.empty()) {
      const fs::path dir = default_out_dir(".");
      ensure_dir(dir);
      path = dir / (file_stem(c) + "_" + to_string(cfg.mode) + ".csv");
    } else {
      path = o.out;
      if (path.has_parent_path()) ensure_dir(path.parent_path());
    }
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write " + path.string());
    write_trajectory_csv(t, f);
  }
  std::ostream& summary = o.out == "-" ? std::cerr : out;
  summary << "case " << case_label(c) << " mode " << to_string(cfg.mode) << '\n'
          << "samples " << t.samples.size() << "  stop " << to_string(t.stop) << '\n'
          << std::scientific << std::setprecision(3) << "max|f| " << t.max_abs_f << "  speed drift "
          << t.max_speed_drift << "  max residual rel " << t.max_residual_rel << '\n';
  if (!path.empty()) summary << "wrote " << path.string() << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Registry reg = open_registry(o);
  const auto specs = resolve_cases(reg, o.case_sel.empty() ? "U5" : o.case_sel, parse_param_overrides(o.params));
  const ExampleReport rep = verify_paper_example(specs.front());
  out << "lambda: " << (rep.lambda ? rep.lambda->to_string() : std::string("none")) << '\n'
      << "A0(x,y) = A3(y,x): " << (rep.symmetry_03 ? "yes" : "no") << '\n'
      << "A1(x,y) = A2(y,x): " << (rep.symmetry_12 ? "yes" : "no") << '\n';
  for (const auto& d : rep.diffs) out << "diff " << d << '\n';
  out << (rep.pass ? "PASS" : "FAIL") << " U5 A-coefficients against the published example\n";
  return rep.pass ? kExitOk : kExitPipeline;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resultant certificates and profile-curve numerics for biharmonic invariant hypersurfaces", "biharm"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--registry", o.registry, "Case registry JSON (default: $BIHARM_REGISTRY or the bundled copy)");

  auto* cases = app.add_subcommand("cases", "List the registry");
  cases->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* derive = app.add_subcommand("derive", "Derive the reduction bundle of a case");
  derive->add_option("--case", o.case_sel, "Case name or all")->required();
  derive->add_option("--param", o.params, "Parameter override name=value");
  derive->add_option("--format", o.format, "text or json");
  derive->add_option("--out", o.out, "Output directory (default: standard output)");

  auto* certify = app.add_subcommand("certify", "Compute resultant certificates");
  certify->add_option("--case", o.case_sel, "Case name or all (default all)");
  certify->add_option("--param", o.params, "Parameter override name=value");
  certify->add_option("--out", o.out, "Output directory (default: $BIHARM_OUT_DIR or certs)");
  certify->add_option("--precision", o.precision, "Root-scan precision in bits");
  certify->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* integrate = app.add_subcommand("integrate", "Integrate a profile curve");
  integrate->set_help_flag("--help", "Print this help message and exit");
  integrate->add_option("--case", o.case_sel, "Case name")->required();
  integrate->add_option("--param", o.params, "Parameter override name=value");
  integrate->add_option("--mode", o.mode, "minimal or biharmonic-candidate");
  integrate->add_option("--x0", o.x0, "Initial x");
  integrate->add_option("--y0", o.y0, "Initial y");
  integrate->add_option("--angle", o.angle, "Initial tangent angle in radians");
  integrate->add_option("--steps", o.steps, "RK4 steps");
  integrate->add_option("--h", o.h, "Step length");
  integrate->add_option("--wall-eps", o.wall_eps, "Boundary stop distance");
  integrate->add_option("--out", o.out, "CSV path, - for standard output (default: $BIHARM_OUT_DIR)");

  auto* verify = app.add_subcommand("verify-paper-example", "Check the U(5) A-coefficients against the published ones");
  verify->add_option("--case", o.case_sel, "Registry row to compare (default U5)");
  verify->add_option("--param", o.params, "Parameter override name=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUser;
  }

  try {
    if (*cases) return cmd_cases(o, out);
    if (*derive) return cmd_derive(o, out);
    if (*certify) return cmd_certify(o, out, err);
    if (*integrate) return cmd_integrate(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const PipelineError& e) {
    err << "pipeline invariant violated: " << e.what() << '\n';
    return kExitPipeline;
  } catch (const DomainError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitPipeline;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUser;
  }
  return kExitUser;
}

}  // namespace biharm
