#include "biharm/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <gmp.h>
#include <mpfr.h>

#include "biharm/errors.hpp"
#include "biharm/resultant.hpp"

namespace biharm {

SpatialPoly compute_resultant(const ReductionBundle& bundle) {
  SpatialPoly res = sylvester_resultant(bundle.a_coeffs, bundle.c_coeffs);
  if (homogeneous_degree(res).kind == Homogeneity::not_homogeneous)
    throw PipelineError("resultant for " + bundle.spec.name + " is not homogeneous");
  return res;
}

namespace {

// p(cos s, sin s) with a rigorous-enough rounding bound. Coefficients are
// embedded lazily per working precision.
class TrigEvaluator {
 public:
  explicit TrigEvaluator(SpatialPoly p) : poly_(std::move(p)), degree_(std::max(poly_.total_degree(), 0)) {}

  struct Value {
    HighFloat v;
    HighFloat bound;  // |v - exact| stays below this
  };

  Value operator()(const HighFloat& s, long prec) const {
    const auto& terms = embedded(prec);
    const HighFloat sx(s, prec);
    const HighFloat cs = cos(sx);
    const HighFloat sn = sin(sx);
    std::vector<HighFloat> cp(static_cast<std::size_t>(degree_) + 1, HighFloat(1.0, prec));
    std::vector<HighFloat> sp(static_cast<std::size_t>(degree_) + 1, HighFloat(1.0, prec));
    for (std::size_t k = 1; k < cp.size(); ++k) {
      cp[k] = cp[k - 1] * cs;
      sp[k] = sp[k - 1] * sn;
    }
    HighFloat sum(prec), mag(prec);
    for (const auto& t : terms) {
      const HighFloat term = t.c * cp[static_cast<std::size_t>(t.a)] * sp[static_cast<std::size_t>(t.b)];
      sum += term;
      mag += abs(term);
    }
    const HighFloat rel(std::ldexp(static_cast<double>(degree_ + 16), -static_cast<int>(prec)), prec);
    return {sum, mag * rel};
  }

  // Sign at s, raising the precision while the value is inside its rounding
  // bound. 0 means indistinguishable from zero at `max_prec`.
  int sign_at(const HighFloat& s, long prec, long max_prec) const {
    for (long p = prec; p <= max_prec; p *= 2) {
      const Value r = (*this)(s, p);
      if (abs(r.v) > r.bound) return r.v.sign();
    }
    return 0;
  }

 private:
  struct Term {
    int a, b;
    HighFloat c;
  };

  const std::vector<Term>& embedded(long prec) const {
    auto it = cache_.find(prec);
    if (it != cache_.end()) return it->second;
    std::vector<Term> terms;
    for (const auto& [e, c] : poly_.terms()) terms.push_back({e.x, e.y, embed_real(c, prec)});
    return cache_.emplace(prec, std::move(terms)).first->second;
  }

  SpatialPoly poly_;
  int degree_;
  mutable std::map<long, std::vector<Term>> cache_;
};

// d/ds p(cos s, sin s) = -sin s p_x + cos s p_y, again homogeneous.
SpatialPoly angular_derivative(const SpatialPoly& p) {
  return SpatialPoly::x() * partial_derivative(p, Var::y) - SpatialPoly::y() * partial_derivative(p, Var::x);
}

struct GridScan {
  std::vector<std::pair<HighFloat, HighFloat>> brackets;
  std::vector<HighFloat> zeros;  // grid points where the value is zero at every precision tried
  std::size_t count() const { return brackets.size() + zeros.size(); }
};

GridScan scan_grid(const TrigEvaluator& f, const HighFloat& width, int grid, long prec) {
  const HighFloat step = width / HighFloat(static_cast<double>(grid), prec);
  GridScan out;
  std::optional<std::pair<HighFloat, int>> prev;
  for (int k = 1; k < grid; ++k) {
    HighFloat s = step * HighFloat(static_cast<double>(k), prec);
    const int sg = f.sign_at(s, prec, 4 * prec);
    if (sg == 0) {
      out.zeros.push_back(s);
      prev.reset();
      continue;
    }
    if (prev && prev->second != sg) out.brackets.emplace_back(prev->first, s);
    prev = std::make_pair(std::move(s), sg);
  }
  return out;
}

HighFloat bisect(const TrigEvaluator& f, HighFloat lo, HighFloat hi, long prec) {
  lo = HighFloat(lo, prec);
  hi = HighFloat(hi, prec);
  const int lo_sign = f.sign_at(lo, prec, 4 * prec);
  const HighFloat half(0.5, prec);
  const HighFloat tol(std::ldexp(1.0, -static_cast<int>(prec - 16)), prec);
  while (hi - lo > tol) {
    HighFloat mid = (lo + hi) * half;
    const int s = f.sign_at(mid, prec, 4 * prec);
    if (s == 0) return mid;
    if (s == lo_sign) lo = std::move(mid); else hi = std::move(mid);
  }
  return (lo + hi) * half;
}

// Scans p for sign changes and p' for sign changes at which p also vanishes
// (roots of even multiplicity). Returns the root count and, if requested, the roots.
std::size_t collect_roots(const TrigEvaluator& f, const TrigEvaluator& df, const HighFloat& width, int grid,
                          long prec, std::vector<HighFloat>* roots) {
  const GridScan ps = scan_grid(f, width, grid, prec);
  const GridScan ds = scan_grid(df, width, grid, prec);
  std::vector<HighFloat> found = ps.zeros;
  if (roots)
    for (const auto& [lo, hi] : ps.brackets) found.push_back(bisect(f, lo, hi, prec));
  std::size_t count = ps.count();
  const HighFloat sep(std::ldexp(1.0, -static_cast<int>(prec / 2)), prec);
  // A critical point of p is a root when p stays zero at twice the precision.
  for (const auto& [lo, hi] : ds.brackets) {
    const HighFloat s = bisect(df, lo, hi, 2 * prec);
    if (f.sign_at(s, 2 * prec, 2 * prec) != 0) continue;
    bool seen = false;
    for (const auto& [plo, phi] : ps.brackets)
      if (!(s < plo) && !(s > phi)) seen = true;
    for (const auto& z : ps.zeros)
      if (abs(z - s) < sep) seen = true;
    if (seen) continue;
    ++count;
    if (roots) found.push_back(s);
  }
  if (roots) *roots = std::move(found);
  return count;
}

double cot_sum(const CaseSpec& c, double sigma) {
  double s = 0.0;
  for (int i = 0; i < c.d; ++i)
    s += c.multiplicities[static_cast<std::size_t>(i)] / std::tan(sigma - i * std::numbers::pi / c.d);
  return s;
}

double pole_distance(const CaseSpec& c, double sigma) {
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < c.d; ++i) {
    const double t = sigma - i * std::numbers::pi / c.d;
    const double r = std::remainder(t, std::numbers::pi);
    margin = std::min(margin, std::abs(r));
  }
  return margin;
}

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ScanResult chamber_root_scan(const SpatialPoly& res, int d, long precision_bits, int initial_grid, int max_grid) {
  if (res.is_zero()) throw DomainError("chamber_root_scan: resultant is identically zero");
  if (homogeneous_degree(res).kind != Homogeneity::homogeneous)
    throw DomainError("chamber_root_scan: polynomial is not homogeneous");
  if (!admissible_d(d)) throw UnsupportedCaseError("d = " + std::to_string(d) + " is not one of 1, 2, 3, 4, 6");
  const long prec = std::max<long>(precision_bits, 64);
  const TrigEvaluator f(res);
  const TrigEvaluator df(angular_derivative(res));
  const HighFloat width = HighFloat::pi(prec) / HighFloat(static_cast<double>(d), prec);

  ScanResult out;
  int grid = std::max(initial_grid, 2);
  std::size_t count = collect_roots(f, df, width, grid, prec, nullptr);
  while (true) {
    if (grid * 2 > max_grid) {
      out.warnings.push_back("unresolved-root-cluster: root count did not stabilise by grid " +
                             std::to_string(grid));
      break;
    }
    grid *= 2;
    const std::size_t next = collect_roots(f, df, width, grid, prec, nullptr);
    if (next == count) break;
    count = next;
  }
  out.grid = grid;
  std::vector<HighFloat> roots;
  collect_roots(f, df, width, grid, prec, &roots);
  for (const auto& r : roots) out.sigmas.push_back(r.to_double());
  std::sort(out.sigmas.begin(), out.sigmas.end());
  return out;
}

LineClassification classify_line_minimality(const CaseSpec& c, double sigma) {
  if (!admissible_d(c.d)) throw UnsupportedCaseError("d = " + std::to_string(c.d) + " is not one of 1, 2, 3, 4, 6");
  const double margin = pole_distance(c, sigma);
  if (margin < kPoleMargin)
    throw DomainError("sigma = " + std::to_string(sigma) + " lies within 1e-9 of a pole of the cotangent sum");
  const double s = cot_sum(c, sigma);
  const double sn = std::sin(margin);
  const double tol = kMinimalityTolerance * c.multiplicity_sum() / (sn * sn);
  return {std::abs(s) < tol, s};
}

std::vector<double> minimal_cone_angles(const CaseSpec& c) {
  const double width = std::numbers::pi / c.d;
  constexpr int grid = 4096;
  std::vector<double> out;
  auto f = [&](double s) { return cot_sum(c, s); };
  double lo = width / grid;
  double flo = f(lo);
  for (int k = 2; k < grid; ++k) {
    const double hi = width * k / grid;
    const double fhi = f(hi);
    if (fhi == 0.0) {
      out.push_back(hi);
    } else if ((flo < 0) != (fhi < 0) && flo != 0.0) {
      std::uintmax_t iters = 200;
      const auto [a, b] = boost::math::tools::toms748_solve(
          f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
      out.push_back(0.5 * (a + b));
    }
    lo = hi;
    flo = fhi;
  }
  return out;
}

std::string certificate_conclusion(bool identically_zero, std::optional<int> degree, int expected_degree) {
  if (identically_zero) return "inconclusive-resultant-vanishes";
  if (!degree || *degree != expected_degree) return "degree-mismatch";
  return "nonexistence-certified";
}

std::vector<ResultantSample> resultant_samples(const SpatialPoly& res) {
  const std::pair<BigRational, BigRational> pts[] = {
      {BigRational(1), BigRational(1, 2)}, {BigRational(3), BigRational(1)}, {BigRational(2, 3), BigRational(1, 7)}};
  std::vector<ResultantSample> out;
  for (const auto& [x, y] : pts) out.push_back({x, y, evaluate(res, FieldScalar(x), FieldScalar(y))});
  return out;
}

Certificate emit_certificate(const CaseSpec& c, const SpatialPoly& res, const ScanResult& scan,
                             long precision_bits, double duration_ms) {
  Certificate cert;
  cert.spec = c;
  cert.expected_degree = 27 * (c.d - 1);
  cert.identically_zero = res.is_zero();
  const DegreeInfo info = homogeneous_degree(res);
  if (info.kind == Homogeneity::homogeneous) cert.resultant_degree = info.degree;
  cert.resultant_terms = res.size();
  cert.samples = resultant_samples(res);
  cert.scan_grid = scan.grid;
  cert.warnings = scan.warnings;
  for (double s : scan.sigmas) {
    RootRecord r;
    r.sigma = s;
    if (std::abs(std::cos(s)) > 1e-12) r.z = std::tan(s);
    try {
      const auto cls = classify_line_minimality(c, s);
      r.line_is_minimal = cls.minimal;
      r.line_f_sum = cls.sum;
    } catch (const DomainError& e) {
      cert.warnings.push_back(e.what());
      r.line_f_sum = std::numeric_limits<double>::quiet_NaN();
    }
    cert.roots.push_back(r);
  }
  cert.conclusion = certificate_conclusion(cert.identically_zero, cert.resultant_degree, cert.expected_degree);
  cert.precision_bits = precision_bits;
  cert.duration_ms = duration_ms;
  cert.timestamp = now_utc();
  return cert;
}

Certificate certify_case(const CaseSpec& c, long precision_bits) {
  const auto t0 = std::chrono::steady_clock::now();
  const ReductionBundle bundle = derive_bundle(c);
  const SpatialPoly res = compute_resultant(bundle);
  ScanResult scan;
  if (!res.is_zero()) scan = chamber_root_scan(res, c.d, precision_bits);
  const auto t1 = std::chrono::steady_clock::now();
  return emit_certificate(c, res, scan, precision_bits,
                          std::chrono::duration<double, std::milli>(t1 - t0).count());
}

nlohmann::json to_json(const Certificate& cert) {
  using nlohmann::json;
  json j;
  j["case"] = cert.spec.name;
  j["group"] = cert.spec.group_label;
  j["n"] = cert.spec.n;
  j["d"] = cert.spec.d;
  j["multiplicities"] = cert.spec.multiplicities;
  j["params"] = json::object();
  for (const auto& [k, v] : cert.spec.parameters) j["params"][k] = v;
  j["resultant_degree"] = cert.resultant_degree ? json(*cert.resultant_degree) : json(nullptr);
  j["expected_degree"] = cert.expected_degree;
  j["identically_zero"] = cert.identically_zero;
  j["resultant_terms"] = cert.resultant_terms;
  json samples = json::array();
  for (const auto& s : cert.samples)
    samples.push_back({{"x", s.x.to_string()}, {"y", s.y.to_string()}, {"value", s.value.to_string()}});
  j["samples"] = samples;
  json roots = json::array();
  for (const auto& r : cert.roots) {
    json jr;
    jr["sigma"] = r.sigma;
    jr["z"] = r.z ? json(*r.z) : json(nullptr);
    jr["line_is_minimal"] = r.line_is_minimal;
    jr["line_f_sum"] = std::isfinite(r.line_f_sum) ? json(r.line_f_sum) : json(nullptr);
    roots.push_back(jr);
  }
  j["roots"] = roots;
  j["scan_grid"] = cert.scan_grid;
  j["warnings"] = cert.warnings;
  j["conclusion"] = cert.conclusion;
  j["argument"] =
      "A nonzero homogeneous resultant forces y/x to be constant on any non-CMC biharmonic profile; "
      "straight profiles are biharmonic only when minimal.";
  j["precision_bits"] = cert.precision_bits;
  j["duration_ms"] = cert.duration_ms;
  j["timestamp"] = cert.timestamp;
  j["toolchain"] = {{"compiler", __VERSION__}, {"gmp", gmp_version}, {"mpfr", mpfr_get_version()}};
  return j;
}

void write_certificate(const Certificate& cert, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write certificate " + path.string());
  out << to_json(cert).dump(2) << '\n';
  if (!out) throw std::runtime_error("error writing certificate " + path.string());
}

}  // namespace biharm
