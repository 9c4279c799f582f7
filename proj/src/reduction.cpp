#include "biharm/reduction.hpp"

#include <string>

#include "biharm/errors.hpp"
#include "biharm/field.hpp"

namespace biharm {

namespace {

void require_valid(const CaseSpec& c) {
  const auto issues = validate_case(c);
  if (issues.empty()) return;
  std::string msg = "invalid case " + c.name + ":";
  for (const auto& s : issues) msg += " " + s + ";";
  throw ValidationError(msg);
}

FieldScalar fs(long n, long d = 1) { return FieldScalar(BigRational(n, d)); }

// Q_d / w_i for every wall.
std::vector<SpatialPoly> wall_cofactors(const std::vector<SpatialPoly>& walls, const SpatialPoly& qd) {
  std::vector<SpatialPoly> out;
  out.reserve(walls.size());
  for (const auto& w : walls) {
    auto q = try_divide_exact(qd, w);
    if (!q) throw PipelineError("Q_d is not divisible by one of its walls");
    out.push_back(std::move(*q));
  }
  return out;
}

struct Core {
  std::vector<SpatialPoly> walls;
  ChamberData chamber;
  std::vector<SpatialPoly> cof;
  SpatialPoly t1, t2;
};

Core build_core(const CaseSpec& c) {
  Core k;
  k.walls = build_walls(c);
  k.chamber = build_chamber_data(c);
  k.cof = wall_cofactors(k.walls, k.chamber.qd);
  for (int i = 0; i < c.d; ++i) {
    const auto [s, co] = trig_pair(c.d, i);
    const FieldScalar m(static_cast<long>(c.multiplicities[static_cast<std::size_t>(i)]));
    k.t1 += k.cof[static_cast<std::size_t>(i)] * (m * s);
    k.t2 -= k.cof[static_cast<std::size_t>(i)] * (m * co);
  }
  return k;
}

ReducedExpr r_from(const Core& k) {
  VelocityForm num = VelocityForm::velocity(1, 0, -k.t2) + VelocityForm::velocity(0, 1, k.t1);
  return {std::move(num), 1, k.chamber.qd};
}

std::array<SpatialPoly, 3> t345_from(const CaseSpec& c, const Core& k) {
  const FieldScalar ninth = fs(1, 9);
  SpatialPoly t3 = k.t2 * k.t2 * ninth;
  SpatialPoly t4 = k.t1 * k.t2 * fs(-2, 9);
  SpatialPoly t5 = k.t1 * k.t1 * ninth;
  for (int i = 0; i < c.d; ++i) {
    const auto [s, co] = trig_pair(c.d, i);
    const FieldScalar m(static_cast<long>(c.multiplicities[static_cast<std::size_t>(i)]));
    const SpatialPoly sq = k.cof[static_cast<std::size_t>(i)] * k.cof[static_cast<std::size_t>(i)];
    t3 += sq * (m * co * co);
    t4 += sq * (fs(2) * m * s * co);
    t5 += sq * (m * s * s);
  }
  return {std::move(t3), std::move(t4), std::move(t5)};
}

std::array<SpatialPoly, 4> a_from(const Core& k, const std::array<SpatialPoly, 3>& t345, const ReducedExpr& r,
                                  const ReducedExpr& r_dot, const ReducedExpr& r_ddot) {
  const VelocityForm log_vol = VelocityForm::velocity(1, 0, k.t1) + VelocityForm::velocity(0, 1, k.t2);
  VelocityForm quad(2);
  quad.add(2, 0, t345[0]);
  quad.add(1, 1, t345[1]);
  quad.add(0, 2, t345[2]);
  VelocityForm form = r_ddot.numerator;
  form += log_vol * r_dot.numerator;
  form -= quad * r.numerator;
  if (!form.is_zero() && form.velocity_degree() != 3) throw PipelineError("normal form is not velocity-cubic");
  return {form.coefficient(3, 0), form.coefficient(2, 1), form.coefficient(1, 2), form.coefficient(0, 3)};
}

void expect_degree(const SpatialPoly& p, int degree, const std::string& what) {
  const DegreeInfo info = homogeneous_degree(p);
  if (info.kind == Homogeneity::zero || info.is(degree)) return;
  throw PipelineError(what + " has degree " + info.to_string() + ", expected homogeneous of degree " +
                      std::to_string(degree));
}

void expect_shape(const ReducedExpr& e, int k, int coeff_degree, const std::string& what) {
  if (e.qd_power != k || (!e.numerator.is_zero() && e.numerator.velocity_degree() != k))
    throw PipelineError(what + " does not have velocity degree and Q_d power " + std::to_string(k));
  for (const auto& [q, p] : e.numerator.terms()) expect_degree(p, coeff_degree, what + " coefficient");
}

}  // namespace

std::vector<SpatialPoly> build_walls(const CaseSpec& c) {
  if (!admissible_d(c.d)) throw UnsupportedCaseError("d = " + std::to_string(c.d) + " is not one of 1, 2, 3, 4, 6");
  std::vector<SpatialPoly> walls;
  for (int i = 0; i < c.d; ++i) {
    const auto [s, co] = trig_pair(c.d, i);
    walls.push_back(SpatialPoly::linear(s, -co));
  }
  return walls;
}

ChamberData build_chamber_data(const CaseSpec& c) {
  require_valid(c);
  const auto walls = build_walls(c);
  ChamberData out{SpatialPoly(1), SpatialPoly(1)};
  for (std::size_t i = 0; i < walls.size(); ++i) {
    out.qd *= walls[i];
    out.volume_sq *= pow(walls[i], 2U * static_cast<unsigned>(c.multiplicities[i]));
  }
  return out;
}

std::pair<SpatialPoly, SpatialPoly> build_T12(const CaseSpec& c) {
  Core k = build_core(c);
  return {std::move(k.t1), std::move(k.t2)};
}

ReducedExpr build_R(const CaseSpec& c) { return r_from(build_core(c)); }

std::array<SpatialPoly, 3> build_T345(const CaseSpec& c) { return t345_from(c, build_core(c)); }

std::pair<ReducedExpr, ReducedExpr> derive_R_derivatives(const CaseSpec& c) {
  const ReducedExpr r = build_R(c);
  ReducedExpr r_dot = arc_derivative(r, r);
  ReducedExpr r_ddot = arc_derivative(r_dot, r);
  return {std::move(r_dot), std::move(r_ddot)};
}

std::array<SpatialPoly, 4> assemble_A(const CaseSpec& c) {
  const Core k = build_core(c);
  const ReducedExpr r = r_from(k);
  const ReducedExpr r_dot = arc_derivative(r, r);
  const ReducedExpr r_ddot = arc_derivative(r_dot, r);
  return a_from(k, t345_from(c, k), r, r_dot, r_ddot);
}

std::array<SpatialPoly, 6> assemble_C(const std::array<SpatialPoly, 4>& a, const SpatialPoly& qd,
                                      const SpatialPoly& t1, const SpatialPoly& t2) {
  const FieldScalar third = fs(1, 3);
  const FieldScalar two_thirds = fs(2, 3);
  auto dx = [](const SpatialPoly& p) { return partial_derivative(p, Var::x); };
  auto dy = [](const SpatialPoly& p) { return partial_derivative(p, Var::y); };
  const auto& [a0, a1, a2, a3] = a;
  std::array<SpatialPoly, 6> c;
  c[0] = qd * dx(a0) + a1 * t2 * third;
  c[1] = qd * (dx(a1) + dy(a0)) + a2 * t2 * two_thirds - a1 * t1 * third;
  c[2] = qd * (dx(a2) + dy(a1)) + a3 * t2 - a2 * t1 * two_thirds + a1 * t2 * third;
  c[3] = qd * (dx(a3) + dy(a2)) - a3 * t1 + a2 * t2 * two_thirds - a1 * t1 * third;
  c[4] = qd * dy(a3) + a3 * t2 - a2 * t1 * two_thirds;
  c[5] = -(a3 * t1);
  return c;
}

std::array<SpatialPoly, 6> assemble_C(const CaseSpec& c) {
  const Core k = build_core(c);
  return assemble_C(assemble_A(c), k.chamber.qd, k.t1, k.t2);
}

ReductionBundle derive_bundle(const CaseSpec& c) {
  require_valid(c);
  const int d = c.d;
  Core k = build_core(c);
  ReductionBundle b;
  b.spec = c;
  b.walls = k.walls;
  b.qd = k.chamber.qd;
  b.volume_sq = k.chamber.volume_sq;
  b.t1 = k.t1;
  b.t2 = k.t2;
  b.t345 = t345_from(c, k);
  b.r = r_from(k);
  b.r_dot = arc_derivative(b.r, b.r);
  b.r_ddot = arc_derivative(b.r_dot, b.r);
  b.a_coeffs = a_from(k, b.t345, b.r, b.r_dot, b.r_ddot);
  b.c_coeffs = assemble_C(b.a_coeffs, b.qd, b.t1, b.t2);

  for (const auto& w : b.walls) expect_degree(w, 1, "wall");
  expect_degree(b.qd, d, "Q_d");
  expect_degree(b.volume_sq, 2 * c.multiplicity_sum(), "V^2");
  expect_degree(b.t1, d - 1, "T1");
  expect_degree(b.t2, d - 1, "T2");
  for (const auto& t : b.t345) expect_degree(t, 2 * d - 2, "T3/T4/T5");
  expect_shape(b.r, 1, d - 1, "R");
  expect_shape(b.r_dot, 2, 2 * d - 2, "dR/ds");
  expect_shape(b.r_ddot, 3, 3 * d - 3, "d2R/ds2");
  for (const auto& a : b.a_coeffs) expect_degree(a, 3 * (d - 1), "A_j");
  for (const auto& cc : b.c_coeffs) expect_degree(cc, 4 * (d - 1), "C_j");
  return b;
}

std::vector<std::pair<ReducedExpr, ReducedExpr>> wall_curvature_forms(const CaseSpec& c) {
  require_valid(c);
  const auto walls = build_walls(c);
  const SpatialPoly qd = build_chamber_data(c).qd;
  const auto cof = wall_cofactors(walls, qd);
  std::vector<std::pair<ReducedExpr, ReducedExpr>> out;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const SpatialPoly& w = walls[i];
    // -(1/2) nu(ln w^2) = -nu(w)/w with nu = -yd d/dx + xd d/dy.
    VelocityForm nu_w = VelocityForm::velocity(0, 1, -partial_derivative(w, Var::x)) +
                        VelocityForm::velocity(1, 0, partial_derivative(w, Var::y));
    VelocityForm log_form(1);
    log_form -= nu_w;
    // w(yd, -xd): the x-coefficient multiplies yd, the y-coefficient multiplies -xd.
    VelocityForm eval_form = VelocityForm::velocity(0, 1, SpatialPoly(w.coefficient(1, 0))) +
                             VelocityForm::velocity(1, 0, SpatialPoly(-w.coefficient(0, 1)));
    out.emplace_back(ReducedExpr{log_form * cof[i], 1, qd}, ReducedExpr{eval_form * cof[i], 1, qd});
  }
  return out;
}

}  // namespace biharm
