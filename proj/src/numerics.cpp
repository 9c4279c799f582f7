#include "biharm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "biharm/errors.hpp"

namespace biharm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ipow(double b, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

}  // namespace

CurveState initial_state(double x, double y, double angle) {
  return {0.0, x, y, std::cos(angle), std::sin(angle)};
}

std::string to_string(IntegrationMode m) {
  return m == IntegrationMode::minimal ? "minimal" : "biharmonic-candidate";
}

IntegrationMode parse_mode(const std::string& text) {
  if (text == "minimal") return IntegrationMode::minimal;
  if (text == "biharmonic-candidate" || text == "candidate") return IntegrationMode::biharmonic_candidate;
  throw ValidationError("unknown integration mode '" + text + "' (expected minimal or biharmonic-candidate)");
}

void IntegratorConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("step h must be positive");
  if (!(wall_epsilon > 0.0)) throw ValidationError("wall_epsilon must be positive");
}

ProfileModel::ProfileModel(const ReductionBundle& bundle, double wall_epsilon)
    : spec_(bundle.spec), eps_(wall_epsilon), qd_(bundle.qd) {
  if (!(wall_epsilon > 0.0)) throw ValidationError("wall_epsilon must be positive");
  for (int i = 0; i < spec_.d; ++i) {
    const TrigPair tp = trig_pair(spec_.d, i);
    sin_.push_back(to_double(tp.sin_val));
    cos_.push_back(to_double(tp.cos_val));
  }
  for (std::size_t j = 0; j < 4; ++j) a_[j] = FloatPoly(bundle.a_coeffs[j]);
  auto snap = [](const ReducedExpr& e) {
    FloatReduced out;
    out.qd_power = e.qd_power;
    const int deg = e.numerator.velocity_degree();
    out.coeffs.resize(static_cast<std::size_t>(deg) + 1);
    for (const auto& [q, c] : e.numerator.terms()) out.coeffs[static_cast<std::size_t>(q)] = FloatPoly(c);
    return out;
  };
  r_ = snap(bundle.r);
  r_dot_ = snap(bundle.r_dot);
  r_ddot_ = snap(bundle.r_ddot);
}

double ProfileModel::wall(int i, double x, double y) const {
  return x * sin_[static_cast<std::size_t>(i)] - y * cos_[static_cast<std::size_t>(i)];
}

bool ProfileModel::interior(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  if (!(wall(0, x, y) < -eps_)) return false;
  for (int i = 1; i < spec_.d; ++i)
    if (!(wall(i, x, y) > eps_)) return false;
  return true;
}

void ProfileModel::require_interior(double x, double y) const {
  if (!interior(x, y))
    throw BoundaryError("state (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") is not inside the chamber of " + spec_.name);
}

double ProfileModel::wall_sum(const CurveState& st) const {
  double r = 0.0;
  for (int i = 0; i < spec_.d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r += spec_.multiplicities[k] * (st.yd * sin_[k] + st.xd * cos_[k]) / wall(i, st.x, st.y);
  }
  return r;
}

double ProfileModel::log_volume_rate(const CurveState& st) const {
  double r = 0.0;
  for (int i = 0; i < spec_.d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r += spec_.multiplicities[k] * (st.xd * sin_[k] - st.yd * cos_[k]) / wall(i, st.x, st.y);
  }
  return r;
}

double ProfileModel::quadratic_term(const CurveState& st) const {
  double sum = 0.0;
  for (int i = 0; i < spec_.d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double ki = (st.yd * sin_[k] + st.xd * cos_[k]) / wall(i, st.x, st.y);
    sum += spec_.multiplicities[k] * ki * ki;
  }
  const double r = wall_sum(st);
  return r * r / 9.0 + sum;
}

double ProfileModel::eval(const FloatReduced& e, const CurveState& st) const {
  const int deg = static_cast<int>(e.coeffs.size()) - 1;
  double num = 0.0;
  for (int q = 0; q <= deg; ++q) {
    const auto& c = e.coeffs[static_cast<std::size_t>(q)];
    if (c.degree() < 0) continue;
    num += c(st.x, st.y) * ipow(st.xd, deg - q) * ipow(st.yd, q);
  }
  return num / ipow(qd_(st.x, st.y), e.qd_power);
}

double ProfileModel::r_symbolic(const CurveState& st) const { return eval(r_, st); }
double ProfileModel::r_dot_symbolic(const CurveState& st) const { return eval(r_dot_, st); }
double ProfileModel::r_ddot_symbolic(const CurveState& st) const { return eval(r_ddot_, st); }

double ProfileModel::a_form(const CurveState& st) const {
  double v = 0.0;
  for (int j = 0; j < 4; ++j) v += a_[static_cast<std::size_t>(j)](st.x, st.y) * ipow(st.xd, 3 - j) * ipow(st.yd, j);
  return v;
}

double ProfileModel::a_form_magnitude(const CurveState& st) const {
  double v = 0.0;
  for (int j = 0; j < 4; ++j)
    v += a_[static_cast<std::size_t>(j)].magnitude(st.x, st.y) * ipow(std::abs(st.xd), 3 - j) *
         ipow(std::abs(st.yd), j);
  return v;
}

std::vector<double> principal_curvatures(const CurveState& st, const ProfileModel& m, double kd) {
  m.require_interior(st.x, st.y);
  std::vector<double> k;
  k.reserve(static_cast<std::size_t>(m.d()) + 1);
  for (int i = 0; i < m.d(); ++i) {
    const auto j = static_cast<std::size_t>(i);
    k.push_back((st.yd * m.sin_[j] + st.xd * m.cos_[j]) / m.wall(i, st.x, st.y));
  }
  k.push_back(kd);
  return k;
}

double mode_curvature(const CurveState& st, const ProfileModel& m, IntegrationMode mode) {
  const double r = m.wall_sum(st);
  return mode == IntegrationMode::minimal ? -r : -r / 3.0;
}

GeometricScalars geometric_scalars(const CurveState& st, const ProfileModel& m, double kd) {
  const auto k = principal_curvatures(st, m, kd);
  GeometricScalars g;
  g.f = kd;
  g.shape_norm_sq = kd * kd;
  for (int i = 0; i < m.d(); ++i) {
    const double mi = m.spec().multiplicities[static_cast<std::size_t>(i)];
    g.f += mi * k[static_cast<std::size_t>(i)];
    g.shape_norm_sq += mi * k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)];
  }
  g.laplacian_f = kNaN;
  return g;
}

double laplacian_from_samples(double f_prev, double f, double f_next, double h, double log_volume_rate) {
  const double fdd = (f_next - 2.0 * f + f_prev) / (h * h);
  const double fd = (f_next - f_prev) / (2.0 * h);
  return -fdd - log_volume_rate * fd;
}

std::optional<CurveState> step(const CurveState& st, const ProfileModel& m, double h, IntegrationMode mode) {
  using V = std::array<double, 4>;
  auto rhs = [&](const V& u) -> std::optional<V> {
    if (!m.interior(u[0], u[1])) return std::nullopt;
    const CurveState c{0.0, u[0], u[1], u[2], u[3]};
    const double kd = mode_curvature(c, m, mode);
    return V{u[2], u[3], -kd * u[3], kd * u[2]};
  };
  auto axpy = [](const V& u, double a, const V& k) {
    return V{u[0] + a * k[0], u[1] + a * k[1], u[2] + a * k[2], u[3] + a * k[3]};
  };
  const V u0{st.x, st.y, st.xd, st.yd};
  const auto k1 = rhs(u0);
  if (!k1) return std::nullopt;
  const auto k2 = rhs(axpy(u0, h / 2, *k1));
  if (!k2) return std::nullopt;
  const auto k3 = rhs(axpy(u0, h / 2, *k2));
  if (!k3) return std::nullopt;
  const auto k4 = rhs(axpy(u0, h, *k3));
  if (!k4) return std::nullopt;
  V u1;
  for (std::size_t i = 0; i < 4; ++i) u1[i] = u0[i] + h / 6.0 * ((*k1)[i] + 2.0 * (*k2)[i] + 2.0 * (*k3)[i] + (*k4)[i]);
  if (!m.interior(u1[0], u1[1])) return std::nullopt;
  return CurveState{st.s + h, u1[0], u1[1], u1[2], u1[3]};
}

std::optional<CurveState> step_minimal(const CurveState& st, const ProfileModel& m, double h) {
  return step(st, m, h, IntegrationMode::minimal);
}

std::optional<CurveState> step_candidate(const CurveState& st, const ProfileModel& m, double h) {
  return step(st, m, h, IntegrationMode::biharmonic_candidate);
}

double NormalResidual::relative_error() const {
  const double denom = std::max({std::abs(poly_form), std::abs(ode_form), scale});
  return denom == 0.0 ? 0.0 : std::abs(poly_form - ode_form) / denom;
}

NormalResidual normal_residual(const CurveState& prev, const CurveState& st, const CurveState& next,
                               const ProfileModel& m, double h) {
  m.require_interior(st.x, st.y);
  m.require_interior(prev.x, prev.y);
  m.require_interior(next.x, next.y);
  const double r0 = m.wall_sum(prev);
  const double r1 = m.wall_sum(st);
  const double r2 = m.wall_sum(next);
  const double rd = (r2 - r0) / (2.0 * h);
  const double rdd = (r2 - 2.0 * r1 + r0) / (h * h);
  const double q = m.qd(st.x, st.y);
  NormalResidual out;
  out.poly_form = m.a_form(st);
  out.ode_form = q * q * q * (rdd + m.log_volume_rate(st) * rd - m.quadratic_term(st) * r1);
  out.scale = m.a_form_magnitude(st);
  return out;
}

std::string to_string(StopReason r) { return r == StopReason::max_steps ? "max_steps" : "boundary"; }

ProfileModel ProfileModel::with_wall_epsilon(double wall_epsilon) const {
  if (!(wall_epsilon > 0.0)) throw ValidationError("wall_epsilon must be positive");
  ProfileModel copy = *this;
  copy.eps_ = wall_epsilon;
  return copy;
}

Trajectory integrate_curve(const CurveState& init, const IntegratorConfig& cfg, const ProfileModel& model) {
  cfg.validate();
  const ProfileModel m = cfg.wall_epsilon == model.wall_epsilon() ? model : model.with_wall_epsilon(cfg.wall_epsilon);
  if (!m.interior(init.x, init.y))
    throw ValidationError("initial state (" + std::to_string(init.x) + ", " + std::to_string(init.y) +
                          ") is outside the chamber interior of " + m.spec().name);
  std::vector<CurveState> states{init};
  Trajectory t;
  for (std::size_t k = 0; k < cfg.max_steps; ++k) {
    auto next = step(states.back(), m, cfg.h, cfg.mode);
    if (!next) {
      t.stop = StopReason::boundary;
      break;
    }
    states.push_back(*next);
  }
  t.samples.reserve(states.size());
  for (const auto& st : states) {
    const auto g = geometric_scalars(st, m, mode_curvature(st, m, cfg.mode));
    TrajectorySample s{st, g.f, g.shape_norm_sq, kNaN, kNaN, kNaN};
    t.max_abs_f = std::max(t.max_abs_f, std::abs(g.f));
    t.max_speed_drift = std::max(t.max_speed_drift, std::abs(st.xd * st.xd + st.yd * st.yd - 1.0));
    t.samples.push_back(s);
  }
  for (std::size_t k = 1; k + 1 < states.size(); ++k) {
    auto& s = t.samples[k];
    s.laplacian_f = laplacian_from_samples(t.samples[k - 1].f, s.f, t.samples[k + 1].f, cfg.h,
                                           m.log_volume_rate(states[k]));
    const auto r = normal_residual(states[k - 1], states[k], states[k + 1], m, cfg.h);
    s.res_poly = r.poly_form;
    s.res_ode = r.ode_form;
    t.max_residual_rel = std::max(t.max_residual_rel, r.relative_error());
  }
  return t;
}

void write_trajectory_csv(const Trajectory& t, std::ostream& out) {
  out << "s,x,y,xd,yd,f,A2,res_poly,res_ode\n";
  out << std::setprecision(17);
  auto cell = [&](double v) {
    if (std::isfinite(v)) out << v;
  };
  for (const auto& s : t.samples) {
    out << s.state.s << ',' << s.state.x << ',' << s.state.y << ',' << s.state.xd << ',' << s.state.yd << ','
        << s.f << ',' << s.shape_norm_sq << ',';
    cell(s.res_poly);
    out << ',';
    cell(s.res_ode);
    out << '\n';
  }
}

}  // namespace biharm
