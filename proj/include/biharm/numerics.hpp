#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "biharm/cases.hpp"
#include "biharm/poly.hpp"
#include "biharm/reduction.hpp"

namespace biharm {

struct CurveState {
  double s = 0.0;
  double x = 0.0, y = 0.0;
  double xd = 1.0, yd = 0.0;
};

/// Unit tangent at `angle` radians from the x-axis.
CurveState initial_state(double x, double y, double angle);

enum class IntegrationMode { minimal, biharmonic_candidate };

std::string to_string(IntegrationMode m);
IntegrationMode parse_mode(const std::string& text);

struct IntegratorConfig {
  double h = 1e-4;
  std::size_t max_steps = 10000;
  double wall_epsilon = 1e-9;
  IntegrationMode mode = IntegrationMode::minimal;

  /// Throws ValidationError unless h > 0 and wall_epsilon > 0.
  void validate() const;
};

/// Float snapshot of one case: wall trig values and the symbolic polynomials
/// needed for the cross-checks.
class ProfileModel {
 public:
  explicit ProfileModel(const ReductionBundle& bundle, double wall_epsilon = 1e-9);

  const CaseSpec& spec() const noexcept { return spec_; }
  int d() const noexcept { return spec_.d; }
  double wall_epsilon() const noexcept { return eps_; }
  /// Copy with a different boundary tolerance.
  ProfileModel with_wall_epsilon(double wall_epsilon) const;

  double wall(int i, double x, double y) const;
  /// True when w_0 < -eps and w_i > eps for i >= 1.
  bool interior(double x, double y) const;
  /// Throws BoundaryError unless interior(x, y).
  void require_interior(double x, double y) const;

  /// sum m_i k_i
  double wall_sum(const CurveState& st) const;
  /// (1/2) d/ds ln V^2
  double log_volume_rate(const CurveState& st) const;
  /// R^2/9 + sum m_i k_i^2
  double quadratic_term(const CurveState& st) const;

  double qd(double x, double y) const { return qd_(x, y); }
  /// R and its candidate-mode derivatives from the exact bundle.
  double r_symbolic(const CurveState& st) const;
  double r_dot_symbolic(const CurveState& st) const;
  double r_ddot_symbolic(const CurveState& st) const;
  /// A_0 xd^3 + A_1 xd^2 yd + A_2 xd yd^2 + A_3 yd^3 and its magnitude scale.
  double a_form(const CurveState& st) const;
  double a_form_magnitude(const CurveState& st) const;

 private:
  friend std::vector<double> principal_curvatures(const CurveState&, const ProfileModel&, double);

  CaseSpec spec_;
  double eps_;
  std::vector<double> sin_, cos_;
  FloatPoly qd_;
  std::array<FloatPoly, 4> a_;
  struct FloatReduced {
    std::vector<FloatPoly> coeffs;  // keyed by yd exponent
    int qd_power = 0;
  };
  FloatReduced r_, r_dot_, r_ddot_;
  double eval(const FloatReduced& e, const CurveState& st) const;
};

/// k_0 .. k_{d-1} from the walls, then k_d = kd. Throws BoundaryError near a wall.
std::vector<double> principal_curvatures(const CurveState& st, const ProfileModel& m, double kd);

/// kd prescribed by the mode: -R (minimal) or -R/3 (candidate).
double mode_curvature(const CurveState& st, const ProfileModel& m, IntegrationMode mode);

struct GeometricScalars {
  double f = 0.0;
  double shape_norm_sq = 0.0;
  double laplacian_f = 0.0;  // NaN unless neighbouring samples were supplied
};

/// f = kd + sum m_i k_i and |A|^2 = kd^2 + sum m_i k_i^2 at one state.
GeometricScalars geometric_scalars(const CurveState& st, const ProfileModel& m, double kd);
/// Delta f = -f'' - (1/2)(d/ds ln V^2) f' by central differences of samples spaced h.
double laplacian_from_samples(double f_prev, double f, double f_next, double h, double log_volume_rate);

/// One RK4 step; nullopt if any stage leaves the chamber interior.
std::optional<CurveState> step(const CurveState& st, const ProfileModel& m, double h, IntegrationMode mode);
std::optional<CurveState> step_minimal(const CurveState& st, const ProfileModel& m, double h);
std::optional<CurveState> step_candidate(const CurveState& st, const ProfileModel& m, double h);

struct NormalResidual {
  double poly_form = 0.0;  // A-form at the state
  double ode_form = 0.0;   // Q_d^3 times the finite-difference R-equation
  double scale = 0.0;      // magnitude used for relative comparisons
  double relative_error() const;
};

/// `prev` and `next` are the neighbouring samples at arclength -h and +h.
NormalResidual normal_residual(const CurveState& prev, const CurveState& st, const CurveState& next,
                               const ProfileModel& m, double h);

enum class StopReason { max_steps, boundary };
std::string to_string(StopReason r);

struct TrajectorySample {
  CurveState state;
  double f = 0.0;
  double shape_norm_sq = 0.0;
  double laplacian_f = 0.0;
  double res_poly = 0.0;
  double res_ode = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  StopReason stop = StopReason::max_steps;
  double max_abs_f = 0.0;
  double max_speed_drift = 0.0;
  double max_residual_rel = 0.0;  // over samples with both neighbours
};

/// Throws ValidationError if `init` is outside the chamber interior or the config is invalid.
Trajectory integrate_curve(const CurveState& init, const IntegratorConfig& cfg, const ProfileModel& m);

/// Header `s,x,y,xd,yd,f,A2,res_poly,res_ode`; 17 significant digits. Residual
/// columns are empty where a neighbouring sample is missing.
void write_trajectory_csv(const Trajectory& t, std::ostream& out);

}  // namespace biharm
