#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "biharm/certify.hpp"
#include "biharm/errors.hpp"
#include "biharm/numerics.hpp"
#include "support.hpp"

using namespace biharm;
using biharm::testing::spec;

namespace {
ProfileModel model(const std::string& name, const ParamMap& p = {}) { return ProfileModel(derive_bundle(spec(name, p))); }
}  // namespace

TEST_CASE("U5 principal curvatures") {
  const ProfileModel m = model("U5");
  const CurveState st{0, 2, 1, 1, 0};
  const auto k = principal_curvatures(st, m, 0.25);
  REQUIRE(k.size() == 5);
  CHECK(k[0] == doctest::Approx(-1));
  CHECK(k[1] == doctest::Approx(1));
  CHECK(k[2] == doctest::Approx(0));
  CHECK(k[3] == doctest::Approx(-1.0 / 3));
  CHECK(k[4] == 0.25);
  // The normal orientation gives k_0 = -xd / y.
  const CurveState s2{0, 2, 0.5, 0.6, 0.8};
  CHECK(principal_curvatures(s2, m, 0)[0] == doctest::Approx(-0.6 / 0.5));
  CHECK_THROWS_AS(principal_curvatures({0, 1, 0, 1, 0}, m, 0), BoundaryError);
}

TEST_CASE("geometric scalars") {
  const ProfileModel m = model("SU3");
  const CurveState st = initial_state(1.0, 0.3, 0.7);
  const double r = m.wall_sum(st);
  for (double kd : {0.0, -r, -r / 3, 1.7}) {
    const auto g = geometric_scalars(st, m, kd);
    CHECK(g.f == doctest::Approx(r + kd).epsilon(1e-12));
    CHECK(g.shape_norm_sq >= 0);
  }
  const auto cand = geometric_scalars(st, m, mode_curvature(st, m, IntegrationMode::biharmonic_candidate));
  CHECK(std::abs(cand.f - 2.0 / 3 * r) < 1e-10 * (1 + std::abs(r)));
  CHECK(std::abs(geometric_scalars(st, m, mode_curvature(st, m, IntegrationMode::minimal)).f) < 1e-12);
  CHECK(m.r_symbolic(st) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("curvature from the log-derivative of the walls") {
  const ProfileModel m = model("G2");
  biharm::testing::Rng g(41);
  std::uniform_real_distribution<double> ang(0.05, std::numbers::pi / 6 - 0.05), rad(0.5, 2.0), dir(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = ang(g), rr = rad(g), t = dir(g);
    const CurveState st = initial_state(rr * std::cos(a), rr * std::sin(a), t);
    const auto k = principal_curvatures(st, m, 0);
    const double nx = -st.yd, ny = st.xd, h = 1e-5;
    for (int i = 0; i < m.d(); ++i) {
      auto lw2 = [&](double s) {
        const double w = m.wall(i, st.x + s * nx, st.y + s * ny);
        return std::log(w * w);
      };
      const double fd = -(lw2(h) - lw2(-h)) / (4 * h);
      CHECK(std::abs(fd - k[static_cast<std::size_t>(i)]) < 1e-8 * (1 + std::abs(k[static_cast<std::size_t>(i)])));
    }
  }
}

TEST_CASE("speed conservation and the f identities over long runs") {
  for (auto mode : {IntegrationMode::minimal, IntegrationMode::biharmonic_candidate}) {
    CAPTURE(to_string(mode));
    const ProfileModel m = model("SO3");
    IntegratorConfig cfg;
    cfg.mode = mode;
    const Trajectory t = integrate_curve(initial_state(1.0, 0.3, 0.7), cfg, m);
    CHECK(t.max_speed_drift < 1e-9);
    for (std::size_t k = 0; k < t.samples.size(); k += 97) {
      const auto& s = t.samples[k];
      const double r = m.wall_sum(s.state);
      if (mode == IntegrationMode::minimal) CHECK(std::abs(s.f) < 1e-10);
      else CHECK(std::abs(s.f - 2.0 / 3 * r) < 1e-10 * (1 + std::abs(r)));
    }
    for (const auto& s : t.samples) {
      CHECK(m.wall(0, s.state.x, s.state.y) < 0);
      for (int i = 1; i < m.d(); ++i) CHECK(m.wall(i, s.state.x, s.state.y) > 0);
    }
  }
}

TEST_CASE("rotational minimal curves keep f at zero") {
  const ProfileModel m = model("SOnm1");
  IntegratorConfig cfg;
  const Trajectory t = integrate_curve(initial_state(0.0, 1.0, 0.3), cfg, m);
  CHECK(t.stop == StopReason::max_steps);
  CHECK(t.samples.size() == cfg.max_steps + 1);
  CHECK(t.max_abs_f < 1e-6);
}

TEST_CASE("a radial start on the minimal cone stays on the cone") {
  const CaseSpec c = spec("SOpxSOq", {{"p", 3}, {"q", 5}});
  const ProfileModel m(derive_bundle(c));
  const double sigma = minimal_cone_angles(c).at(0);
  IntegratorConfig cfg;
  cfg.max_steps = 5000;
  const Trajectory t = integrate_curve(initial_state(std::cos(sigma), std::sin(sigma), sigma), cfg, m);
  for (const auto& s : t.samples) {
    const double off = -s.state.x * std::sin(sigma) + s.state.y * std::cos(sigma);
    CHECK(std::abs(off) < 1e-8);
  }
}

TEST_CASE("reversing the tangent retraces the curve") {
  const ProfileModel m = model("SU3");
  for (auto mode : {IntegrationMode::minimal, IntegrationMode::biharmonic_candidate}) {
    CurveState st = initial_state(1.0, 0.3, 0.7);
    const CurveState start = st;
    for (int k = 0; k < 2000; ++k) st = step(st, m, 1e-4, mode).value();
    st.xd = -st.xd;
    st.yd = -st.yd;
    for (int k = 0; k < 2000; ++k) st = step(st, m, 1e-4, mode).value();
    CHECK(std::abs(st.x - start.x) < 1e-9);
    CHECK(std::abs(st.y - start.y) < 1e-9);
    CHECK(std::abs(st.xd + start.xd) < 1e-9);
  }
}

TEST_CASE("boundary stop and degenerate runs") {
  const ProfileModel m = model("SU3");
  IntegratorConfig cfg;
  cfg.mode = IntegrationMode::biharmonic_candidate;
  // Heading straight into the wall y = 0.
  const Trajectory t = integrate_curve(initial_state(1.0, 0.01, -std::numbers::pi / 2), cfg, m);
  CHECK(t.stop == StopReason::boundary);
  CHECK(t.samples.size() < 200);
  for (const auto& s : t.samples) CHECK(m.interior(s.state.x, s.state.y));

  // A wider tolerance stops the same run earlier.
  cfg.wall_epsilon = 5e-3;
  const Trajectory early = integrate_curve(initial_state(1.0, 0.01, -std::numbers::pi / 2), cfg, m);
  CHECK(early.stop == StopReason::boundary);
  CHECK(early.samples.size() < t.samples.size());
  CHECK(early.samples.back().state.y > 5e-3);
  cfg.wall_epsilon = 1e-9;

  // The minimal flow turns back off the wall.
  cfg.mode = IntegrationMode::minimal;
  cfg.max_steps = 1000;
  const Trajectory bounce = integrate_curve(initial_state(1.0, 0.01, -std::numbers::pi / 2), cfg, m);
  CHECK(bounce.stop == StopReason::max_steps);
  CHECK(bounce.samples.back().state.yd > 0.0);
  cfg.mode = IntegrationMode::biharmonic_candidate;

  cfg.max_steps = 0;
  const Trajectory one = integrate_curve(initial_state(1.0, 0.3, 0.7), cfg, m);
  CHECK(one.samples.size() == 1);

  CHECK_THROWS_AS(integrate_curve(initial_state(1.0, -0.3, 0.7), cfg, m), ValidationError);
  CHECK_THROWS_AS(integrate_curve(initial_state(0.1, 0.3, 0.7), cfg, m), ValidationError);
  cfg.h = 0;
  CHECK_THROWS_AS(integrate_curve(initial_state(1.0, 0.3, 0.7), cfg, m), ValidationError);
  CHECK_THROWS_AS(parse_mode("adaptive"), ValidationError);
  CHECK(parse_mode("biharmonic-candidate") == IntegrationMode::biharmonic_candidate);
}

TEST_CASE("symbolic dR/ds matches central differences") {
  const ProfileModel m = model("U5");
  CurveState st = initial_state(1.0, 0.3, 0.4);
  for (int k = 0; k < 500; ++k) st = step_candidate(st, m, 1e-3).value();
  const double h = 1e-5;
  const CurveState fwd = step_candidate(st, m, h).value();
  const CurveState bwd = step_candidate(st, m, -h).value();
  const double fd = (m.wall_sum(fwd) - m.wall_sum(bwd)) / (2 * h);
  const double sym = m.r_dot_symbolic(st);
  CHECK(std::abs(fd - sym) < 1e-6 * std::max(1.0, std::abs(sym)));
}

TEST_CASE("polynomial and ODE forms of the normal residual agree") {
  const ProfileModel m = model("SO5");
  IntegratorConfig cfg;
  cfg.mode = IntegrationMode::biharmonic_candidate;
  cfg.max_steps = 2000;
  const Trajectory t = integrate_curve(initial_state(1.0, 0.2, 0.3), cfg, m);
  REQUIRE(t.samples.size() > 100);
  CHECK(t.max_residual_rel < 1e-4);
  double largest = 0;
  for (std::size_t k = 1; k + 1 < t.samples.size(); ++k) largest = std::max(largest, std::abs(t.samples[k].res_poly));
  CHECK(largest > 0);
}

TEST_CASE("trajectory CSV format") {
  const ProfileModel m = model("SU3");
  IntegratorConfig cfg;
  cfg.max_steps = 3;
  cfg.mode = IntegrationMode::biharmonic_candidate;
  const Trajectory t = integrate_curve(initial_state(1.0, 0.3, 0.7), cfg, m);
  std::ostringstream os;
  write_trajectory_csv(t, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "s,x,y,xd,yd,f,A2,res_poly,res_ode");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].substr(0, 4) == "0,1,");
  CHECK(rows[1].find("0.00010000000000000000") == std::string::npos);
  CHECK(rows[1].rfind("0.0001,", 0) == 0);
  CHECK(rows[0].substr(rows[0].size() - 2) == ",,");
  CHECK(rows[2].substr(rows[2].size() - 2) != ",,");
  // 17 significant digits survive a round trip.
  const std::string x = rows[2].substr(rows[2].find(',') + 1, rows[2].find(',', rows[2].find(',') + 1) - rows[2].find(',') - 1);
  CHECK(std::stod(x) == t.samples[2].state.x);
}
