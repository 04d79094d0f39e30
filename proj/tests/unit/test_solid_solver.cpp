#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "stefanrad/discretization.hpp"
#include "stefanrad/errors.hpp"
#include "stefanrad/solid_solver.hpp"

using namespace stefanrad;

namespace {

WaveParams wave(double c, double T_M, double alpha = 1.0) {
  WaveParams p;
  p.c = c;
  p.T_M = T_M;
  p.alpha = alpha;
  return p;
}

Profile accelerated(double c, double T_M, const Grid& g) {
  const WaveParams p = wave(c, T_M);
  return accelerated_solve(p, g, assemble_kernel(g, p.alpha)).first;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(wave(0.0, 1.0)));
  try {
    validate(wave(-1.0, 1.0));
    FAIL("negative speed accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("no bounded") != std::string::npos);
  }
  CHECK_THROWS_AS(validate(wave(1.0, 0.0)), ConfigError);
  CHECK_THROWS_AS(validate(wave(1.0, 1.0, -2.0)), ConfigError);
}

TEST_CASE("explicit standing-wave seed solves f'' = f^4") {
  for (double T_M : {0.25, 1.0, 3.0}) {
    const C0Seed s(T_M);
    CHECK(s.A * s.A * s.A == doctest::Approx(10.0 / 9.0).epsilon(1e-14));
    CHECK(s.value(0.0) == doctest::Approx(T_M).epsilon(1e-14));
    for (double y : {0.0, 0.3, 2.0, 17.0, 40.0}) {
      CHECK(s.second_derivative(y) == doctest::Approx(std::pow(s.value(y), 4)).epsilon(1e-13));
      const double h = 1e-4 * (1.0 + y);
      CHECK((s.value(y + h) - s.value(y - h)) / (2.0 * h) == doctest::Approx(s.derivative(y)).epsilon(1e-6));
    }
  }
}

TEST_CASE("seed residual on the default grid is second order under finite differences") {
  auto fd_residual = [](std::size_t n) {
    const Grid g = build_grid(40.0, n);
    const Profile p = exact_c0_seed(1.0, g);
    const DiffOperator d = assemble_diff(g, 0.0);
    const std::vector<double> lf = d.apply(p.values);
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) r = std::max(r, std::abs(lf[i] - std::pow(p.values[i], 4)));
    return r;
  };
  CHECK(fd_residual(1000) / fd_residual(2000) >= 3.5);
}

TEST_CASE("inner solve satisfies its local problem") {
  const Grid g = build_grid(20.0, 400);
  const Profile source = constant_profile(g, 0.3);
  const Profile init = constant_profile(g, 0.5);
  const Profile f = inner_solve(source, 1.0, 1.0, g, init);
  const DiffOperator d = assemble_diff(g, 1.0);
  const std::vector<double> lf = d.apply(f.values);
  CHECK(f.values[0] == 1.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(std::abs(lf[i] - std::pow(f.values[i], 4) + 0.3) <= 1e-10);
  }
  CHECK_THROWS_AS(inner_solve(source, -1.0, 1.0, g, init), ConfigError);
}

TEST_CASE("monotone iteration invariants") {
  const Grid g = build_grid(20.0, 400);
  const WaveParams p = wave(1.0, 1.0);
  SolidOptions opt;
  opt.max_outer = 60;
  const MonotoneTrace t = monotone_trace(p, g, assemble_kernel(g), opt);
  CHECK(t.report.outer_iterations == 60);
  CHECK(t.report.monotonicity_violation <= 1e-10);
  CHECK(t.report.bound_violation <= 1e-10);
  for (double v : t.profile.values) {
    CHECK(v > 0.0);
    CHECK(v <= 1.0 + 1e-10);
  }
  CHECK(t.report.residual_history.back() < t.report.residual_history.front());

  opt.max_outer = 5;
  try {
    monotone_iterate(p, g, opt);
    FAIL("expected nonconvergence");
  } catch (const NonconvergenceError& e) {
    CHECK(e.last_iterate().size() == g.size());
  }
  CHECK_THROWS_AS(monotone_iterate(wave(0.0, 1.0), g), ConfigError);
}

TEST_CASE("monotone fixed point and Newton-Krylov agree") {
  const Grid g = build_grid(10.0, 200);
  const WaveParams p = wave(2.0, 1.0);
  const KernelOperator k = assemble_kernel(g);
  SolidOptions opt;
  opt.max_outer = 5000;
  const auto [mono, mono_report] = monotone_iterate(p, g, k, opt);
  const auto [nk, nk_report] = accelerated_solve(p, g, k);
  CHECK(nk_report.method == "newton-krylov");
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(mono.values[i] - nk.values[i]) <= 1e-8);
  CHECK(sup_norm(solid_residual(nk, p.c, k)) <= 1e-10);
}

TEST_CASE("converged waves: boundary derivative, gradient bound, certificate") {
  const Grid g = build_grid(40.0, 800);
  for (double c : {0.5, 1.0, 2.0}) {
    const WaveParams p = wave(c, 1.0);
    const auto [f, report] = accelerated_solve(p, g, assemble_kernel(g));
    CHECK(report.derivative_at_zero < 0.0);
    CHECK(max_gradient(f) <= 1.0 / c + 1e-6);
    CHECK(report.bound_violation <= 1e-10);
    CHECK(report.plateau);
    CHECK(sup_norm(certified_residual(f, c, 1.0)) <= 1e-6);
  }
}

TEST_CASE("ordering in the melting temperature") {
  const Grid g = build_grid(40.0, 400);
  const Profile low = accelerated(1.0, 0.5, g);
  const Profile high = accelerated(1.0, 1.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(low.values[i] <= high.values[i] + 1e-8);
}

TEST_CASE("standing wave stays inside the seed bracket") {
  const Grid g = build_grid(40.0, 400);
  const auto [f, report] = solve_c0(1.0, g);
  const Profile seed = exact_c0_seed(1.0, g);
  CHECK(report.bound_violation <= 1e-10);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(f.values[i] >= seed.values[i] - 1e-10);
    CHECK(f.values[i] <= 1.0 + 1e-10);
  }
  CHECK(report.derivative_at_zero < 0.0);
  CHECK(sup_norm(solid_residual(f, 0.0, assemble_kernel(g))) <= 1e-9);
}

TEST_CASE("limit estimate and oscillation") {
  const Grid g = build_grid(20.0, 200);
  Profile p = constant_profile(g, 0.8);
  const LimitEstimate flat = estimate_limit(p, 1.0);
  CHECK(flat.value == doctest::Approx(0.8));
  CHECK(flat.oscillation == 0.0);
  CHECK(flat.plateau);
  for (std::size_t i = 0; i < g.size(); ++i) p.values[i] = 0.8 + 0.1 * std::sin(3.0 * g.nodes[i]);
  CHECK_FALSE(estimate_limit(p, 1.0).plateau);
  CHECK(oscillation(p, 5.0) > 0.1);
  CHECK_THROWS_AS(oscillation(p, 19.5), ConfigError);
}
