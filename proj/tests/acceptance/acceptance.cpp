// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "stefanrad/config.hpp"
#include "stefanrad/discretization.hpp"
#include "stefanrad/errors.hpp"
#include "stefanrad/kernel.hpp"
#include "stefanrad/selfsimilar.hpp"
#include "stefanrad/small_tm.hpp"
#include "stefanrad/solid_solver.hpp"
#include "stefanrad/stefan.hpp"
#include "stefanrad/verify.hpp"

using namespace stefanrad;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// First verified value on the default grid (y_max = 40, n = 2000).
constexpr double kFrozenCmax = 0.189580746834983;
constexpr double kFrozenCmaxTol = 1e-7;

struct Outcome {
  bool pass = true;
  std::string summary;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!summary.empty()) summary += "; ";
    summary += what + (ok ? "" : " [x]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

WaveParams wave(double c, double T_M, double alpha = 1.0) {
  WaveParams p;
  p.c = c;
  p.T_M = T_M;
  p.alpha = alpha;
  return p;
}

Grid default_grid(double c = 1.0) { return build_grid(40.0 / std::min(1.0, c), 2000); }

// Oracle: int E(z) e^{az} dz by adaptive quadrature with Boost's E1.
double exp_moment_quadrature(double a) {
  boost::math::quadrature::exp_sinh<double> q;
  auto half = [&](double sign) {
    return q.integrate([&](double z) {
      if (z <= 0.0 || z > 700.0) return 0.0;
      return 0.5 * boost::math::expint(1, z) * std::exp(sign * a * z);
    });
  };
  return half(1.0) + half(-1.0);
}

Outcome kernel_identities() {
  Outcome o;
  double norm = 0.0;
  for (double half : {5.0, 10.0, 20.0}) {
    double sum = 2.0 * kernel::kernel_tail(half);
    const int cells = 64;
    for (int j = 0; j < cells; ++j) {
      sum += kernel::kernel_cell_integral(-half + 2.0 * half * j / cells, -half + 2.0 * half * (j + 1) / cells);
    }
    norm = std::max(norm, std::abs(sum - 1.0));
  }
  o.check(norm <= 1e-10, "normalization error " + num(norm));
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  double tail = -kInf;
  for (int k = 0; k < 1000; ++k) {
    const double a = dist(rng);
    tail = std::max(tail, kernel::kernel_tail(a) - 0.5 * std::exp(-a));
  }
  o.check(tail <= 0.0, "max tail excess " + num(tail));
  double moment = 0.0;
  for (double a : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) {
    moment = std::max(moment, std::abs(kernel::kernel_exp_moment(a) - exp_moment_quadrature(a)));
  }
  o.check(moment <= 1e-8, "moment error " + num(moment));
  return o;
}

Outcome exact_c0() {
  Outcome o;
  const Grid g = build_grid(40.0, 2000);
  const C0Seed seed(1.0);
  double r = 0.0;
  for (double y : g.nodes) r = std::max(r, std::abs(seed.second_derivative(y) - std::pow(seed.value(y), 4)));
  o.check(r <= 1e-6, "sup |f'' - f^4| " + num(r));
  return o;
}

Outcome monotone_existence() {
  Outcome o;
  const Grid g = default_grid();
  const WaveParams p = wave(1.0, 1.0);
  SolidOptions opt;
  opt.max_outer = 200;
  const MonotoneTrace t = monotone_trace(p, g, assemble_kernel(g), opt);
  o.check(t.converged, "converged within 200 steps (last increment " +
                           num(t.report.residual_history.empty() ? 0.0 : t.report.residual_history.back()) + ")");
  o.check(t.report.monotonicity_violation <= 1e-10, "monotonicity violation " + num(t.report.monotonicity_violation));
  double lo = kInf, hi = -kInf;
  for (double v : t.profile.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  o.check(lo > 0.0 && hi <= 1.0 + 1e-10, "range [" + num(lo) + ", " + num(hi) + "]");
  o.check(t.report.derivative_at_zero < 0.0, "f'(0+) " + num(t.report.derivative_at_zero));
  const double cert = sup_norm(certified_residual(t.profile, p.c, p.alpha));
  o.check(cert <= 1e-6, "independent residual " + num(cert));
  return o;
}

Outcome tm_monotonicity() {
  Outcome o;
  const Grid g = default_grid();
  const KernelOperator k = assemble_kernel(g);
  std::vector<Profile> profiles;
  for (double T_M : {0.25, 0.5, 1.0}) profiles.push_back(accelerated_solve(wave(1.0, T_M), g, k).first);
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < profiles.size(); ++j) {
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, profiles[j].values[i] - profiles[j + 1].values[i]);
  }
  o.check(worst <= 1e-8, "max ordering violation " + num(worst));
  return o;
}

Outcome rescaling_law() {
  Outcome o;
  const double alpha = 2.0;
  const Grid dg = build_grid(20.0, 2000);
  const Profile direct = accelerated_solve(wave(1.0, 1.0, alpha), dg, assemble_kernel(dg, alpha)).first;
  const Grid ug = build_grid(40.0, 2000);
  const WaveParams unit = wave(1.0 / alpha, std::pow(alpha, -2.0 / 3.0));
  const Profile scaled = rescale(accelerated_solve(unit, ug, assemble_kernel(ug)).first, alpha, dg);
  double worst = 0.0;
  for (std::size_t i = 0; i < dg.size(); ++i) worst = std::max(worst, std::abs(direct.values[i] - scaled.values[i]));
  o.check(worst <= 1e-5, "sup difference " + num(worst));
  return o;
}

Outcome small_tm_contraction() {
  Outcome o;
  const double eps = 0.05;
  const Grid g = default_grid();
  const ContractionResult r = contraction_solve(eps, 1.0, g);
  const double theta = r.report.theta_hat.value_or(kInf);
  o.check(theta < 1.0, "theta_hat " + num(theta));
  const double rate = decay_rate(r.solution);
  o.check(rate <= -0.45, "decay exponent " + num(rate));
  double lo = kInf;
  for (double v : r.solution.profile.values) lo = std::min(lo, v);
  o.check(lo >= 0.5, "min scaled profile " + num(lo));
  o.check(r.solution.f_inf > 0.0, "f_inf " + num(r.solution.f_inf));

  const WaveParams p = wave(1.0, eps);
  const KernelOperator k = assemble_kernel(g);
  MonotoneTrace t = monotone_trace(p, g, k);
  Profile direct = std::move(t.profile);
  if (!t.converged) direct = accelerated_solve(p, g, k, direct).first;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(direct.values[i] - eps * r.solution.profile.values[i]));
  }
  o.check(worst <= 1e-5, std::string("agreement with the direct solve") + (t.converged ? "" : " (finished by Newton)") +
                             " " + num(worst));
  return o;
}

Outcome stefan_matching() {
  Outcome o;
  const Grid g = default_grid();
  const WaveParams base = wave(0.0, 1.0);
  const CmaxResult r = find_cmax(base, g);
  o.check(std::abs(r.psi) <= 1e-8, "c_max " + std::to_string(r.c_max) + ", |psi| " + num(std::abs(r.psi)));
  o.check(std::abs(r.c_max - kFrozenCmax) <= kFrozenCmaxTol, "regression constant offset " + num(r.c_max - kFrozenCmax));
  double residual = 0.0;
  double min_A = kInf;
  for (double frac : {0.2, 0.4, 0.6, 0.8}) {
    const TravelingWave w = solve_wave(wave(frac * r.c_max, 1.0), g);
    residual = std::max(residual, w.stefan_residual);
    min_A = std::min(min_A, w.liquid_A);
  }
  const TravelingWave top = match_interface(r.solid, wave(r.c_max, 1.0));
  residual = std::max(residual, top.stefan_residual);
  min_A = std::min(min_A, top.liquid_A);
  o.check(residual <= 1e-8, "max Stefan residual " + num(residual));
  o.check(min_A >= 0.0, "min A " + num(min_A));
  bool rejected = false;
  try {
    solve_wave(wave(1.2 * r.c_max, 1.0), g);
  } catch (const SupercriticalSpeedError&) {
    rejected = true;
  }
  o.check(rejected, "1.2 c_max rejected");
  return o;
}

Outcome selfsimilar_oracle() {
  Outcome o;
  auto erf_error = [](std::size_t n) {
    const SelfSimilarProfile s = solve_selfsimilar(1.0, 0.0, kInf, 10.0, n);
    double err = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      err = std::max(err, std::abs(s.values[i] - heat_similarity_profile(1.0, 0.0, s.grid.nodes[i])));
    }
    return err;
  };
  const double fine = erf_error(800);
  const double coarse = erf_error(400);
  o.check(fine <= 1e-4, "erf error " + num(fine));
  double flat = 0.0;
  for (double alpha : {1.0, kInf}) {
    for (double v : solve_selfsimilar(0.7, 0.7, alpha).values) flat = std::max(flat, std::abs(v - 0.7));
  }
  o.check(flat == 0.0, "constant-state error " + num(flat));
  o.check(coarse / fine >= 3.0, "refinement ratio " + num(coarse / fine));
  return o;
}

Outcome intensity() {
  Outcome o;
  const double temp = 500.0;
  const double nu = 2e13;
  const double B = kernel::planck_B(nu, temp);
  const Profile flat = constant_profile(build_grid(10.0, 200), temp);
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 4.0}) {
    for (double x : {0.1, 1.0, 6.0}) {
      for (double mu : {0.25, 0.5, 1.0}) {
        const double exact = B * -std::expm1(-alpha * x / mu);
        worst = std::max(worst, std::abs(reconstruct_intensity(flat, nu, x, mu, alpha) - exact) / B);
      }
    }
  }
  o.check(worst <= 1e-8, "relative error " + num(worst));
  const double at_interface = reconstruct_intensity(flat, nu, 0.0, 0.8, 1.0);
  o.check(at_interface == 0.0, "value at the interface " + num(at_interface));
  return o;
}

Outcome determinism() {
  Outcome o;
  const RunConfig cfg = parse_config(R"({"n": 400})", Command::verify);
  const std::string first = report_json(run_verify(cfg));
  const std::string second = report_json(run_verify(cfg));
  o.check(first == second, "reports of " + std::to_string(first.size()) + " bytes identical");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // runtime bound, inf when none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "kernel identities", 1.0, kernel_identities},
      {2, "exact c = 0 solution", 1.0, exact_c0},
      {3, "monotone existence", 30.0, monotone_existence},
      {4, "T_M monotonicity", 90.0, tm_monotonicity},
      {5, "rescaling law", 60.0, rescaling_law},
      {6, "small T_M contraction", 30.0, small_tm_contraction},
      {7, "Stefan matching", 300.0, stefan_matching},
      {8, "self-similar oracle", 30.0, selfsimilar_oracle},
      {9, "intensity reconstruction", 1.0, intensity},
      {10, "determinism", kInf, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("error: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (std::isfinite(c.budget_s)) o.check(seconds < c.budget_s, "runtime " + num(seconds) + " s < " + num(c.budget_s) + " s");
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.summary.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
