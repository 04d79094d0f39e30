#include "stefanrad/solid_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "krylov.hpp"
#include "stefanrad/errors.hpp"
#include "stefanrad/simd.hpp"

namespace stefanrad {
namespace {

constexpr std::size_t kMaxNewton = 100;
constexpr int kMaxHalvings = 30;
constexpr double kArmijo = 1e-4;

std::vector<double> fourth_power(std::span<const double> f) {
  std::vector<double> out(f.size());
  simd::pow4(f, out);
  return out;
}

// Residual of f'' - c f' - f^4 + g with the Dirichlet row f(0) - T_M.
void local_residual(const DiffOperator& diff, double T_M, std::span<const double> f,
                    std::span<const double> g, std::span<double> out) {
  diff.apply(f, out);
  out[0] = f[0] - T_M;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const double f2 = f[i] * f[i];
    out[i] += g[i] - f2 * f2;
  }
}

// Roundoff floor of the residual: the difference rows carry 1/h^2 weights.
double residual_floor(const DiffOperator& diff, double scale) {
  double m = 0.0;
  for (double d : diff.diag) m = std::max(m, std::abs(d));
  return 64.0 * std::numeric_limits<double>::epsilon() * m * std::max(1.0, scale);
}

// Damped Newton for the local problem with fixed source g. f is updated in place.
void newton_local(const DiffOperator& diff, double T_M, std::span<const double> g,
                  std::vector<double>& f, double target) {
  const std::size_t n = f.size();
  const double floor = residual_floor(diff, T_M);
  const double accept = std::max(target, floor);
  std::vector<double> res(n), trial(n), trial_res(n), diag(n), step(n);
  local_residual(diff, T_M, f, g, res);
  double norm = sup_norm(res);
  for (std::size_t it = 0; it < kMaxNewton && norm > target; ++it) {
    diag = diff.diag;
    for (std::size_t i = 1; i < n; ++i) diag[i] -= 4.0 * f[i] * f[i] * f[i];
    for (std::size_t i = 0; i < n; ++i) step[i] = -res[i];
    solve_tridiagonal(diff.lower, diag, diff.upper, step);

    double lambda = 1.0;
    double trial_norm = norm;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(0.0, f[i] + lambda * step[i]);
      local_residual(diff, T_M, trial, g, trial_res);
      trial_norm = sup_norm(trial_res);
      if (trial_norm <= (1.0 - kArmijo * lambda) * norm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      if (norm <= accept) return;
      throw NonconvergenceError("inner Newton solve stalled at residual " + std::to_string(norm), f);
    }
    f.swap(trial);
    res.swap(trial_res);
    norm = trial_norm;
    if (sup_norm(step) * lambda <= 1e-15 * std::max(1.0, T_M)) break;
  }
  if (norm > std::max(accept, 1e-10)) {
    throw NonconvergenceError("inner Newton solve did not reach tolerance, residual " +
                                  std::to_string(norm),
                              f);
  }
}

struct MonotoneRun {
  std::vector<double> f;
  SolveReport report;
  bool converged = false;
};

// Outer loop shared by monotone_iterate and solve_c0. lower, when given, is
// the subsolution that bounds the iterates from below.
MonotoneRun monotone_core(const WaveParams& params, const KernelOperator& kernel,
                          const DiffOperator& diff, std::vector<double> f,
                          const std::vector<double>* lower, const SolidOptions& opt) {
  const std::size_t n = f.size();
  MonotoneRun run;
  std::vector<double> g = kernel.apply(fourth_power(f));
  std::vector<double> guess = f;
  if (sup_norm(f) == 0.0) guess.assign(n, params.T_M);
  for (std::size_t step = 1; step <= opt.max_outer; ++step) {
    std::vector<double> next = guess;
    newton_local(diff, params.T_M, g, next, opt.inner_tol);
    double increment = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      increment = std::max(increment, std::abs(next[i] - f[i]));
      run.report.monotonicity_violation = std::max(run.report.monotonicity_violation, f[i] - next[i]);
      run.report.bound_violation = std::max(run.report.bound_violation, next[i] - params.T_M);
      if (lower) run.report.bound_violation = std::max(run.report.bound_violation, (*lower)[i] - next[i]);
    }
    std::vector<double> g_next = kernel.apply(fourth_power(next));
    double residual = 0.0;
    for (std::size_t i = 1; i < n; ++i) residual = std::max(residual, std::abs(g_next[i] - g[i]));
    run.report.residual_history.push_back(residual);
    run.report.outer_iterations = step;
    f.swap(next);
    g.swap(g_next);
    guess = f;
    if (increment < opt.tol) {
      run.converged = true;
      break;
    }
  }
  run.f = std::move(f);
  return run;
}

Profile make_profile(const Grid& grid, std::vector<double> values, double T_M) {
  Profile p;
  p.grid = grid;
  p.values = std::move(values);
  p.boundary_value = T_M;
  return p;
}

void finish_report(Profile& p, SolveReport& report, double T_M) {
  const LimitEstimate lim = estimate_limit(p, T_M);
  p.f_inf_estimate = lim.value;
  report.f_inf = lim.value;
  report.plateau = lim.plateau;
  report.derivative_at_zero = boundary_derivative(p);
}

// Full nonlocal residual F(f) = L f - f^4 + K[f^4], F_0 = f_0 - T_M.
void full_residual(const DiffOperator& diff, const KernelOperator& kernel, double T_M,
                   std::span<const double> f, std::span<double> out) {
  const std::vector<double> g = kernel.apply(fourth_power(f));
  local_residual(diff, T_M, f, g, out);
}

struct NewtonKrylovResult {
  std::size_t iterations = 0;
  std::vector<double> history;
};

// Newton on the full problem. Linear systems by GMRES right-preconditioned
// with the local tridiagonal Jacobian.
NewtonKrylovResult newton_krylov(const DiffOperator& diff, const KernelOperator& kernel,
                                 double T_M, std::vector<double>& f, double target) {
  const std::size_t n = f.size();
  const double floor = residual_floor(diff, T_M);
  NewtonKrylovResult out;
  std::vector<double> res(n), trial(n), trial_res(n), pdiag(n), weight(n);
  full_residual(diff, kernel, T_M, f, res);
  double norm = sup_norm(res);
  out.history.push_back(norm);
  for (std::size_t it = 0; it < kMaxNewton && norm > target; ++it) {
    pdiag = diff.diag;
    for (std::size_t i = 0; i < n; ++i) {
      weight[i] = i == 0 ? 0.0 : 4.0 * f[i] * f[i] * f[i];
      pdiag[i] -= weight[i];
    }
    auto precondition = [&](std::span<double> v) { solve_tridiagonal(diff.lower, pdiag, diff.upper, v); };
    std::vector<double> tmp(n), kv(n);
    auto jacobian = [&](std::span<const double> v, std::span<double> w) {
      diff.apply(v, w);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = weight[i] * v[i];
      kernel.apply(tmp, kv);
      for (std::size_t i = 1; i < n; ++i) w[i] += kv[i] - weight[i] * v[i];
    };
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -res[i];
    const std::vector<double> step = detail::gmres(jacobian, precondition, rhs, 1e-11, 40, 400);

    double lambda = 1.0;
    double trial_norm = norm;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(0.0, f[i] + lambda * step[i]);
      full_residual(diff, kernel, T_M, trial, trial_res);
      trial_norm = sup_norm(trial_res);
      if (trial_norm <= (1.0 - kArmijo * lambda) * norm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      if (norm <= std::max(target, floor)) break;
      throw NonconvergenceError("Newton-Krylov solve stalled at residual " + std::to_string(norm), f);
    }
    f.swap(trial);
    res.swap(trial_res);
    norm = trial_norm;
    out.history.push_back(norm);
    out.iterations = it + 1;
    if (sup_norm(step) * lambda <= 1e-15 * std::max(1.0, T_M)) break;
  }
  if (norm > std::max({target, floor, 1e-10})) {
    throw NonconvergenceError("Newton-Krylov solve did not reach tolerance, residual " +
                                  std::to_string(norm),
                              f);
  }
  return out;
}

}  // namespace

void validate(const WaveParams& p) {
  if (!(p.c >= 0.0)) {
    throw ConfigError("wave speed c must be >= 0: no bounded traveling wave exists for c < 0");
  }
  if (!(p.T_M > 0.0)) throw ConfigError("melting temperature T_M must be positive");
  if (!(p.alpha > 0.0)) throw ConfigError("absorption coefficient alpha must be positive");
  if (!(p.kappa > 0.0)) throw ConfigError("liquid diffusivity kappa must be positive");
  if (!(p.K > 0.0)) throw ConfigError("conductivity ratio K must be positive");
  if (!(p.L > 0.0)) throw ConfigError("latent heat L must be positive");
}

double sup_norm(const std::vector<double>& v, std::size_t first) {
  double m = 0.0;
  for (std::size_t i = first; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

Profile inner_solve(const Profile& source, double c, double T_M, const Grid& grid,
                    const Profile& init, const SolidOptions& opt) {
  if (!(T_M > 0.0)) throw ConfigError("melting temperature must be positive");
  if (!(c >= 0.0)) throw ConfigError("wave speed must be >= 0");
  if (source.size() != grid.size() || init.size() != grid.size()) {
    throw ConfigError("inner_solve: profile sizes do not match the grid");
  }
  const DiffOperator diff = assemble_diff(grid, c, opt.form);
  std::vector<double> f = init.values;
  for (double& v : f) v = std::max(0.0, v);
  newton_local(diff, T_M, source.values, f, opt.inner_tol);
  return make_profile(grid, std::move(f), T_M);
}

std::pair<Profile, SolveReport> monotone_iterate(const WaveParams& params, const Grid& grid,
                                                 const SolidOptions& opt) {
  validate(params);
  return monotone_iterate(params, grid, assemble_kernel(grid, params.alpha), opt);
}

MonotoneTrace monotone_trace(const WaveParams& params, const Grid& grid, const KernelOperator& kernel,
                             const SolidOptions& opt) {
  validate(params);
  if (!(params.c > 0.0)) throw ConfigError("monotone_iterate requires c > 0; use solve_c0 for c = 0");
  if (kernel.size() != grid.size()) throw ConfigError("kernel operator does not match the grid");
  const DiffOperator diff = assemble_diff(grid, params.c, opt.form);
  MonotoneRun run = monotone_core(params, kernel, diff, std::vector<double>(grid.size(), 0.0), nullptr, opt);
  MonotoneTrace trace;
  trace.converged = run.converged;
  trace.profile = make_profile(grid, std::move(run.f), params.T_M);
  trace.report = std::move(run.report);
  finish_report(trace.profile, trace.report, params.T_M);
  return trace;
}

std::pair<Profile, SolveReport> monotone_iterate(const WaveParams& params, const Grid& grid,
                                                 const KernelOperator& kernel,
                                                 const SolidOptions& opt) {
  MonotoneTrace trace = monotone_trace(params, grid, kernel, opt);
  if (!trace.converged) {
    throw NonconvergenceError("monotone iteration did not converge in " +
                                  std::to_string(opt.max_outer) + " steps",
                              trace.profile.values);
  }
  return {std::move(trace.profile), std::move(trace.report)};
}

std::pair<Profile, SolveReport> accelerated_solve(const WaveParams& params, const Grid& grid,
                                                  const KernelOperator& kernel,
                                                  const std::optional<Profile>& init,
                                                  const SolidOptions& opt, std::size_t warmup) {
  validate(params);
  if (kernel.size() != grid.size()) throw ConfigError("kernel operator does not match the grid");
  const DiffOperator diff = assemble_diff(grid, params.c, opt.form);
  std::vector<double> f;
  SolveReport report;
  if (init) {
    if (init->size() != grid.size()) throw ConfigError("initial profile does not match the grid");
    f = init->values;
    f[0] = params.T_M;
  } else if (params.c > 0.0) {
    SolidOptions warm = opt;
    warm.max_outer = warmup;
    MonotoneRun run = monotone_core(params, kernel, diff, std::vector<double>(grid.size(), 0.0), nullptr, warm);
    f = std::move(run.f);
    report = std::move(run.report);
  } else {
    f = exact_c0_seed(params.T_M, grid).values;
  }
  const NewtonKrylovResult nk = newton_krylov(diff, kernel, params.T_M, f, opt.inner_tol);
  report.method = "newton-krylov";
  report.outer_iterations += nk.iterations;
  report.residual_history.insert(report.residual_history.end(), nk.history.begin(), nk.history.end());
  for (double v : f) report.bound_violation = std::max(report.bound_violation, v - params.T_M);
  Profile p = make_profile(grid, std::move(f), params.T_M);
  finish_report(p, report, params.T_M);
  return {std::move(p), std::move(report)};
}

std::pair<Profile, SolveReport> solve_c0(double T_M, const Grid& grid, const SolidOptions& opt,
                                         double alpha) {
  WaveParams params;
  params.c = 0.0;
  params.T_M = T_M;
  params.alpha = alpha;
  validate(params);
  const KernelOperator kernel = assemble_kernel(grid, alpha);
  const DiffOperator diff = assemble_diff(grid, 0.0, opt.form);
  const std::vector<double> seed = exact_c0_seed(T_M, grid).values;
  MonotoneRun run = monotone_core(params, kernel, diff, seed, &seed, opt);
  if (!run.converged) {
    const NewtonKrylovResult nk = newton_krylov(diff, kernel, T_M, run.f, opt.inner_tol);
    run.report.method = "monotone+newton-krylov";
    run.report.outer_iterations += nk.iterations;
    run.report.residual_history.insert(run.report.residual_history.end(), nk.history.begin(),
                                       nk.history.end());
    for (std::size_t i = 0; i < run.f.size(); ++i) {
      run.report.bound_violation = std::max(
          {run.report.bound_violation, run.f[i] - T_M, seed[i] - run.f[i]});
    }
  }
  Profile p = make_profile(grid, std::move(run.f), T_M);
  finish_report(p, run.report, T_M);
  return {std::move(p), std::move(run.report)};
}

C0Seed::C0Seed(double T_M) {
  if (!(T_M > 0.0)) throw ConfigError("melting temperature must be positive");
  A = std::cbrt(10.0 / 9.0);
  B = std::pow(A / T_M, 1.5);
}

double C0Seed::value(double y) const { return A / std::pow(B + y, 2.0 / 3.0); }

double C0Seed::derivative(double y) const { return -2.0 / 3.0 * A / std::pow(B + y, 5.0 / 3.0); }

double C0Seed::second_derivative(double y) const {
  return 10.0 / 9.0 * A / std::pow(B + y, 8.0 / 3.0);
}

Profile exact_c0_seed(double T_M, const Grid& grid) {
  const C0Seed seed(T_M);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = seed.value(grid.nodes[i]);
  v[0] = T_M;
  return make_profile(grid, std::move(v), T_M);
}

LimitEstimate estimate_limit(const Profile& p, double T_M) {
  const std::size_t n = p.size();
  if (n == 0) throw ConfigError("estimate_limit: empty profile");
  const std::size_t window = std::max<std::size_t>(1, (n + 9) / 10);
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = n - window; i < n; ++i) {
    sum += p.values[i];
    lo = std::min(lo, p.values[i]);
    hi = std::max(hi, p.values[i]);
  }
  const double osc = hi - lo;
  return {sum / static_cast<double>(window), osc, osc <= 1e-4 * T_M};
}

double oscillation(const Profile& p, double R) {
  if (R < p.grid.left() || R + 1.0 > p.grid.right()) {
    throw ConfigError("oscillation window [R, R+1] is outside the grid");
  }
  double lo = std::min(p.at(R), p.at(R + 1.0));
  double hi = std::max(p.at(R), p.at(R + 1.0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double y = p.grid.nodes[i];
    if (y > R && y < R + 1.0) {
      lo = std::min(lo, p.values[i]);
      hi = std::max(hi, p.values[i]);
    }
  }
  return hi - lo;
}

std::vector<double> solid_residual(const Profile& p, double c, const KernelOperator& kernel,
                                   DiffForm form) {
  const DiffOperator diff = assemble_diff(p.grid, c, form);
  std::vector<double> out(p.size());
  local_residual(diff, p.boundary_value, p.values, kernel.apply(fourth_power(p.values)), out);
  return out;
}

std::vector<double> certified_residual(const Profile& p, double c, double alpha, DiffForm form) {
  const DiffOperator diff = assemble_diff(p.grid, c, form);
  const std::vector<double> g = reference_kernel_apply(p.grid, alpha, fourth_power(p.values));
  std::vector<double> out(p.size());
  local_residual(diff, p.boundary_value, p.values, g, out);
  return out;
}

double max_gradient(const Profile& p) {
  double m = 0.0;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    m = std::max(m, std::abs(p.values[j + 1] - p.values[j]) / p.grid.spacing(j));
  }
  return m;
}

}  // namespace stefanrad
