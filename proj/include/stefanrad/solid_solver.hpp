#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stefanrad/discretization.hpp"
#include "stefanrad/params.hpp"
#include "stefanrad/profile.hpp"

namespace stefanrad {

struct SolveReport {
  std::size_t outer_iterations = 0;
  std::vector<double> residual_history;
  double monotonicity_violation = 0.0;  // max over steps of (f_n - f_{n+1})^+
  double bound_violation = 0.0;         // max over steps of (f_n - upper bound)^+
  double derivative_at_zero = 0.0;
  double f_inf = 0.0;
  bool plateau = true;
  std::string method = "monotone";
  // Fixed-point solves only.
  std::optional<double> theta_hat;
  std::vector<double> theta_history;
};

struct SolidOptions {
  double tol = 1e-10;            // outer stop: sup |f_{n+1} - f_n|
  std::size_t max_outer = 200;
  double inner_tol = 1e-12;      // Newton residual target of each inner solve
  DiffForm form = DiffForm::central;
};

/// Newton solve of f'' - c f' - f^4 = -source, f(0) = T_M, f'(y_N) = 0,
/// starting from init. Throws NonconvergenceError carrying the last iterate
/// when damping cannot reduce the residual.
Profile inner_solve(const Profile& source, double c, double T_M, const Grid& grid,
                    const Profile& init, const SolidOptions& opt = {});

/// Monotone scheme f_0 = 0, f_{n+1} = inner_solve(K[f_n^4]). Throws
/// NonconvergenceError after opt.max_outer steps.
std::pair<Profile, SolveReport> monotone_iterate(const WaveParams& params, const Grid& grid,
                                                 const SolidOptions& opt = {});
std::pair<Profile, SolveReport> monotone_iterate(const WaveParams& params, const Grid& grid,
                                                 const KernelOperator& kernel,
                                                 const SolidOptions& opt = {});

/// Monotone scheme run to opt.max_outer steps without throwing; converged
/// records whether the increment fell below opt.tol.
struct MonotoneTrace {
  Profile profile;
  SolveReport report;
  bool converged = false;
};

MonotoneTrace monotone_trace(const WaveParams& params, const Grid& grid, const KernelOperator& kernel,
                             const SolidOptions& opt = {});

/// Newton-Krylov solve of the full nonlocal equation, started from warmup
/// monotone steps or from init when given. Same fixed point as
/// monotone_iterate with far fewer kernel applications for small c.
std::pair<Profile, SolveReport> accelerated_solve(const WaveParams& params, const Grid& grid,
                                                  const KernelOperator& kernel,
                                                  const std::optional<Profile>& init = std::nullopt,
                                                  const SolidOptions& opt = {},
                                                  std::size_t warmup = 30);

/// c = 0 problem seeded with the explicit subsolution. Monotone steps first;
/// if they have not converged after opt.max_outer steps the Newton-Krylov
/// solver finishes from the last iterate (report.method records this).
std::pair<Profile, SolveReport> solve_c0(double T_M, const Grid& grid, const SolidOptions& opt = {},
                                         double alpha = 1.0);

/// f(y) = A / (B + y)^{2/3} with A^3 = 10/9 and A / B^{2/3} = T_M; solves
/// f'' = f^4 exactly.
struct C0Seed {
  double A;
  double B;

  explicit C0Seed(double T_M);
  double value(double y) const;
  double derivative(double y) const;
  double second_derivative(double y) const;
};

Profile exact_c0_seed(double T_M, const Grid& grid);

struct LimitEstimate {
  double value;
  double oscillation;  // sup - inf over the averaging window
  bool plateau;        // oscillation <= 1e-4 T_M
};

/// Mean over the last 10% of nodes.
LimitEstimate estimate_limit(const Profile& p, double T_M);

/// sup - inf of the interpolant on [R, R+1]. Throws ConfigError when the
/// window leaves the grid.
double oscillation(const Profile& p, double R);

/// f'' - c f' - f^4 + K[f^4] at every node using the assembled operator.
/// Entry 0 is f(0) - boundary_value.
std::vector<double> solid_residual(const Profile& p, double c, const KernelOperator& kernel,
                                   DiffForm form = DiffForm::central);

/// Same residual with the kernel term from reference_kernel_apply.
std::vector<double> certified_residual(const Profile& p, double c, double alpha,
                                       DiffForm form = DiffForm::central);

/// Max over nodes of |central difference quotient|.
double max_gradient(const Profile& p);

double sup_norm(const std::vector<double>& v, std::size_t first = 0);

}  // namespace stefanrad
