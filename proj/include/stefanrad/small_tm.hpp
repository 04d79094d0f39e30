#pragma once

#include <utility>
#include <vector>

#include "stefanrad/discretization.hpp"
#include "stefanrad/profile.hpp"
#include "stefanrad/solid_solver.hpp"

// Small melting temperature regime. With T_M = eps and f = eps * g the solid
// equation becomes g'' - c g' = eps^3 (g^4 - K[g^4]), g(0) = 1, and g is the
// fixed point of
//   L[g](y) = 1 + eps^3 int_0^y int_xi^inf e^{-c(eta - xi)} (K[g^4] - g^4)(eta) d eta d xi
// in the space of bounded functions converging to a limit like e^{-y/2}.
namespace stefanrad {

/// Rescaled unknown g = f / eps with its far-field limit. tail holds
/// g - g_inf computed without cancellation; it is what the weighted norm sees.
struct WeightedProfile {
  Profile profile;
  double f_inf = 1.0;
  double weighted_seminorm = 0.0;  // sup e^{y/2} |g - g_inf|
  std::vector<double> tail;
};

/// Wraps nodal values and a limit value into a WeightedProfile.
WeightedProfile make_weighted(const Grid& grid, std::vector<double> values, double f_inf);

/// ||g||_X = |g_inf| + sup e^{y/2} |g - g_inf| of the difference of two profiles.
double weighted_distance(const WeightedProfile& a, const WeightedProfile& b);

struct EpsilonThresholds {
  double eps1;  // oscillation decay
  double eps2;
  double eps3;  // positivity with c0 = 0.5
  double eps4;  // self-map and contraction, min of eps5..eps7
  double eps5;
  double eps6;
  double eps7;
  double B_of_c;
  double gamma;
  double decay_constant;  // constant in |g - g_inf| <= eps^3 A e^{-y/2}
  double space_A;
  double space_B;
};

/// Explicit smallness thresholds for speed c > 0. space_A, space_B are the
/// constants of the function space; theta the required contraction factor.
EpsilonThresholds epsilon_thresholds(double c, double space_A = 10.0, double space_B = 2.0,
                                     double theta = 0.5, double c0 = 0.5);

struct SmallTmOptions {
  double space_A = 10.0;
  double space_B = 2.0;
  double tol = 1e-10;
  std::size_t max_iter = 200;
  double noise_floor = 1e-13;  // step norms below this do not enter ratio checks
};

class FixedPointMap {
 public:
  FixedPointMap(const Grid& grid, double eps, double c, SmallTmOptions opt = {});

  /// One application of the map. Throws SpaceViolation when the image
  /// leaves the space (|g| > B or weighted seminorm > A).
  WeightedProfile operator()(const WeightedProfile& g) const;

  const Grid& grid() const noexcept { return grid_; }
  double eps() const noexcept { return eps_; }
  double speed() const noexcept { return c_; }

 private:
  Grid grid_;
  double eps_;
  double c_;
  SmallTmOptions opt_;
  KernelOperator kernel_;
};

/// Convenience wrapper that assembles the operator for a single application.
/// Throws DomainError unless eps < min(eps1, eps2).
WeightedProfile fixedpoint_map(const WeightedProfile& g, double eps, double c, const Grid& grid,
                               const SmallTmOptions& opt = {});

/// Result of contraction_solve. experimental is set when eps >= eps4, where
/// the contraction is not guaranteed by the explicit estimates.
struct ContractionResult {
  WeightedProfile solution;
  SolveReport report;
  bool experimental = false;
};

/// Picard iteration of the map from g = 1. report.theta_hat is the first
/// measured ratio ||g_2 - g_1||_X / ||g_1 - g_0||_X; theta_history holds
/// every ratio above the noise floor. Throws ContractionFailure after three
/// consecutive ratios >= 1 and DomainError unless eps < min(eps1, eps2).
ContractionResult contraction_solve(double eps, double c, const Grid& grid,
                                    const SmallTmOptions& opt = {});

/// Least-squares slope of log|g - g_inf| on [y_max/4, 3 y_max/4], skipping
/// nodes with |g - g_inf| < 1e-13. Throws DomainError with fewer than
/// three usable nodes.
double decay_rate(const WeightedProfile& g);

}  // namespace stefanrad
