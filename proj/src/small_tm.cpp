#include "stefanrad/small_tm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stefanrad/errors.hpp"
#include "stefanrad/kernel.hpp"

namespace stefanrad {
namespace {

const double kAtanhHalf = std::atanh(0.5);

void check_below_thresholds(double eps, double c) {
  if (!(c > 0.0)) throw DomainError("small-T_M map requires c > 0");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const EpsilonThresholds t = epsilon_thresholds(c);
  const double bound = std::min(t.eps1, t.eps2);
  if (!(eps < bound)) {
    throw DomainError("eps = " + std::to_string(eps) + " is not below min(eps1, eps2) = " +
                      std::to_string(bound));
  }
}

// (f_inf + t)^4 - f_inf^4 without cancellation for small t.
double quartic_increment(double f_inf, double t) {
  const double f2 = f_inf * f_inf;
  return t * (4.0 * f2 * f_inf + t * (6.0 * f2 + t * (4.0 * f_inf + t)));
}

}  // namespace

WeightedProfile make_weighted(const Grid& grid, std::vector<double> values, double f_inf) {
  if (values.size() != grid.size()) throw ConfigError("profile size does not match the grid");
  WeightedProfile w;
  w.f_inf = f_inf;
  w.tail.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    w.tail[i] = values[i] - f_inf;
    w.weighted_seminorm = std::max(w.weighted_seminorm, std::exp(0.5 * grid.nodes[i]) * std::abs(w.tail[i]));
  }
  w.profile.grid = grid;
  w.profile.boundary_value = values.front();
  w.profile.values = std::move(values);
  w.profile.f_inf_estimate = f_inf;
  return w;
}

double weighted_distance(const WeightedProfile& a, const WeightedProfile& b) {
  const auto& y = a.profile.grid.nodes;
  double semi = 0.0;
  for (std::size_t i = 0; i < a.tail.size(); ++i) {
    semi = std::max(semi, std::exp(0.5 * y[i]) * std::abs(a.tail[i] - b.tail[i]));
  }
  return std::abs(a.f_inf - b.f_inf) + semi;
}

EpsilonThresholds epsilon_thresholds(double c, double space_A, double space_B, double theta,
                                     double c0) {
  if (!(c > 0.0)) throw DomainError("epsilon thresholds need c > 0");
  const double e = std::exp(1.0);
  const double sqrt_e = std::exp(0.5);
  EpsilonThresholds t{};
  t.space_A = space_A;
  t.space_B = space_B;
  t.eps1 = std::cbrt(c / (8.0 * std::exp(c)));
  t.B_of_c = std::exp(c) * (1.0 + (4.0 + 8.0 * e) / c);
  t.gamma = 2.5 / (1.0 - std::exp(-0.5));
  t.eps2 = std::cbrt(1.0 / (2.0 * t.B_of_c * t.gamma));

  t.decay_constant = 4.0 * t.B_of_c * sqrt_e + 2.0 * t.B_of_c * sqrt_e / (1.0 - std::exp(-0.5));
  const double pos = 1.0 / (2.0 * (c + 1.0)) +
                     4.0 * t.decay_constant / (2.0 * c + 1.0) * (16.0 * kAtanhHalf + 15.0);
  t.eps3 = std::min(1.0, std::cbrt((1.0 - c0) / pos));

  const double A = space_A;
  const double B = space_B;
  const double c1 = B / (2.0 * (c + 1.0)) + 4.0 * A * B / (2.0 * c + 1.0) * (40.0 * kAtanhHalf + 20.0);
  t.eps5 = std::cbrt((B - 1.0) / c1) / B;
  t.eps6 = std::pow(B * B * B / A * (4.0 * A * (2.0 * kAtanhHalf + 1.0) / (2.0 * c + 1.0) + B / (2.0 * (c + 1.0))),
                    -1.0 / 3.0);
  const double c2 = std::max(52.0 * A * B * B + 4.0 * B * B * B, 108.0 * B * B * B);
  t.eps7 = std::pow(2.0 * c2 / theta * (4.0 * (2.0 * kAtanhHalf + 1.0) / (2.0 * c + 1.0) + 1.0 / (c + 1.0)),
                    -1.0 / 3.0);
  t.eps4 = std::min({t.eps5, t.eps6, t.eps7});
  return t;
}

FixedPointMap::FixedPointMap(const Grid& grid, double eps, double c, SmallTmOptions opt)
    : grid_(grid), eps_(eps), c_(c), opt_(opt), kernel_(assemble_kernel(grid, 1.0)) {
  check_below_thresholds(eps, c);
}

WeightedProfile FixedPointMap::operator()(const WeightedProfile& g) const {
  const std::size_t n = grid_.size();
  if (g.tail.size() != n) throw ConfigError("profile size does not match the grid");
  const auto& y = grid_.nodes;
  const double far4 = std::pow(g.f_inf, 4);

  // Source S = K[g^4] - g^4 split as -g_inf^4 * (kernel mass left of 0)
  // plus the operator applied to the decaying part g^4 - g_inf^4.
  std::vector<double> excess(n);
  for (std::size_t i = 0; i < n; ++i) excess[i] = quartic_increment(g.f_inf, g.tail[i]);
  const std::vector<double> k_excess = kernel_.apply(excess);
  std::vector<double> source(n);
  for (std::size_t i = 0; i < n; ++i) {
    source[i] = -far4 * kernel_.left_tail[i] + k_excess[i] - excess[i];
  }

  // inner(xi) = int_xi^inf e^{-c(eta - xi)} S(eta) d eta, backward trapezoid.
  // Past y_N the source is the constant-state value -g_inf^4 T(eta), and
  // T decays like e^{-eta}.
  std::vector<double> inner(n);
  inner[n - 1] = -far4 * kernel::kernel_tail(y[n - 1]) / (c_ + 1.0);
  for (std::size_t j = n - 1; j-- > 0;) {
    const double h = y[j + 1] - y[j];
    const double decay = std::exp(-c_ * h);
    inner[j] = decay * inner[j + 1] + 0.5 * h * (source[j] + decay * source[j + 1]);
  }
  // remainder(y) = int_y^inf inner, so L[g](y) - L_inf[g] = -eps^3 remainder(y).
  std::vector<double> remainder(n);
  remainder[n - 1] = inner[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) {
    remainder[j] = remainder[j + 1] + 0.5 * (y[j + 1] - y[j]) * (inner[j] + inner[j + 1]);
  }

  const double eps3 = eps_ * eps_ * eps_;
  WeightedProfile out;
  out.f_inf = 1.0 + eps3 * remainder[0];
  out.tail.resize(n);
  std::vector<double> values(n);
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.tail[i] = -eps3 * remainder[i];
    values[i] = out.f_inf + out.tail[i];
    sup = std::max(sup, std::abs(values[i]));
    out.weighted_seminorm = std::max(out.weighted_seminorm, std::exp(0.5 * y[i]) * std::abs(out.tail[i]));
  }
  values[0] = 1.0;
  if (out.weighted_seminorm > opt_.space_A) {
    throw SpaceViolation("weighted seminorm " + std::to_string(out.weighted_seminorm) +
                         " exceeds A = " + std::to_string(opt_.space_A) + "; eps is too large");
  }
  if (sup > opt_.space_B) {
    throw SpaceViolation("sup norm " + std::to_string(sup) + " exceeds B = " + std::to_string(opt_.space_B));
  }
  out.profile.grid = grid_;
  out.profile.values = std::move(values);
  out.profile.boundary_value = 1.0;
  out.profile.f_inf_estimate = out.f_inf;
  return out;
}

WeightedProfile fixedpoint_map(const WeightedProfile& g, double eps, double c, const Grid& grid,
                               const SmallTmOptions& opt) {
  return FixedPointMap(grid, eps, c, opt)(g);
}

ContractionResult contraction_solve(double eps, double c, const Grid& grid, const SmallTmOptions& opt) {
  const FixedPointMap map(grid, eps, c, opt);
  ContractionResult result;
  result.experimental = !(eps < epsilon_thresholds(c, opt.space_A, opt.space_B).eps4);
  SolveReport& report = result.report;
  report.method = "contraction";

  WeightedProfile g = make_weighted(grid, std::vector<double>(grid.size(), 1.0), 1.0);
  double previous = -1.0;
  int strikes = 0;
  bool converged = false;
  for (std::size_t k = 1; k <= opt.max_iter; ++k) {
    WeightedProfile next = map(g);
    const double step = weighted_distance(next, g);
    report.residual_history.push_back(step);
    report.outer_iterations = k;
    if (previous > opt.noise_floor && step > opt.noise_floor) {
      const double theta = step / previous;
      report.theta_history.push_back(theta);
      if (!report.theta_hat) report.theta_hat = theta;
      strikes = theta >= 1.0 ? strikes + 1 : 0;
      if (strikes >= 3) {
        throw ContractionFailure("measured contraction ratio >= 1 for three consecutive steps (last " +
                                 std::to_string(theta) + ")");
      }
    }
    previous = step;
    g = std::move(next);
    if (step < opt.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NonconvergenceError("fixed-point iteration did not converge", g.profile.values);
  }
  report.f_inf = g.f_inf;
  report.derivative_at_zero = boundary_derivative(g.profile);
  report.plateau = true;
  result.solution = std::move(g);
  return result;
}

double decay_rate(const WeightedProfile& g) {
  const Grid& grid = g.profile.grid;
  const double lo = 0.25 * grid.right();
  const double hi = 0.75 * grid.right();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.nodes[i];
    const double d = std::abs(g.tail[i]);
    if (y < lo || y > hi || d < 1e-13) continue;
    const double ly = std::log(d);
    sx += y;
    sy += ly;
    sxx += y * y;
    sxy += y * ly;
    ++count;
  }
  if (count < 3) throw DomainError("decay_rate: too few nodes with usable decay data");
  const double m = static_cast<double>(count);
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) throw DomainError("decay_rate: degenerate sample");
  return (m * sxy - sx * sy) / denom;
}

}  // namespace stefanrad
