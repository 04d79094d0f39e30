#include "stefanrad/selfsimilar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "stefanrad/errors.hpp"
#include "stefanrad/kernel.hpp"
#include "stefanrad/solid_solver.hpp"

namespace stefanrad {
namespace {

double radiative_weight(double alpha) { return std::isinf(alpha) ? 0.0 : 1.0 / (alpha * alpha); }

double flux_potential(double F, double w) {
  const double F2 = F * F;
  return F + w * F2 * F2;
}

// Residual with Dirichlet rows F - state at both ends.
void full_residual(const Grid& grid, std::span<const double> F, double w, double left, double right,
                   std::vector<double>& out) {
  const std::size_t n = F.size();
  out.assign(n, 0.0);
  out[0] = F[0] - left;
  out[n - 1] = F[n - 1] - right;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = grid.nodes[i] - grid.nodes[i - 1];
    const double hp = grid.nodes[i + 1] - grid.nodes[i];
    const double pm = flux_potential(F[i - 1], w);
    const double p0 = flux_potential(F[i], w);
    const double pp = flux_potential(F[i + 1], w);
    const double diffusion = 2.0 * ((pp - p0) / hp - (p0 - pm) / hm) / (hm + hp);
    const double advection = 0.5 * grid.nodes[i] * (F[i + 1] - F[i - 1]) / (hm + hp);
    out[i] = diffusion + advection;
  }
}

}  // namespace

double heat_similarity_profile(double T_int, double T_inf, double z) {
  return T_int + (T_inf - T_int) * 0.5 * (1.0 + std::erf(0.5 * z));
}

std::vector<double> selfsimilar_residual(const Grid& grid, std::span<const double> F, double alpha) {
  std::vector<double> out;
  full_residual(grid, F, radiative_weight(alpha), F.front(), F.back(), out);
  return out;
}

SelfSimilarProfile solve_selfsimilar(double T_int, double T_inf, double alpha, double Z, std::size_t n,
                                     const SelfSimilarOptions& opt) {
  if (!(T_int >= 0.0) || !(T_inf >= 0.0)) throw ConfigError("boundary states must be nonnegative");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(Z >= 8.0)) throw ConfigError("half-width Z must be at least 8");
  const Grid grid = build_interval_grid(-Z, Z, n);
  const double w = radiative_weight(alpha);
  const std::size_t m = grid.size();

  std::vector<double> F(m);
  for (std::size_t i = 0; i < m; ++i) F[i] = heat_similarity_profile(T_int, T_inf, grid.nodes[i]);
  F.front() = T_int;
  F.back() = T_inf;

  std::vector<double> res, trial_res, lower(m), diag(m), upper(m), step(m), trial(m);
  full_residual(grid, F, w, T_int, T_inf, res);
  double norm = sup_norm(res);
  std::size_t it = 0;
  for (; it < opt.max_newton && norm > 0.01 * opt.tol; ++it) {
    std::fill(lower.begin(), lower.end(), 0.0);
    std::fill(upper.begin(), upper.end(), 0.0);
    diag.front() = 1.0;
    diag.back() = 1.0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const double hm = grid.nodes[i] - grid.nodes[i - 1];
      const double hp = grid.nodes[i + 1] - grid.nodes[i];
      const double span = hm + hp;
      auto dphi = [w](double f) { return 1.0 + 4.0 * w * f * f * f; };
      const double adv = 0.5 * grid.nodes[i] / span;
      lower[i] = 2.0 / (hm * span) * dphi(F[i - 1]) - adv;
      upper[i] = 2.0 / (hp * span) * dphi(F[i + 1]) + adv;
      diag[i] = -2.0 / span * (1.0 / hp + 1.0 / hm) * dphi(F[i]);
    }
    for (std::size_t i = 0; i < m; ++i) step[i] = -res[i];
    solve_tridiagonal(lower, diag, upper, step);

    double lambda = 1.0;
    bool accepted = false;
    double trial_norm = norm;
    for (int halving = 0; halving <= 30; ++halving) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = F[i] + lambda * step[i];
      full_residual(grid, trial, w, T_int, T_inf, trial_res);
      trial_norm = sup_norm(trial_res);
      if (trial_norm <= (1.0 - 1e-4 * lambda) * norm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    F.swap(trial);
    res.swap(trial_res);
    norm = trial_norm;
  }
  if (norm > opt.tol) {
    throw NonconvergenceError("self-similar Newton solve stalled at residual " + std::to_string(norm), F);
  }
  SelfSimilarProfile out;
  out.grid = grid;
  out.T_int = T_int;
  out.T_inf = T_inf;
  out.alpha = alpha;
  out.residual = norm;
  out.iterations = it;
  const double lo = std::min(T_int, T_inf) - opt.tol;
  const double hi = std::max(T_int, T_inf) + opt.tol;
  for (double v : F) out.overshoot = out.overshoot || v < lo || v > hi;
  out.values = std::move(F);
  return out;
}

double reconstruct_intensity(const Profile& T, double nu, double x, double mu, double alpha) {
  if (mu == 0.0) throw DomainError("tangential ray: mu must be nonzero");
  if (!(std::abs(mu) <= 1.0)) throw DomainError("direction cosine must lie in [-1, 1]");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const Grid& grid = T.grid;
  if (x < grid.left() || x > grid.right()) throw DomainError("position outside the solid grid");

  auto radiance = [&](double y) {
    const double temp = T.at(y);
    return temp > 0.0 ? kernel::planck_B(nu, temp) : 0.0;
  };
  // Path length to the end of the ray inside the grid.
  const double end = mu > 0.0 ? (x - grid.left()) / mu : (grid.right() - x) / -mu;
  // Breakpoints: optical depth steps of at most 0.5 and every grid node crossed.
  std::vector<double> taus{0.0};
  for (double y : grid.nodes) {
    const double tau = (x - y) / mu;
    if (tau > 0.0 && tau < end) taus.push_back(tau);
  }
  taus.push_back(end);
  std::sort(taus.begin(), taus.end());
  const double max_step = 0.5 / alpha;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < taus.size(); ++k) {
    const double a = taus[k];
    const double b = taus[k + 1];
    if (b <= a) continue;
    const int pieces = static_cast<int>(std::ceil((b - a) / max_step));
    for (int p = 0; p < pieces; ++p) {
      const double ta = a + (b - a) * p / pieces;
      const double tb = a + (b - a) * (p + 1) / pieces;
      total += boost::math::quadrature::gauss<double, 10>::integrate(
          [&](double tau) { return alpha * std::exp(-alpha * tau) * radiance(x - tau * mu); }, ta, tb);
    }
  }
  if (mu < 0.0) total += radiance(grid.right()) * std::exp(-alpha * end);
  return total;
}

}  // namespace stefanrad
