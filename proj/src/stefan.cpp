#include "stefanrad/stefan.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stefanrad/errors.hpp"

namespace stefanrad {

LiquidProfile::LiquidProfile(double A, const WaveParams& params)
    : A_(A), c_(params.c), kappa_(params.kappa), T_M_(params.T_M) {
  validate(params);
}

double LiquidProfile::value(double y) const {
  if (y > 0.0) throw DomainError("liquid profile is defined for y <= 0");
  if (c_ == 0.0) return T_M_ - A_ * y;
  return T_M_ - A_ * kappa_ / c_ * std::expm1(c_ * y / kappa_);
}

double LiquidProfile::derivative(double y) const {
  if (y > 0.0) throw DomainError("liquid profile is defined for y <= 0");
  if (c_ == 0.0) return -A_;
  return -A_ * std::exp(c_ * y / kappa_);
}

double LiquidProfile::far_field() const {
  if (c_ == 0.0) return A_ > 0.0 ? std::numeric_limits<double>::infinity() : T_M_;
  return T_M_ + A_ * kappa_ / c_;
}

LiquidProfile liquid_profile(double A, const WaveParams& params) { return LiquidProfile(A, params); }

TravelingWave match_interface(const Profile& solid, const WaveParams& params) {
  validate(params);
  const double slope = boundary_derivative(solid);
  const double A = -(params.L * params.c + slope) / params.K;
  if (A < -1e-8) {
    throw SupercriticalSpeedError("speed c = " + std::to_string(params.c) +
                                      " exceeds c_max: liquid slope coefficient " + std::to_string(A) +
                                      " is negative",
                                  A);
  }
  const LiquidProfile liquid(A, params);
  TravelingWave w;
  w.params = params;
  w.liquid_A = A;
  w.solid = solid;
  w.solid_slope = slope;
  w.T_minus_inf = liquid.far_field();
  w.f_inf = solid.f_inf_estimate ? *solid.f_inf_estimate : estimate_limit(solid, params.T_M).value;
  w.interface_speed = -params.c;
  w.stefan_residual =
      std::abs(params.c - (params.K * liquid.derivative(0.0) - slope) / params.L);
  return w;
}

TravelingWave solve_wave(const WaveParams& params, const Grid& grid, const SolidOptions& opt) {
  validate(params);
  const KernelOperator kernel = assemble_kernel(grid, params.alpha);
  auto [solid, report] = params.c > 0.0 ? accelerated_solve(params, grid, kernel, std::nullopt, opt)
                                        : solve_c0(params.T_M, grid, opt, params.alpha);
  return match_interface(solid, params);
}

CmaxResult find_cmax(const WaveParams& params, const Grid& grid, const CmaxOptions& opt) {
  WaveParams p = params;
  p.c = 0.0;
  validate(p);
  if (opt.scan_points < 2) throw ConfigError("c_max scan needs at least two points");
  const KernelOperator kernel = assemble_kernel(grid, p.alpha);
  const double scale = std::pow(p.T_M, 4) / p.L;
  const double lo = opt.scan_low * scale;
  const double hi = opt.scan_high * scale;

  // Solves run one after another so each starts from its neighbour's profile.
  std::optional<Profile> warm;
  auto evaluate = [&](double c) {
    p.c = c;
    auto [solid, report] = accelerated_solve(p, grid, kernel, warm, opt.solid);
    warm = solid;
    return std::pair<double, Profile>{boundary_derivative(solid) + p.L * c, std::move(solid)};
  };

  CmaxResult result;
  std::vector<Profile> profiles;
  for (std::size_t k = 0; k < opt.scan_points; ++k) {
    const double c = lo * std::pow(hi / lo, static_cast<double>(k) / (opt.scan_points - 1));
    auto [psi, solid] = evaluate(c);
    result.scan.push_back({c, psi});
    profiles.push_back(std::move(solid));
  }
  std::optional<std::size_t> bracket;
  for (std::size_t k = 0; k + 1 < result.scan.size(); ++k) {
    const bool change = (result.scan[k].psi <= 0.0) != (result.scan[k + 1].psi <= 0.0);
    if (change) {
      result.sign_changes.push_back(result.scan[k].c);
      if (!bracket && result.scan[k].psi <= 0.0) bracket = k;
    }
  }
  if (!bracket) {
    throw RangeError("psi(c) has no sign change on the scanned speed range", result.scan.front().psi,
                     result.scan.back().psi);
  }

  double a = result.scan[*bracket].c;
  double fa = result.scan[*bracket].psi;
  double b = result.scan[*bracket + 1].c;
  double fb = result.scan[*bracket + 1].psi;
  double psi_a = fa;
  Profile best = profiles[*bracket];
  int side = 0;
  std::size_t it = 0;
  warm = best;
  while (std::abs(psi_a) > opt.psi_tol && it < opt.max_root_iterations) {
    ++it;
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    auto [psi, solid] = evaluate(c);
    if (psi <= 0.0) {
      a = c;
      fa = psi;
      psi_a = psi;
      best = std::move(solid);
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = psi;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * b) break;
  }
  result.c_max = a;
  result.psi = psi_a;
  result.root_iterations = it;
  result.solid = std::move(best);
  return result;
}

Profile rescale(const Profile& solid, double alpha, const std::optional<Grid>& target) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  const double factor = std::pow(alpha, 2.0 / 3.0);
  Profile out;
  out.grid = target ? *target : solid.grid.scaled(1.0 / alpha);
  out.values.resize(out.grid.size());
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    out.values[i] = factor * (target ? solid.at(alpha * out.grid.nodes[i]) : solid.values[i]);
  }
  out.boundary_value = factor * solid.boundary_value;
  out.values[0] = out.boundary_value;
  if (solid.f_inf_estimate) out.f_inf_estimate = factor * *solid.f_inf_estimate;
  return out;
}

}  // namespace stefanrad
