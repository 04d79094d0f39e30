#pragma once

#include <optional>
#include <vector>

#include "stefanrad/discretization.hpp"
#include "stefanrad/params.hpp"
#include "stefanrad/profile.hpp"
#include "stefanrad/solid_solver.hpp"

namespace stefanrad {

/// Liquid-side temperature for y <= 0:
///   c > 0: T_M + (A/c) kappa (1 - e^{c y / kappa})
///   c = 0: T_M - A y
class LiquidProfile {
 public:
  LiquidProfile(double A, const WaveParams& params);

  double value(double y) const;
  double derivative(double y) const;
  /// Limit as y -> -inf; +inf for c = 0 with A > 0.
  double far_field() const;
  double slope_coefficient() const noexcept { return A_; }

 private:
  double A_;
  double c_;
  double kappa_;
  double T_M_;
};

LiquidProfile liquid_profile(double A, const WaveParams& params);

struct TravelingWave {
  WaveParams params;
  double liquid_A = 0.0;
  Profile solid;
  double T_minus_inf = 0.0;
  double f_inf = 0.0;
  double interface_speed = 0.0;  // ds/dt = -c
  double solid_slope = 0.0;      // solid derivative at the interface
  double stefan_residual = 0.0;  // |c - (K T1'(0-) - T2'(0+)) / L|
};

/// Slope coefficient A = -(L c + f'(0+)) / K and the assembled wave.
/// Throws ConfigError for c < 0 and SupercriticalSpeedError when A < -1e-8.
TravelingWave match_interface(const Profile& solid, const WaveParams& params);

/// Solves the solid phase with the Newton-Krylov solver and matches it.
TravelingWave solve_wave(const WaveParams& params, const Grid& grid,
                         const SolidOptions& opt = {});

struct PsiSample {
  double c;
  double psi;  // f'(0+; c) + L c
};

struct CmaxResult {
  double c_max = 0.0;
  double psi = 0.0;                 // psi(c_max) <= 0, |psi| <= psi_tol
  std::vector<PsiSample> scan;      // geometric scan, sorted by c
  std::vector<double> sign_changes; // left ends of every bracketed change
  std::size_t root_iterations = 0;
  Profile solid;                    // solid profile at c_max
};

struct CmaxOptions {
  std::size_t scan_points = 40;
  double scan_low = 1e-3;   // in units of T_M^4 / L
  double scan_high = 10.0;
  double psi_tol = 1e-8;
  std::size_t max_root_iterations = 200;
  SolidOptions solid;
};

/// Largest admissible speed: scans psi(c) on a geometric grid, brackets the
/// smallest change from negative to positive and refines it by regula falsi
/// (Illinois variant). params.c is ignored. Throws RangeError when the scan
/// finds no sign change.
CmaxResult find_cmax(const WaveParams& params, const Grid& grid, const CmaxOptions& opt = {});

/// Maps a solution of the alpha = 1 problem (speed c / alpha, boundary value
/// T_M alpha^{-2/3}) to the alpha problem: f(y) = alpha^{2/3} g(alpha y).
/// Without a target grid the source grid is scaled by 1 / alpha.
Profile rescale(const Profile& solid, double alpha, const std::optional<Grid>& target = std::nullopt);

}  // namespace stefanrad
