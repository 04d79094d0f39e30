#pragma once

#include <cstddef>
#include <vector>

#include "stefanrad/discretization.hpp"
#include "stefanrad/profile.hpp"

namespace stefanrad {

/// Solution of F'' + (F^4)'' / alpha^2 + (z/2) F' = 0 on [-Z, Z] with
/// F(-Z) = T_int, F(Z) = T_inf. alpha = +inf drops the radiative term.
struct SelfSimilarProfile {
  Grid grid;
  std::vector<double> values;
  double T_int = 0.0;
  double T_inf = 0.0;
  double alpha = 1.0;
  double residual = 0.0;       // sup norm of the discrete equation
  std::size_t iterations = 0;  // Newton steps
  bool overshoot = false;      // values left [min, max] of the states by more than tol
};

struct SelfSimilarOptions {
  double tol = 1e-8;
  std::size_t max_newton = 100;
};

/// Damped Newton on the conservative discretization, started from the
/// alpha = inf profile. Throws ConfigError for negative states, Z < 8 or
/// n < 16 and NonconvergenceError when damping fails.
SelfSimilarProfile solve_selfsimilar(double T_int, double T_inf, double alpha, double Z = 10.0,
                                     std::size_t n = 800, const SelfSimilarOptions& opt = {});

/// Residual of the discrete self-similar equation at interior nodes.
std::vector<double> selfsimilar_residual(const Grid& grid, std::span<const double> F, double alpha);

/// Linear heat-equation profile T_int + (T_inf - T_int) (1 + erf(z/2)) / 2.
double heat_similarity_profile(double T_int, double T_inf, double z);

/// Spectral radiance at position x in the solid along direction cosine mu:
///   I = int_0^d alpha e^{-alpha tau} B_nu(T(x - tau mu)) d tau.
/// mu > 0 traces back to the interface (d = x / mu, zero incoming radiance);
/// mu < 0 runs into the solid, with T held at its last grid value past the
/// end. Throws DomainError for mu = 0, |mu| > 1 or x outside the grid.
double reconstruct_intensity(const Profile& T, double nu, double x, double mu, double alpha);

}  // namespace stefanrad
