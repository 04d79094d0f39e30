#pragma once

// Exponential integral E1 and the normalized radiative kernel E(x) = E1(|x|)/2,
// which has unit mass on the real line. Everything here is pure and reentrant.

namespace stefanrad::kernel {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// E1(x) = int_x^inf e^-t / t dt for x > 0. Power series for x <= 1, modified
/// Lentz continued fraction above. Throws DomainError for x <= 0.
double e1(double x);

/// E(x) = E1(|x|)/2. Throws DomainError at x = 0 (log singularity); callers that
/// integrate across the origin use kernel_cell_integral instead.
double kernel_E(double x);

/// int_a^b E(s) ds via the antiderivative t E1(t) - e^-t, split at 0. Accepts
/// infinite endpoints. Requires a <= b.
double kernel_cell_integral(double a, double b);

/// int_a^inf E(s) ds = (e^-a - a E1(a))/2, bounded by e^-a/2. Requires a >= 0.
double kernel_tail(double a);

/// int_a^inf s E(s) ds = ((a+1) e^-a - a^2 E1(a))/4. Requires a >= 0.
double kernel_first_moment_tail(double a);

/// Zeroth and first moments of E over a finite cell [a, b].
struct CellMoments {
  double mass;   // int_a^b E(u) du
  double first;  // int_a^b u E(u) du
};

CellMoments kernel_cell_moments(double a, double b);

/// int_R E(z) e^{a z} dz = artanh(a)/a for |a| < 1 (1 at a = 0).
/// Throws DomainError for |a| >= 1 where the integral diverges.
double kernel_exp_moment(double a);

namespace si {
inline constexpr double planck_h = 6.62607015e-34;     // J s
inline constexpr double speed_of_light = 299792458.0;  // m / s
inline constexpr double boltzmann_k = 1.380649e-23;    // J / K
}  // namespace si

/// Black-body spectral radiance 2 h nu^3 / c^2 / (exp(h nu / k T) - 1) in SI
/// units. Throws DomainError unless nu > 0 and T > 0.
double planck_B(double nu, double temperature);

}  // namespace stefanrad::kernel
