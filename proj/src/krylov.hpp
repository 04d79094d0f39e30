#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "stefanrad/simd.hpp"

namespace stefanrad::detail {

/// Restarted GMRES for A x = b with right preconditioning: iterates on
/// A P^{-1} z = b and returns x = P^{-1} z. apply(v, out) computes A v;
/// precondition(v) overwrites v with P^{-1} v. Stops when the residual norm
/// falls below rtol ||b||_2 or after max_iter inner steps.
template <class Apply, class Precondition>
std::vector<double> gmres(Apply&& apply, Precondition&& precondition, const std::vector<double>& b,
                          double rtol, std::size_t restart, std::size_t max_iter) {
  const std::size_t n = b.size();
  std::vector<double> x(n, 0.0);
  const double bnorm = std::sqrt(simd::dot(b, b));
  if (bnorm == 0.0) return x;
  std::vector<std::vector<double>> basis(restart + 1, std::vector<double>(n));
  std::vector<std::vector<double>> hess(restart + 1, std::vector<double>(restart, 0.0));
  std::vector<double> cs(restart), sn(restart), g(restart + 1), w(n), z(n), r(n);
  std::size_t total = 0;
  while (total < max_iter) {
    // r = b - A x
    apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double beta = std::sqrt(simd::dot(r, r));
    if (beta <= rtol * bnorm) break;
    for (std::size_t i = 0; i < n; ++i) basis[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::size_t k = 0;
    for (; k < restart && total < max_iter; ++k, ++total) {
      z = basis[k];
      precondition(std::span<double>(z));
      apply(z, w);
      for (std::size_t j = 0; j <= k; ++j) {
        hess[j][k] = simd::dot(w, basis[j]);
        simd::axpy(-hess[j][k], basis[j], w);
      }
      hess[k + 1][k] = std::sqrt(simd::dot(w, w));
      if (hess[k + 1][k] > 0.0) {
        for (std::size_t i = 0; i < n; ++i) basis[k + 1][i] = w[i] / hess[k + 1][k];
      }
      for (std::size_t j = 0; j < k; ++j) {
        const double t = cs[j] * hess[j][k] + sn[j] * hess[j + 1][k];
        hess[j + 1][k] = -sn[j] * hess[j][k] + cs[j] * hess[j + 1][k];
        hess[j][k] = t;
      }
      const double denom = std::hypot(hess[k][k], hess[k + 1][k]);
      cs[k] = hess[k][k] / denom;
      sn[k] = hess[k + 1][k] / denom;
      hess[k][k] = denom;
      hess[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) <= rtol * bnorm) {
        ++k;
        ++total;
        break;
      }
    }
    // Back substitution for the Krylov coefficients, then x += P^{-1} V y.
    std::vector<double> y(k);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= hess[i][j] * y[j];
      y[i] = s / hess[i][i];
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t j = 0; j < k; ++j) simd::axpy(y[j], basis[j], z);
    precondition(std::span<double>(z));
    for (std::size_t i = 0; i < n; ++i) x[i] += z[i];
    if (std::abs(g[k]) <= rtol * bnorm) break;
  }
  return x;
}

}  // namespace stefanrad::detail
