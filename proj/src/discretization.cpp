#include "stefanrad/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "stefanrad/errors.hpp"
#include "stefanrad/kernel.hpp"
#include "stefanrad/profile.hpp"
#include "stefanrad/simd.hpp"

namespace stefanrad {
namespace {

// E1 underflows past this argument; cells beyond it carry no weight.
constexpr double kNegligible = 740.0;

struct TailPair {
  double mass;   // int_a^inf E
  double first;  // int_a^inf s E(s) ds
};

TailPair tails(double a) {
  if (a == 0.0) return {0.5, 0.25};
  if (a >= kNegligible) return {0.0, 0.0};
  const double ex = std::exp(-a);
  const double e1 = kernel::e1(a);
  return {0.5 * (ex - a * e1), 0.25 * ((a + 1.0) * ex - a * a * e1)};
}

}  // namespace

double Grid::max_spacing() const {
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) h = std::max(h, spacing(i));
  return h;
}

Grid Grid::scaled(double factor) const {
  if (!(factor > 0.0)) throw ConfigError("grid scale factor must be positive");
  Grid g = *this;
  for (double& y : g.nodes) y *= factor;
  return g;
}

Grid build_grid(double y_max, std::size_t n, double stretch) {
  if (!(y_max > 0.0)) throw ConfigError("y_max must be positive");
  if (n < kMinCells) throw ConfigError("grid needs at least 16 cells, got " + std::to_string(n));
  if (!(stretch >= 1.0)) throw ConfigError("stretch must be >= 1");
  Grid g;
  g.stretch = stretch;
  g.nodes.resize(n + 1);
  if (stretch == 1.0) {
    for (std::size_t i = 0; i <= n; ++i) g.nodes[i] = y_max * static_cast<double>(i) / n;
  } else {
    const double h0 = y_max * (stretch - 1.0) / (std::pow(stretch, static_cast<double>(n)) - 1.0);
    double h = h0;
    g.nodes[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      g.nodes[i] = g.nodes[i - 1] + h;
      h *= stretch;
    }
  }
  g.nodes[n] = y_max;
  validate(g);
  return g;
}

Grid build_interval_grid(double left, double right, std::size_t n) {
  if (!(right > left)) throw ConfigError("interval grid needs left < right");
  if (n < kMinCells) throw ConfigError("grid needs at least 16 cells, got " + std::to_string(n));
  Grid g;
  g.nodes.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    g.nodes[i] = left + (right - left) * static_cast<double>(i) / n;
  }
  g.nodes[n] = right;
  return g;
}

void validate(const Grid& grid) {
  if (grid.nodes.size() < kMinCells + 1) throw ConfigError("grid needs at least 16 cells");
  for (std::size_t i = 0; i + 1 < grid.nodes.size(); ++i) {
    if (!(grid.nodes[i + 1] > grid.nodes[i])) {
      throw ConfigError("grid nodes must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

KernelOperator::KernelOperator(std::size_t n, double alpha)
    : right_tail(n, 0.0), left_tail(n, 0.0), n_(n), alpha_(alpha), weights_(n * n, 0.0) {}

void KernelOperator::apply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != n_ || out.size() != n_) throw std::invalid_argument("KernelOperator: size mismatch");
  simd::matvec(weights_, v, out);
  const double far = v[n_ - 1];
  for (std::size_t i = 0; i < n_; ++i) out[i] += right_tail[i] * far;
}

std::vector<double> KernelOperator::apply(std::span<const double> v) const {
  std::vector<double> out(n_);
  apply(v, out);
  return out;
}

double KernelOperator::row_mass(std::size_t r) const {
  double s = 0.0;
  for (double w : row(r)) s += w;
  return s + right_tail[r] + left_tail[r];
}

void KernelOperator::scale_weights(double factor) {
  for (double& w : weights_) w *= factor;
}

KernelOperator assemble_kernel(const Grid& grid, double alpha) {
  validate(grid);
  if (!(alpha > 0.0)) throw ConfigError("absorption coefficient must be positive");
  const std::size_t n = grid.size();
  const auto& y = grid.nodes;
  KernelOperator op(n, alpha);
  std::vector<double> u(n);
  std::vector<TailPair> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      u[k] = alpha * (y[k] - y[i]);
      t[k] = tails(std::abs(u[k]));
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double a = u[j];
      const double b = u[j + 1];
      if (std::min(std::abs(a), std::abs(b)) >= kNegligible) continue;
      double mass, first;
      if (j >= i) {
        mass = t[j].mass - t[j + 1].mass;
        first = t[j].first - t[j + 1].first;
      } else {
        mass = t[j + 1].mass - t[j].mass;
        first = t[j].first - t[j + 1].first;
      }
      const double width = b - a;
      op.weight(i, j) += std::max(0.0, (b * mass - first) / width);
      op.weight(i, j + 1) += std::max(0.0, (first - a * mass) / width);
    }
    op.right_tail[i] = t[n - 1].mass;
    op.left_tail[i] = t[0].mass;
  }
  return op;
}

std::vector<double> reference_kernel_apply(const Grid& grid, double alpha,
                                           std::span<const double> v) {
  validate(grid);
  const std::size_t n = grid.size();
  if (v.size() != n) throw std::invalid_argument("reference_kernel_apply: size mismatch");
  using boost::math::quadrature::gauss;
  auto kernel = [](double s) { return 0.5 * boost::math::expint(1, std::abs(s)); };
  boost::math::quadrature::tanh_sinh<double> singular;
  boost::math::quadrature::exp_sinh<double> semi_infinite;
  constexpr double kCutoff = 36.0;
  const auto& y = grid.nodes;
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double a = alpha * (y[j] - y[i]);
      const double b = alpha * (y[j + 1] - y[i]);
      const double dist = std::min(std::abs(a), std::abs(b));
      if (dist > kCutoff) continue;
      const double width = b - a;
      const double va = v[j];
      const double vb = v[j + 1];
      // Interpolant in the scaled offset u = alpha (eta - y_i).
      auto interp = [&](double s) { return va + (vb - va) * (s - a) / width; };
      if (j == i || j + 1 == i) {
        // Integrate in the distance from the singular endpoint so that the
        // abscissae never round onto the singularity.
        const bool left_singular = (j == i);
        auto g = [&](double s) {
          if (s <= 0.0) return 0.0;
          const double pos = left_singular ? a + s : b - s;
          return kernel(s) * interp(pos);
        };
        acc += singular.integrate(g, 0.0, width);
      } else {
        auto g = [&](double s) { return kernel(s) * interp(s); };
        acc += dist < 1.0 ? gauss<double, 10>::integrate(g, a, b)
                          : gauss<double, 5>::integrate(g, a, b);
      }
    }
    const double far = alpha * (y[n - 1] - y[i]);
    if (far <= kCutoff) {
      acc += v[n - 1] * semi_infinite.integrate([&](double s) { return kernel(far + s); });
    }
    out[i] = acc;
  }
  return out;
}

void DiffOperator::apply(std::span<const double> f, std::span<double> out) const {
  const std::size_t n = size();
  if (f.size() != n || out.size() != n) throw std::invalid_argument("DiffOperator: size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * f[i];
    if (i > 0) s += lower[i] * f[i - 1];
    if (i + 1 < n) s += upper[i] * f[i + 1];
    out[i] = s;
  }
}

std::vector<double> DiffOperator::apply(std::span<const double> f) const {
  std::vector<double> out(size());
  apply(f, out);
  return out;
}

DiffOperator assemble_diff(const Grid& grid, double c, DiffForm form) {
  validate(grid);
  const std::size_t n = grid.size();
  const auto& y = grid.nodes;
  DiffOperator op;
  op.lower.assign(n, 0.0);
  op.diag.assign(n, 0.0);
  op.upper.assign(n, 0.0);
  op.diag[0] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = y[i] - y[i - 1];
    const double hp = y[i + 1] - y[i];
    const double span = hm + hp;
    if (form == DiffForm::central) {
      op.lower[i] = (2.0 + c * hp) / (hm * span);
      op.upper[i] = (2.0 - c * hm) / (hp * span);
      op.diag[i] = -2.0 / (hm * hp) - c * (hp - hm) / (hm * hp);
    } else {
      op.lower[i] = 2.0 * std::exp(0.5 * c * hm) / (span * hm);
      op.upper[i] = 2.0 * std::exp(-0.5 * c * hp) / (span * hp);
      op.diag[i] = -(op.lower[i] + op.upper[i]);
    }
  }
  const double h = y[n - 1] - y[n - 2];
  const double ghost = form == DiffForm::central ? 2.0 / (h * h) : 2.0 * std::exp(0.5 * c * h) / (h * h);
  op.lower[n - 1] = ghost;
  op.diag[n - 1] = -ghost;
  return op;
}

double boundary_derivative(const Grid& grid, std::span<const double> values) {
  if (grid.size() < 3 || values.size() < 3) {
    throw ConfigError("boundary_derivative needs at least three nodes");
  }
  const double h1 = grid.nodes[1] - grid.nodes[0];
  const double h2 = grid.nodes[2] - grid.nodes[1];
  const double span = h1 + h2;
  return -(2.0 * h1 + h2) / (h1 * span) * values[0] + span / (h1 * h2) * values[1] -
         h1 / (h2 * span) * values[2];
}

double boundary_derivative(const Profile& p) { return boundary_derivative(p.grid, p.values); }

Profile constant_profile(const Grid& grid, double value) {
  Profile p;
  p.grid = grid;
  p.values.assign(grid.size(), value);
  p.boundary_value = value;
  return p;
}

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw std::invalid_argument("solve_tridiagonal: size mismatch");
  }
  std::vector<double> cprime(n);
  double denom = diag[0];
  if (denom == 0.0) throw NonconvergenceError("tridiagonal system is singular", {});
  cprime[0] = upper[0] / denom;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * cprime[i - 1];
    if (denom == 0.0) throw NonconvergenceError("tridiagonal system is singular", {});
    cprime[i] = upper[i] / denom;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cprime[i] * rhs[i + 1];
}

double interpolate(const Grid& grid, std::span<const double> values, double y) {
  const auto& x = grid.nodes;
  if (y <= x.front()) return values.front();
  if (y >= x.back()) return values.back();
  const auto it = std::upper_bound(x.begin(), x.end(), y);
  const std::size_t j = static_cast<std::size_t>(it - x.begin()) - 1;
  const double t = (y - x[j]) / (x[j + 1] - x[j]);
  return values[j] + t * (values[j + 1] - values[j]);
}

}  // namespace stefanrad
