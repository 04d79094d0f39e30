#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stefanrad {

/// Ordered mesh y_0 < y_1 < ... < y_N. Half-line problems start at y_0 = 0.
struct Grid {
  std::vector<double> nodes;
  double stretch = 1.0;  // ratio between consecutive spacings (1 = uniform)

  std::size_t size() const noexcept { return nodes.size(); }
  std::size_t cells() const noexcept { return nodes.size() - 1; }
  double left() const { return nodes.front(); }
  double right() const { return nodes.back(); }
  double spacing(std::size_t cell) const { return nodes[cell + 1] - nodes[cell]; }
  double max_spacing() const;

  /// Same grid with every coordinate multiplied by factor > 0.
  Grid scaled(double factor) const;
};

inline constexpr std::size_t kMinCells = 16;

/// n+1 nodes on [0, y_max]; geometric refinement toward 0 when stretch > 1.
/// Throws ConfigError for y_max <= 0, n < 16 or stretch < 1.
Grid build_grid(double y_max, std::size_t n, double stretch = 1.0);

/// n+1 uniform nodes on [left, right].
Grid build_interval_grid(double left, double right, std::size_t n);

/// Throws ConfigError unless the nodes are strictly increasing and N >= 16.
void validate(const Grid& grid);

/// Dense product-integration matrix for v -> int_{y_0}^inf alpha E(alpha (y - eta)) v(eta) d eta
/// with v piecewise linear on the grid and extended by the constant v(y_N)
/// past the right end.
class KernelOperator {
 public:
  KernelOperator(std::size_t n, double alpha);

  std::size_t size() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }

  double weight(std::size_t row, std::size_t col) const { return weights_[row * n_ + col]; }
  double& weight(std::size_t row, std::size_t col) { return weights_[row * n_ + col]; }
  std::span<const double> row(std::size_t r) const { return {weights_.data() + r * n_, n_}; }

  /// Kernel mass on (y_N, inf), multiplied by v(y_N) when applied.
  std::vector<double> right_tail;
  /// Kernel mass on (-inf, y_0). Not applied; kept for the normalization check.
  std::vector<double> left_tail;

  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;

  /// sum_j w_rj + right_tail + left_tail; equals 1 for an exact assembly.
  double row_mass(std::size_t r) const;

  /// Multiplies every weight (not the tails). Used for fault injection.
  void scale_weights(double factor);

 private:
  std::size_t n_;
  double alpha_;
  std::vector<double> weights_;
};

/// Closed-form product integration against the hat functions of the grid.
KernelOperator assemble_kernel(const Grid& grid, double alpha = 1.0);

/// Same integral as KernelOperator::apply evaluated by direct quadrature of the
/// piecewise-linear interpolant (tanh-sinh on the two cells touching the
/// singularity, Gauss-Legendre elsewhere). Independent of the closed-form
/// weights; used for residual certificates.
std::vector<double> reference_kernel_apply(const Grid& grid, double alpha,
                                           std::span<const double> v);

enum class DiffForm {
  central,       // f'' - c f' with nonuniform central differences
  conservative,  // e^{cy} (e^{-cy} f')' in flux form
};

/// Tridiagonal discretization of d^2/dy^2 - c d/dy. Row 0 is the Dirichlet row
/// (identity), row N the zero-flux condition f'(y_N) = 0 via a mirrored ghost
/// node. Interior rows have nonnegative off-diagonals while c h <= 2.
struct DiffOperator {
  std::vector<double> lower;  // lower[i] multiplies f[i-1]
  std::vector<double> diag;
  std::vector<double> upper;  // upper[i] multiplies f[i+1]

  std::size_t size() const noexcept { return diag.size(); }
  void apply(std::span<const double> f, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> f) const;
};

DiffOperator assemble_diff(const Grid& grid, double c, DiffForm form = DiffForm::central);

/// Second-order one-sided estimate of f'(y_0^+). Throws ConfigError for
/// fewer than three nodes.
double boundary_derivative(const Grid& grid, std::span<const double> values);

/// Solves the tridiagonal system in place (Thomas algorithm, no pivoting).
/// rhs is overwritten with the solution.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

/// Piecewise-linear interpolation; values outside the grid are clamped to the
/// end values.
double interpolate(const Grid& grid, std::span<const double> values, double y);

}  // namespace stefanrad
