#include <cmath>
#include <vector>

#include "doctest.h"
#include "stefanrad/discretization.hpp"
#include "stefanrad/errors.hpp"
#include "stefanrad/kernel.hpp"
#include "stefanrad/profile.hpp"

using namespace stefanrad;

namespace {

std::vector<double> sample(const Grid& g, auto&& fn) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g.nodes[i]);
  return v;
}

// Max relative error of the operator on e^{a eta} over rows with |y| <= 10.
double exp_moment_error(double h, double a) {
  const auto n = static_cast<std::size_t>(std::lround(80.0 / h));
  const Grid g = build_interval_grid(-40.0, 40.0, n);
  const KernelOperator op = assemble_kernel(g);
  const auto v = sample(g, [a](double y) { return std::exp(a * y); });
  const auto kv = op.apply(v);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.nodes[i]) > 10.0) continue;
    const double exact = kernel::kernel_exp_moment(a) * v[i];
    err = std::max(err, std::abs(kv[i] - exact) / exact);
  }
  return err;
}

}  // namespace

TEST_CASE("build_grid") {
  const Grid u = build_grid(10.0, 100, 1.0);
  CHECK(u.size() == 101);
  CHECK(u.nodes.front() == 0.0);
  CHECK(u.nodes.back() == 10.0);
  for (std::size_t i = 0; i < u.cells(); ++i) CHECK(u.spacing(i) == doctest::Approx(0.1).epsilon(1e-12));

  const Grid s = build_grid(10.0, 100, 1.05);
  CHECK(s.nodes.back() == 10.0);
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    CHECK(s.spacing(i + 1) / s.spacing(i) == doctest::Approx(1.05).epsilon(1e-9));
  }
  CHECK_THROWS_AS(build_grid(10.0, 15, 1.0), ConfigError);
  CHECK_THROWS_AS(build_grid(0.0, 100, 1.0), ConfigError);
  CHECK_THROWS_AS(build_grid(10.0, 100, 0.9), ConfigError);
}

TEST_CASE("kernel operator weights and discrete normalization") {
  for (double stretch : {1.0, 1.01}) {
    const Grid g = build_grid(20.0, 200, stretch);
    const KernelOperator op = assemble_kernel(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (double w : op.row(i)) CHECK(w >= 0.0);
      CHECK(std::abs(op.row_mass(i) - 1.0) <= 1e-8);
    }
    const auto ones = std::vector<double>(g.size(), 1.0);
    const auto k1 = op.apply(ones);
    CHECK(std::abs(k1[0] - 0.5) <= 1e-8);
  }
}

TEST_CASE("full-line extension reproduces constants") {
  const Grid g = build_interval_grid(-30.0, 30.0, 600);
  const KernelOperator op = assemble_kernel(g);
  const auto k1 = op.apply(std::vector<double>(g.size(), 1.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(k1[i] + op.left_tail[i] - 1.0) <= 1e-8);
  }
}

TEST_CASE("alpha scaling of the kernel") {
  const Grid g = build_grid(10.0, 100);
  const KernelOperator op = assemble_kernel(g, 2.0);
  CHECK(op.alpha() == 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(op.row_mass(i) - 1.0) <= 1e-8);
  CHECK(op.left_tail[10] == doctest::Approx(kernel::kernel_tail(2.0)).epsilon(1e-13));
}

TEST_CASE("exponential moment reproduction and second-order refinement") {
  for (double a : {0.25, 0.5}) {
    const double coarse = exp_moment_error(0.1, a);
    const double fine = exp_moment_error(0.05, a);
    CHECK(fine <= 1e-3);
    CHECK(coarse / fine >= 3.0);
  }
}

TEST_CASE("reference quadrature operator agrees with product integration") {
  const Grid g = build_grid(12.0, 48, 1.02);
  const KernelOperator op = assemble_kernel(g, 1.5);
  const auto v = sample(g, [](double y) { return 0.4 + std::exp(-y) * std::cos(2.0 * y); });
  const auto fast = op.apply(v);
  const auto ref = reference_kernel_apply(g, 1.5, v);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(fast[i] - ref[i]) <= 1e-11);
}

TEST_CASE("diff operator exactness") {
  const Grid g = build_grid(5.0, 50, 1.03);
  SUBCASE("constants vanish exactly") {
    for (double c : {0.0, 0.7, 3.0}) {
      const auto out = assemble_diff(g, c).apply(std::vector<double>(g.size(), 2.5));
      for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(std::abs(out[i]) <= 1e-12);
    }
  }
  SUBCASE("linear functions with c = 0") {
    const auto out = assemble_diff(g, 0.0).apply(sample(g, [](double y) { return 3.0 - 2.0 * y; }));
    for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(std::abs(out[i]) <= 1e-9);
  }
  SUBCASE("quadratic") {
    const auto out = assemble_diff(g, 0.0).apply(sample(g, [](double y) { return y * y; }));
    for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(out[i] == doctest::Approx(2.0).epsilon(0.02));
  }
  SUBCASE("exponential kernel of the operator") {
    for (DiffForm form : {DiffForm::central, DiffForm::conservative}) {
      const double c = 0.8;
      const auto f = sample(g, [c](double y) { return std::exp(c * y); });
      const auto out = assemble_diff(g, c, form).apply(f);
      for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double h = std::max(g.spacing(i - 1), g.spacing(i));
        CHECK(std::abs(out[i]) <= c * c * c * h * f[i]);
      }
    }
  }
  SUBCASE("boundary rows") {
    const DiffOperator op = assemble_diff(g, 1.0);
    CHECK(op.diag[0] == 1.0);
    CHECK(op.upper[0] == 0.0);
    const std::size_t n = g.size() - 1;
    CHECK(op.lower[n] == doctest::Approx(-op.diag[n]));
  }
}

TEST_CASE("diff operator off-diagonals are nonnegative while c h <= 2") {
  const Grid g = build_grid(20.0, 200);
  const DiffOperator op = assemble_diff(g, 19.0);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    CHECK(op.lower[i] >= 0.0);
    CHECK(op.upper[i] >= 0.0);
  }
}

TEST_CASE("boundary derivative") {
  const Grid g = build_grid(4.0, 400, 1.002);
  CHECK(boundary_derivative(g, sample(g, [](double y) { return 1.0 - y; })) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(boundary_derivative(g, std::vector<double>(g.size(), 0.7)) == doctest::Approx(0.0).scale(1.0));
  const double h = g.spacing(0);
  const double d = boundary_derivative(g, sample(g, [](double y) { return std::exp(-y); }));
  CHECK(std::abs(d + 1.0) <= 2.0 * h * h);

  Profile p = constant_profile(g, 1.0);
  CHECK(boundary_derivative(p) == doctest::Approx(0.0).scale(1.0));
  Grid tiny;
  tiny.nodes = {0.0, 1.0};
  CHECK_THROWS_AS(boundary_derivative(tiny, std::vector<double>{1.0, 2.0}), ConfigError);
}

TEST_CASE("tridiagonal solve") {
  std::vector<double> lower = {0, -1, -1, -1}, diag = {4, 4, 4, 4}, upper = {-1, -1, -1, 0};
  std::vector<double> x = {1, 2, -1, 0.5};
  std::vector<double> rhs(4);
  for (int i = 0; i < 4; ++i) {
    rhs[i] = diag[i] * x[i] + (i > 0 ? lower[i] * x[i - 1] : 0.0) + (i < 3 ? upper[i] * x[i + 1] : 0.0);
  }
  solve_tridiagonal(lower, diag, upper, rhs);
  for (int i = 0; i < 4; ++i) CHECK(rhs[i] == doctest::Approx(x[i]).epsilon(1e-14));
}

TEST_CASE("interpolation clamps and is exact on linear data") {
  const Grid g = build_grid(2.0, 20);
  const auto v = sample(g, [](double y) { return 2.0 * y + 1.0; });
  CHECK(interpolate(g, v, 0.333) == doctest::Approx(1.666));
  CHECK(interpolate(g, v, -1.0) == 1.0);
  CHECK(interpolate(g, v, 5.0) == 5.0);
}
