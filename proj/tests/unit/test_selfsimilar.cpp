#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "stefanrad/errors.hpp"
#include "stefanrad/kernel.hpp"
#include "stefanrad/selfsimilar.hpp"

using namespace stefanrad;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double erf_error(std::size_t n) {
  const SelfSimilarProfile s = solve_selfsimilar(1.0, 0.0, kInf, 10.0, n);
  double err = 0.0;
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    err = std::max(err, std::abs(s.values[i] - 0.5 * std::erfc(0.5 * s.grid.nodes[i])));
  }
  return err;
}

}  // namespace

TEST_CASE("constant states are exact") {
  for (double alpha : {0.5, 1.0, kInf}) {
    const SelfSimilarProfile s = solve_selfsimilar(0.6, 0.6, alpha);
    for (double v : s.values) CHECK(v == 0.6);
    CHECK(s.residual == 0.0);
    CHECK_FALSE(s.overshoot);
  }
}

TEST_CASE("heat limit matches the erf profile with second-order refinement") {
  CHECK(erf_error(800) <= 1e-4);
  CHECK(erf_error(400) / erf_error(800) >= 3.0);
}

TEST_CASE("radiative profile is monotone and within the states") {
  const SelfSimilarProfile s = solve_selfsimilar(1.0, 0.0, 1.0);
  CHECK(s.residual <= 1e-8);
  CHECK_FALSE(s.overshoot);
  CHECK(s.values.front() == 1.0);
  CHECK(s.values.back() == 0.0);
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) CHECK(s.values[i + 1] <= s.values[i]);
  const std::vector<double> r = selfsimilar_residual(s.grid, s.values, 1.0);
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  CHECK(m == s.residual);
}

TEST_CASE("self-similar preconditions") {
  CHECK_THROWS_AS(solve_selfsimilar(-1.0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(solve_selfsimilar(1.0, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(solve_selfsimilar(1.0, 0.0, 1.0, 6.0), ConfigError);
}

TEST_CASE("intensity for constant temperature") {
  const double nu = 1e13;
  const double temp = 300.0;
  const double B = kernel::planck_B(nu, temp);
  const Profile flat = constant_profile(build_grid(10.0, 100), temp);
  for (double alpha : {0.5, 3.0}) {
    for (double x : {0.25, 4.0}) {
      for (double mu : {0.2, 0.7, 1.0}) {
        const double exact = B * -std::expm1(-alpha * x / mu);
        CHECK(std::abs(reconstruct_intensity(flat, nu, x, mu, alpha) - exact) <= 1e-8 * B);
      }
      CHECK(std::abs(reconstruct_intensity(flat, nu, x, -0.4, alpha) - B) <= 1e-8 * B);
    }
  }
  CHECK(reconstruct_intensity(flat, nu, 0.0, 0.5, 1.0) == 0.0);
}

TEST_CASE("intensity along a graded profile matches direct quadrature") {
  const Grid g = build_grid(10.0, 100);
  Profile T = constant_profile(g, 300.0);
  for (std::size_t i = 0; i < g.size(); ++i) T.values[i] = 300.0 + 20.0 * g.nodes[i];
  const double nu = 1e13;
  const double alpha = 1.3;
  const double x = 3.0;
  const double mu = 0.6;
  boost::math::quadrature::tanh_sinh<double> q;
  const double oracle = q.integrate(
      [&](double tau) {
        return alpha * std::exp(-alpha * tau) * kernel::planck_B(nu, 300.0 + 20.0 * (x - tau * mu));
      },
      0.0, x / mu);
  CHECK(reconstruct_intensity(T, nu, x, mu, alpha) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("intensity preconditions") {
  const Profile flat = constant_profile(build_grid(10.0, 100), 300.0);
  CHECK_THROWS_AS(reconstruct_intensity(flat, 1e13, 1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(reconstruct_intensity(flat, 1e13, 1.0, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(reconstruct_intensity(flat, 1e13, 11.0, 0.5, 1.0), DomainError);
}
