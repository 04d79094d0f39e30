#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stefanrad/simd.hpp"

using namespace stefanrad::simd;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("every available variant agrees with the scalar reference") {
  std::mt19937_64 rng(20240611);
  const Kernels& ref = kernels_for(Isa::scalar);
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) continue;
    const Kernels& k = kernels_for(isa);
    for (std::size_t n : {0, 1, 3, 4, 7, 16, 17, 255, 2001}) {
      const auto a = random_vector(n, rng);
      const auto b = random_vector(n, rng);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
      CHECK(std::abs(k.dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= 1e-15 * (mag + 1.0));

      auto y1 = b, y2 = b;
      k.axpy(0.37, a.data(), y1.data(), n);
      ref.axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (std::abs(y2[i]) + 1.0));

      std::vector<double> p1(n), p2(n);
      k.pow4(a.data(), p1.data(), n);
      ref.pow4(a.data(), p2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(p1[i] == doctest::Approx(p2[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("dispatch switching and matvec") {
  const Isa original = active_isa();
  CHECK(isa_available(Isa::scalar));
  std::vector<double> m = {1, 2, 3, 4, 5, 6};
  std::vector<double> x = {1, -1, 2};
  std::vector<double> y(2);
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) {
      CHECK_THROWS_AS(set_active_isa(isa), std::invalid_argument);
      continue;
    }
    set_active_isa(isa);
    CHECK(active_isa() == isa);
    matvec(m, x, y);
    CHECK(y[0] == 5.0);
    CHECK(y[1] == 11.0);
  }
  set_active_isa(original);
  CHECK_THROWS_AS(dot(std::vector<double>(3), std::vector<double>(4)), std::invalid_argument);
}
