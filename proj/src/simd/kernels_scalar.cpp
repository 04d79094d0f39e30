#include "kernels_impl.hpp"

namespace stefanrad::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void pow4_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double sq = x[i] * x[i];
    out[i] = sq * sq;
  }
}

}  // namespace

const Kernels scalar_kernels{dot_scalar, axpy_scalar, pow4_scalar};

}  // namespace stefanrad::simd::detail
