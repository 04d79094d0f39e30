#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace stefanrad::simd {
namespace {

bool cpu_has_avx2() {
#if defined(STEFANRAD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa widest_available() {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("STEFANRAD_SIMD")) {
    const std::string requested(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (requested == isa_name(isa) && isa_available(isa)) return isa;
    }
  }
  return widest_available();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Kernels& active() { return kernels_for(current().load(std::memory_order_relaxed)); }

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: {
      static const bool has = cpu_has_avx2();
      return has;
    }
    case Isa::neon:
#if defined(STEFANRAD_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("SIMD variant not available: " + std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

const Kernels& kernels_for(Isa isa) {
  switch (isa) {
#if defined(STEFANRAD_HAVE_AVX2)
    case Isa::avx2: return detail::avx2_kernels;
#endif
#if defined(STEFANRAD_HAVE_NEON)
    case Isa::neon: return detail::neon_kernels;
#endif
    default: return detail::scalar_kernels;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void pow4(std::span<const double> x, std::span<double> out) {
  if (x.size() != out.size()) throw std::invalid_argument("pow4: size mismatch");
  active().pow4(x.data(), out.data(), x.size());
}

void matvec(std::span<const double> rowmajor, std::span<const double> x, std::span<double> y) {
  const std::size_t cols = x.size();
  if (rowmajor.size() != cols * y.size()) throw std::invalid_argument("matvec: size mismatch");
  const Kernels& k = active();
  for (std::size_t r = 0; r < y.size(); ++r) {
    y[r] = k.dot(rowmajor.data() + r * cols, x.data(), cols);
  }
}

}  // namespace stefanrad::simd
