#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the solvers: dense kernel rows, Krylov
// updates and the T^4 nonlinearity. Each primitive has a scalar reference and
// vector variants; the variant is picked once at startup from the CPU flags.
namespace stefanrad::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Variant used by the free functions below. Defaults to the widest available
/// one; the STEFANRAD_SIMD environment variable ("scalar", "avx2", "neon")
/// overrides it when that variant is available.
Isa active_isa();

/// Switches the dispatch target. Throws std::invalid_argument when the variant
/// is not available on this machine.
void set_active_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// out[i] = x[i]^4
void pow4(std::span<const double> x, std::span<double> out);

/// y = M x for a dense row-major matrix with x.size() columns.
void matvec(std::span<const double> rowmajor, std::span<const double> x,
            std::span<double> y);

/// Direct access to one variant, bypassing dispatch (equivalence tests).
struct Kernels {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*pow4)(const double* x, double* out, std::size_t n);
};

const Kernels& kernels_for(Isa isa);

}  // namespace stefanrad::simd
