#pragma once

#include "stefanrad/simd.hpp"

namespace stefanrad::simd::detail {

extern const Kernels scalar_kernels;

#if defined(STEFANRAD_HAVE_AVX2)
extern const Kernels avx2_kernels;
#endif

#if defined(STEFANRAD_HAVE_NEON)
extern const Kernels neon_kernels;
#endif

}  // namespace stefanrad::simd::detail
