#pragma once

#include <cmath>
#include <cstddef>

// Squared Euclidean distance between two f64 vectors.
//
// All variants implement the same fixed summation order so results are
// bit-identical across them: four independent accumulators over index
// strides k % 4, tail elements folded into accumulators 0..(tail-1), and
// the final combine (acc0 + acc2) + (acc1 + acc3). FMA contraction is
// disabled on every kernel translation unit.

namespace topo::simd {

using SqDistFn = double (*)(const double*, const double*, std::size_t);

double squared_distance_scalar(const double* a, const double* b, std::size_t n);

#if defined(TOPO_HAVE_AVX2_KERNEL)
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
#endif
#if defined(TOPO_HAVE_NEON_KERNEL)
double squared_distance_neon(const double* a, const double* b, std::size_t n);
#endif

// Runtime-selected kernel (AVX2 when the CPU supports it, else scalar).
SqDistFn squared_distance_kernel();
const char* kernel_name();

inline double squared_distance(const double* a, const double* b, std::size_t n) {
  return squared_distance_kernel()(a, b, n);
}

inline double euclidean_distance(const double* a, const double* b, std::size_t n) {
  return std::sqrt(squared_distance(a, b, n));
}

}  // namespace topo::simd
