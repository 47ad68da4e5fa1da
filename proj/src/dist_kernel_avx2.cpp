#include "topo/simd/dist_kernel.hpp"

#if defined(TOPO_HAVE_AVX2_KERNEL)

#include <immintrin.h>

namespace topo::simd {

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d va = _mm256_loadu_pd(a + k);
    __m256d vb = _mm256_loadu_pd(b + k);
    __m256d d = _mm256_sub_pd(va, vb);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t l = 0; k < n; ++k, ++l) {
    double d = a[k] - b[k];
    lanes[l] += d * d;
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace topo::simd

#endif
