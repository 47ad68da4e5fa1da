#include "topo/simd/dist_kernel.hpp"

#if defined(TOPO_HAVE_NEON_KERNEL)

#include <arm_neon.h>

namespace topo::simd {

// Two 2-lane registers stand in for the four strided accumulators:
// acc01 holds strides k%4 in {0,1}, acc23 holds {2,3}.
double squared_distance_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    float64x2_t d01 = vsubq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
    float64x2_t d23 = vsubq_f64(vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
    acc01 = vaddq_f64(acc01, vmulq_f64(d01, d01));
    acc23 = vaddq_f64(acc23, vmulq_f64(d23, d23));
  }
  double lanes[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                     vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
  for (std::size_t l = 0; k < n; ++k, ++l) {
    double d = a[k] - b[k];
    lanes[l] += d * d;
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace topo::simd

#endif
