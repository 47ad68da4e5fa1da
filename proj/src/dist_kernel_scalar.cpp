#include "topo/simd/dist_kernel.hpp"

namespace topo::simd {

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    double d0 = a[k + 0] - b[k + 0];
    double d1 = a[k + 1] - b[k + 1];
    double d2 = a[k + 2] - b[k + 2];
    double d3 = a[k + 3] - b[k + 3];
    acc[0] += d0 * d0;
    acc[1] += d1 * d1;
    acc[2] += d2 * d2;
    acc[3] += d3 * d3;
  }
  for (std::size_t l = 0; k < n; ++k, ++l) {
    double d = a[k] - b[k];
    acc[l] += d * d;
  }
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

}  // namespace topo::simd
