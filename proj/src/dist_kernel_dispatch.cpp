#include "topo/simd/dist_kernel.hpp"

namespace topo::simd {

namespace {

struct Selection {
  SqDistFn fn;
  const char* name;
};

Selection select() {
#if defined(TOPO_HAVE_AVX2_KERNEL)
  if (__builtin_cpu_supports("avx2")) {
    return {&squared_distance_avx2, "avx2"};
  }
#endif
#if defined(TOPO_HAVE_NEON_KERNEL)
  return {&squared_distance_neon, "neon"};
#endif
  return {&squared_distance_scalar, "scalar"};
}

const Selection& selection() {
  static const Selection s = select();
  return s;
}

}  // namespace

SqDistFn squared_distance_kernel() { return selection().fn; }

const char* kernel_name() { return selection().name; }

}  // namespace topo::simd
