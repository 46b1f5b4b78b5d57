#include "fibresum/gauss_kernels.hpp"

#include <stdexcept>

namespace fibresum::linkgeom::kernels {

#ifndef FIBRESUM_HAVE_AVX2
double gauss_sum_avx2(const SegmentTable&, const SegmentTable&) {
  throw std::logic_error("AVX2 kernel not compiled in");
}
#endif

bool avx2_supported() {
#if defined(FIBRESUM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

}  // namespace fibresum::linkgeom::kernels
