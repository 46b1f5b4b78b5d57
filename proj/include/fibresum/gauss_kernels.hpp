#pragma once

// Segment-pair Gauss linking sums in double precision.  The scalar kernel is
// the reference; vector kernels must agree with it to rounding.

#include <cstddef>
#include <vector>

namespace fibresum::linkgeom::kernels {

/// Structure-of-arrays segment table: segment i runs from (x0,y0,z0)[i] to
/// (x1,y1,z1)[i].
struct SegmentTable {
  std::vector<double> x0, y0, z0, x1, y1, z1;

  std::size_t size() const { return x0.size(); }
  void push(const double start[3], const double end[3]);
};

/// Sum over all segment pairs of the signed solid angle of the parallelogram
/// {q - p}, divided by 4 pi.  Pairs are visited i-major, j-minor.
double gauss_sum_scalar(const SegmentTable& a, const SegmentTable& b);

/// Same sum with four j-lanes per AVX2 register and a polynomial atan2.
/// Only callable when avx2_supported() is true.
double gauss_sum_avx2(const SegmentTable& a, const SegmentTable& b);

/// True when the AVX2 kernel was compiled in and the CPU reports AVX2.
bool avx2_supported();

}  // namespace fibresum::linkgeom::kernels
