// Compiled with -mavx2.  Nothing here may run before avx2_supported() is
// checked by the caller.

#include "fibresum/gauss_kernels.hpp"

#include <immintrin.h>

#include <array>
#include <numbers>

namespace fibresum::linkgeom::kernels {

namespace {

// atan minimax coefficients for |x| <= 0.66 after range reduction (Cephes).
constexpr double kP0 = -8.750608600031904122785e-1;
constexpr double kP1 = -1.615753718733365076637e1;
constexpr double kP2 = -7.500855792314704667340e1;
constexpr double kP3 = -1.228866684490136173410e2;
constexpr double kP4 = -6.485021904942025371773e1;
constexpr double kQ0 = 2.485846490142306297962e1;
constexpr double kQ1 = 1.650270098316988542046e2;
constexpr double kQ2 = 4.328810604912902668951e2;
constexpr double kQ3 = 4.853903996359136964868e2;
constexpr double kQ4 = 1.945506571482613964425e2;
constexpr double kTan3PiOver8 = 2.41421356237309504880;
constexpr double kMoreBits = 6.123233995736765886130e-17;

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline __m256d atan_pd(__m256d x) {
  const __m256d sign = _mm256_and_pd(x, _mm256_set1_pd(-0.0));
  const __m256d ax = abs_pd(x);
  const __m256d one = _mm256_set1_pd(1.0);

  const __m256d big = _mm256_cmp_pd(ax, _mm256_set1_pd(kTan3PiOver8), _CMP_GT_OQ);
  const __m256d mid = _mm256_andnot_pd(big, _mm256_cmp_pd(ax, _mm256_set1_pd(0.66), _CMP_GT_OQ));

  __m256d xr = ax;
  xr = _mm256_blendv_pd(xr, _mm256_div_pd(_mm256_sub_pd(ax, one), _mm256_add_pd(ax, one)), mid);
  xr = _mm256_blendv_pd(xr, _mm256_div_pd(_mm256_set1_pd(-1.0), ax), big);

  __m256d y0 = _mm256_setzero_pd();
  y0 = _mm256_blendv_pd(y0, _mm256_set1_pd(std::numbers::pi / 4), mid);
  y0 = _mm256_blendv_pd(y0, _mm256_set1_pd(std::numbers::pi / 2), big);

  const __m256d z = _mm256_mul_pd(xr, xr);
  __m256d p = _mm256_set1_pd(kP0);
  p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(kP1));
  p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(kP2));
  p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(kP3));
  p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(kP4));
  __m256d q = _mm256_add_pd(z, _mm256_set1_pd(kQ0));
  q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(kQ1));
  q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(kQ2));
  q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(kQ3));
  q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(kQ4));

  __m256d r = _mm256_add_pd(_mm256_mul_pd(xr, _mm256_div_pd(_mm256_mul_pd(z, p), q)), xr);
  __m256d extra = _mm256_setzero_pd();
  extra = _mm256_blendv_pd(extra, _mm256_set1_pd(0.5 * kMoreBits), mid);
  extra = _mm256_blendv_pd(extra, _mm256_set1_pd(kMoreBits), big);
  r = _mm256_add_pd(y0, _mm256_add_pd(r, extra));
  return _mm256_or_pd(r, sign);
}

inline __m256d atan2_pd(__m256d y, __m256d x) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d pi = _mm256_set1_pd(std::numbers::pi);
  __m256d r = atan_pd(_mm256_div_pd(y, x));

  const __m256d x_neg = _mm256_cmp_pd(x, zero, _CMP_LT_OQ);
  const __m256d y_neg = _mm256_cmp_pd(y, zero, _CMP_LT_OQ);
  const __m256d shift = _mm256_blendv_pd(pi, _mm256_sub_pd(zero, pi), y_neg);
  r = _mm256_blendv_pd(r, _mm256_add_pd(r, shift), x_neg);

  // x == 0: +-pi/2 by the sign of y, 0 when y == 0 too.
  const __m256d x_zero = _mm256_cmp_pd(x, zero, _CMP_EQ_OQ);
  __m256d axis = _mm256_blendv_pd(_mm256_set1_pd(std::numbers::pi / 2), _mm256_set1_pd(-std::numbers::pi / 2),
                                  y_neg);
  axis = _mm256_blendv_pd(axis, zero, _mm256_cmp_pd(y, zero, _CMP_EQ_OQ));
  return _mm256_blendv_pd(r, axis, x_zero);
}

struct Vec4 {
  __m256d x, y, z;
};

inline __m256d dot(const Vec4& a, const Vec4& b) {
  return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(a.x, b.x), _mm256_mul_pd(a.y, b.y)), _mm256_mul_pd(a.z, b.z));
}

inline Vec4 cross(const Vec4& a, const Vec4& b) {
  return {_mm256_sub_pd(_mm256_mul_pd(a.y, b.z), _mm256_mul_pd(a.z, b.y)),
          _mm256_sub_pd(_mm256_mul_pd(a.z, b.x), _mm256_mul_pd(a.x, b.z)),
          _mm256_sub_pd(_mm256_mul_pd(a.x, b.y), _mm256_mul_pd(a.y, b.x))};
}

inline __m256d triangle_solid_angle(const Vec4& a, const Vec4& b, const Vec4& c) {
  const __m256d la = _mm256_sqrt_pd(dot(a, a));
  const __m256d lb = _mm256_sqrt_pd(dot(b, b));
  const __m256d lc = _mm256_sqrt_pd(dot(c, c));
  const __m256d num = dot(a, cross(b, c));
  __m256d den = _mm256_mul_pd(_mm256_mul_pd(la, lb), lc);
  den = _mm256_add_pd(den, _mm256_mul_pd(dot(a, b), lc));
  den = _mm256_add_pd(den, _mm256_mul_pd(dot(a, c), lb));
  den = _mm256_add_pd(den, _mm256_mul_pd(dot(b, c), la));
  return _mm256_mul_pd(_mm256_set1_pd(2.0), atan2_pd(num, den));
}

inline Vec4 diff(__m256d qx, __m256d qy, __m256d qz, double px, double py, double pz) {
  return {_mm256_sub_pd(qx, _mm256_set1_pd(px)), _mm256_sub_pd(qy, _mm256_set1_pd(py)),
          _mm256_sub_pd(qz, _mm256_set1_pd(pz))};
}

}  // namespace

double gauss_sum_avx2(const SegmentTable& a, const SegmentTable& b) {
  const std::size_t nb = b.size();
  const std::size_t padded = (nb + 3) / 4 * 4;

  // Pad b to a lane multiple by repeating its first segment; padded lanes are
  // masked out of the accumulator.
  std::array<std::vector<double>, 6> cols;
  const std::array<const std::vector<double>*, 6> src{&b.x0, &b.y0, &b.z0, &b.x1, &b.y1, &b.z1};
  for (std::size_t k = 0; k < 6; ++k) {
    cols[k] = *src[k];
    cols[k].resize(padded, nb ? (*src[k])[0] : 0.0);
  }

  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < padded; j += 4) {
      const __m256d qx0 = _mm256_loadu_pd(&cols[0][j]), qy0 = _mm256_loadu_pd(&cols[1][j]),
                    qz0 = _mm256_loadu_pd(&cols[2][j]);
      const __m256d qx1 = _mm256_loadu_pd(&cols[3][j]), qy1 = _mm256_loadu_pd(&cols[4][j]),
                    qz1 = _mm256_loadu_pd(&cols[5][j]);
      const Vec4 c00 = diff(qx0, qy0, qz0, a.x0[i], a.y0[i], a.z0[i]);
      const Vec4 c10 = diff(qx0, qy0, qz0, a.x1[i], a.y1[i], a.z1[i]);
      const Vec4 c11 = diff(qx1, qy1, qz1, a.x1[i], a.y1[i], a.z1[i]);
      const Vec4 c01 = diff(qx1, qy1, qz1, a.x0[i], a.y0[i], a.z0[i]);
      __m256d omega = _mm256_add_pd(triangle_solid_angle(c00, c10, c11), triangle_solid_angle(c00, c11, c01));
      if (j + 4 > nb) {
        alignas(32) double mask[4];
        for (std::size_t l = 0; l < 4; ++l) mask[l] = (j + l < nb) ? 1.0 : 0.0;
        omega = _mm256_mul_pd(omega, _mm256_load_pd(mask));
      }
      acc = _mm256_add_pd(acc, omega);
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  const double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  return total / (4.0 * std::numbers::pi);
}

}  // namespace fibresum::linkgeom::kernels
