#include "fibresum/gauss_kernels.hpp"

#include <cmath>
#include <numbers>

namespace fibresum::linkgeom::kernels {

void SegmentTable::push(const double start[3], const double end[3]) {
  x0.push_back(start[0]);
  y0.push_back(start[1]);
  z0.push_back(start[2]);
  x1.push_back(end[0]);
  y1.push_back(end[1]);
  z1.push_back(end[2]);
}

namespace {

struct Vec {
  double x, y, z;
};

inline double dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline Vec cross(const Vec& a, const Vec& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Signed solid angle of the triangle (a, b, c) seen from the origin.
inline double triangle_solid_angle(const Vec& a, const Vec& b, const Vec& c) {
  const double la = norm(a), lb = norm(b), lc = norm(c);
  const double num = dot(a, cross(b, c));
  const double den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
  return 2.0 * std::atan2(num, den);
}

}  // namespace

double gauss_sum_scalar(const SegmentTable& a, const SegmentTable& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      // Parallelogram q(t) - p(s) with corners at (s,t) = (0,0),(1,0),(1,1),(0,1).
      const Vec c00{b.x0[j] - a.x0[i], b.y0[j] - a.y0[i], b.z0[j] - a.z0[i]};
      const Vec c10{b.x0[j] - a.x1[i], b.y0[j] - a.y1[i], b.z0[j] - a.z1[i]};
      const Vec c11{b.x1[j] - a.x1[i], b.y1[j] - a.y1[i], b.z1[j] - a.z1[i]};
      const Vec c01{b.x1[j] - a.x0[i], b.y1[j] - a.y0[i], b.z1[j] - a.z0[i]};
      total += triangle_solid_angle(c00, c10, c11) + triangle_solid_angle(c00, c11, c01);
    }
  }
  return total / (4.0 * std::numbers::pi);
}

}  // namespace fibresum::linkgeom::kernels
