#pragma once

// Exact rational vector helpers shared by the linkgeom sources.

#include "fibresum/linkgeom.hpp"

namespace fibresum::linkgeom::detail {

inline Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point3 add(const Point3& a, const Point3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point3 scale(const Rational& k, const Point3& a) { return {k * a[0], k * a[1], k * a[2]}; }
inline Rational dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline bool is_zero(const Point3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

/// Whether the closed segments [p1,p2] and [q1,q2] share a point.
bool segments_intersect(const Point3& p1, const Point3& p2, const Point3& q1, const Point3& q2);

/// Floating-point distance between two segments.
double segment_distance(const Point3& p1, const Point3& p2, const Point3& q1, const Point3& q2);

}  // namespace fibresum::linkgeom::detail
