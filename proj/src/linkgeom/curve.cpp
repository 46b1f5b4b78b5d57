#include <algorithm>
#include <cmath>
#include <limits>

#include "geometry.hpp"

namespace fibresum::linkgeom {

using detail::cross;
using detail::dot;
using detail::is_zero;
using detail::sub;

namespace detail {

bool segments_intersect(const Point3& p1, const Point3& p2, const Point3& q1, const Point3& q2) {
  const Point3 d1 = sub(p2, p1), d2 = sub(q2, q1), w = sub(q1, p1);
  const Point3 n = cross(d1, d2);
  if (dot(n, w) != 0) return false;  // skew lines
  if (!is_zero(n)) {
    const Rational nn = dot(n, n);
    const Rational s = dot(cross(w, d2), n) / nn;
    const Rational t = dot(cross(w, d1), n) / nn;
    return s >= 0 && s <= 1 && t >= 0 && t <= 1;
  }
  // Parallel: only collinear overlap counts.
  if (!is_zero(cross(w, d1))) return false;
  const Rational dd = dot(d1, d1);
  const Rational t1 = dot(w, d1) / dd, t2 = dot(sub(q2, p1), d1) / dd;
  const Rational lo = std::min(t1, t2), hi = std::max(t1, t2);
  return hi >= 0 && lo <= 1;
}

double segment_distance(const Point3& p1r, const Point3& p2r, const Point3& q1r, const Point3& q2r) {
  auto to_d = [](const Point3& p) { return std::array<double, 3>{p[0].get_d(), p[1].get_d(), p[2].get_d()}; };
  const auto p1 = to_d(p1r), p2 = to_d(p2r), q1 = to_d(q1r), q2 = to_d(q2r);
  auto d = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  const std::array<double, 3> u{p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2]};
  const std::array<double, 3> v{q2[0] - q1[0], q2[1] - q1[1], q2[2] - q1[2]};
  const std::array<double, 3> w{p1[0] - q1[0], p1[1] - q1[1], p1[2] - q1[2]};
  const double a = d(u, u), b = d(u, v), c = d(v, v), e = d(u, w), f = d(v, w);
  const double den = a * c - b * b;

  // Closest points on two segments (clamped parametric solution).
  double s = 0.0, t = 0.0;
  if (den > 1e-14 * a * c) {
    s = std::clamp((b * f - c * e) / den, 0.0, 1.0);
  }
  t = (b * s + f) / c;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-e / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - e) / a, 0.0, 1.0);
  }
  const std::array<double, 3> gap{w[0] + s * u[0] - t * v[0], w[1] + s * u[1] - t * v[1], w[2] + s * u[2] - t * v[2]};
  return std::sqrt(d(gap, gap));
}

}  // namespace detail

PolygonalCurve::PolygonalCurve(std::vector<Point3> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw LinkError("polygonal curve needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i)
    if (vertices_[i] == vertices_[(i + 1) % n]) throw LinkError("polygonal curve has repeated consecutive vertex");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (detail::segments_intersect(segment_start(i), segment_end(i), segment_start(j), segment_end(j)))
          throw LinkError("polygonal curve is not embedded");
        continue;
      }
      // Adjacent segments share one vertex; they may only meet there.
      const std::size_t first = (j == i + 1) ? i : j;  // segment ending at the shared vertex
      const std::size_t second = (j == i + 1) ? j : i;
      const Point3 d1 = sub(segment_end(first), segment_start(first));
      const Point3 d2 = sub(segment_end(second), segment_start(second));
      if (is_zero(cross(d1, d2)) && dot(d1, d2) < 0) throw LinkError("polygonal curve folds back on itself");
    }
  }
}

PolygonalCurve PolygonalCurve::reversed() const {
  std::vector<Point3> v(vertices_.rbegin(), vertices_.rend());
  return PolygonalCurve(std::move(v));
}

PolygonalCurve PolygonalCurve::translated(const Point3& offset) const {
  std::vector<Point3> v;
  v.reserve(vertices_.size());
  for (const auto& p : vertices_) v.push_back(detail::add(p, offset));
  return PolygonalCurve(std::move(v));
}

bool curves_intersect(const PolygonalCurve& a, const PolygonalCurve& b) {
  for (std::size_t i = 0; i < a.segment_count(); ++i)
    for (std::size_t j = 0; j < b.segment_count(); ++j)
      if (detail::segments_intersect(a.segment_start(i), a.segment_end(i), b.segment_start(j), b.segment_end(j)))
        return true;
  return false;
}

double curve_distance(const PolygonalCurve& a, const PolygonalCurve& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.segment_count(); ++i)
    for (std::size_t j = 0; j < b.segment_count(); ++j)
      best = std::min(best, detail::segment_distance(a.segment_start(i), a.segment_end(i), b.segment_start(j),
                                                     b.segment_end(j)));
  return best;
}

PolygonalLink::PolygonalLink(std::vector<PolygonalCurve> comps, std::vector<ComponentRole> r)
    : components(std::move(comps)), roles(std::move(r)) {
  if (roles.empty()) roles.assign(components.size(), ComponentRole::surgery);
  if (roles.size() != components.size()) throw LinkError("one role per link component required");
  for (std::size_t i = 0; i < components.size(); ++i)
    for (std::size_t j = i + 1; j < components.size(); ++j)
      if (curves_intersect(components[i], components[j])) throw LinkError("link not embedded");
}

std::vector<std::size_t> PolygonalLink::surgery_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == ComponentRole::surgery) out.push_back(i);
  return out;
}

}  // namespace fibresum::linkgeom
