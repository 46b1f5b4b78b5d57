#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "fibresum/gauss_kernels.hpp"
#include "geometry.hpp"

namespace fibresum::linkgeom {

using detail::cross;
using detail::dot;
using detail::is_zero;
using detail::sub;

namespace {

constexpr int kMaxDirectionAttempts = 64;

int sign_of(const Rational& v) { return sgn(v); }

// Signed crossing sum between a and b in the projection along d, or nullopt
// when d is not generic for this pair of curves.
std::optional<long> crossing_sum(const PolygonalCurve& a, const PolygonalCurve& b, const Point3& d) {
  long total = 0;
  for (std::size_t i = 0; i < a.segment_count(); ++i) {
    const Point3& p1 = a.segment_start(i);
    const Point3 dp = sub(a.segment_end(i), p1);
    if (is_zero(cross(dp, d))) return std::nullopt;
    for (std::size_t j = 0; j < b.segment_count(); ++j) {
      const Point3& q1 = b.segment_start(j);
      const Point3 dq = sub(b.segment_end(j), q1);
      if (i == 0 && is_zero(cross(dq, d))) return std::nullopt;

      // Solve s*dp - t*dq - lambda*d = q1 - p1 (Cramer).
      const Point3 w = sub(q1, p1);
      const Point3 dq_x_d = cross(dq, d);
      const Rational det = dot(dp, dq_x_d);
      if (det == 0) {
        // Parallel in projection: degenerate only if the projected lines coincide.
        if (dot(w, cross(dp, d)) == 0) return std::nullopt;
        continue;
      }
      const Rational s = dot(w, dq_x_d) / det;
      const Rational t = dot(dp, cross(d, w)) / det;
      if (s < 0 || s > 1 || t < 0 || t > 1) continue;
      if (s == 0 || s == 1 || t == 0 || t == 1) return std::nullopt;  // crossing through a vertex
      // p - q = lambda * d where lambda = -dot(dp, cross(dq, w)) / det.
      const Rational lambda = -dot(dp, cross(dq, w)) / det;
      if (lambda == 0) throw LinkError("link not embedded");
      total += sign_of(lambda) * sign_of(dot(d, cross(dp, dq)));
    }
  }
  return total;
}

Point3 random_direction(std::mt19937_64& rng) {
  for (;;) {
    Point3 d;
    for (auto& c : d) c = Rational(static_cast<long>(rng() % 2001) - 1000);
    if (!is_zero(d)) return d;
  }
}

kernels::SegmentTable to_table(const PolygonalCurve& c) {
  kernels::SegmentTable t;
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    const double s[3] = {c.segment_start(i)[0].get_d(), c.segment_start(i)[1].get_d(), c.segment_start(i)[2].get_d()};
    const double e[3] = {c.segment_end(i)[0].get_d(), c.segment_end(i)[1].get_d(), c.segment_end(i)[2].get_d()};
    t.push(s, e);
  }
  return t;
}

double extent(const PolygonalCurve& c) {
  double m = 0.0;
  for (const auto& p : c.vertices())
    for (const auto& x : p) m = std::max(m, std::abs(x.get_d()));
  return m;
}

}  // namespace

long linking_number_crossings(const PolygonalCurve& a, const PolygonalCurve& b, const Point3& direction,
                              std::uint64_t seed) {
  if (curves_intersect(a, b)) throw LinkError("link not embedded");
  std::mt19937_64 rng(seed);
  Point3 d = direction;
  for (int attempt = 0; attempt < kMaxDirectionAttempts; ++attempt) {
    if (!is_zero(d)) {
      if (auto sum = crossing_sum(a, b, d)) {
        if (*sum % 2 != 0) throw LinkError("odd crossing sum between closed curves");
        return *sum / 2;
      }
    }
    d = random_direction(rng);
  }
  throw LinkError("no generic projection direction found");
}

double linking_number_gauss(const PolygonalCurve& a, const PolygonalCurve& b, KernelChoice kernel) {
  const double scale = std::max({1.0, extent(a), extent(b)});
  if (curve_distance(a, b) < 1e-9 * scale) throw LinkError("ill-conditioned");

  const auto ta = to_table(a), tb = to_table(b);
  switch (kernel) {
    case KernelChoice::scalar:
      return kernels::gauss_sum_scalar(ta, tb);
    case KernelChoice::avx2:
      if (!kernels::avx2_supported()) throw LinkError("AVX2 kernel unavailable on this machine");
      return kernels::gauss_sum_avx2(ta, tb);
    case KernelChoice::automatic:
      break;
  }
  return kernels::avx2_supported() ? kernels::gauss_sum_avx2(ta, tb) : kernels::gauss_sum_scalar(ta, tb);
}

intlat::IntVector h1_coordinates(const PolygonalCurve& loop, const PolygonalLink& link, std::uint64_t seed) {
  const auto idx = link.surgery_indices();
  intlat::IntVector out(idx.size());
  const Point3 direction{Rational(3), Rational(5), Rational(11)};
  for (std::size_t k = 0; k < idx.size(); ++k)
    out[k] = linking_number_crossings(loop, link.components[idx[k]], direction, seed + k);
  return out;
}

intlat::IntVector derive_torus_relation(const PolygonalLink& link, const PolygonalCurve& axis, std::uint64_t seed) {
  if (link.surgery_indices().size() != 3)
    throw LinkError("torus relation needs a 3-component surgery presentation");
  return h1_coordinates(axis, link, seed);
}

}  // namespace fibresum::linkgeom
