#include <algorithm>
#include <random>

#include "geometry.hpp"

namespace fibresum::linkgeom {

namespace {

Point3 pt(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

PolygonalCurve square(std::initializer_list<Point3> v) { return PolygonalCurve(std::vector<Point3>(v)); }

Rational max_abs(const Point3& p) {
  Rational m = 0;
  for (const auto& c : p) m = std::max(m, Rational(abs(c)));
  return m;
}

}  // namespace

PolygonalLink borromean_rings() {
  // Long side 4, short side 2; each rectangle pierces the next one's disc.
  auto a = square({pt(-2, -1, 0), pt(2, -1, 0), pt(2, 1, 0), pt(-2, 1, 0)});
  auto b = square({pt(0, -2, -1), pt(0, 2, -1), pt(0, 2, 1), pt(0, -2, 1)});
  auto c = square({pt(-1, 0, -2), pt(-1, 0, 2), pt(1, 0, 2), pt(1, 0, -2)});
  return PolygonalLink({a, b, c});
}

PolygonalCurve borromean_axis(const Point3& offset) {
  // Passes through the origin, which lies inside all three rectangles; the
  // return path stays outside the box [-2,2]^3.
  auto axis = square({pt(-10, -10, -10), pt(10, 10, 10), pt(30, 0, 0)});
  return axis.translated(offset);
}

PolygonalCurve meridian(const PolygonalLink& link, std::size_t component) {
  const auto& c = link.components.at(component);
  const Point3 e = detail::sub(c.segment_end(0), c.segment_start(0));
  const Point3 centre = detail::add(c.segment_start(0), detail::scale(Rational(3, 8), e));

  // u, v span the normal plane with u x v a positive multiple of e.
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (abs(e[i]) < abs(e[k])) k = i;
  Point3 axis{};
  axis[k] = 1;
  Point3 u = detail::cross(e, axis);
  Point3 v = detail::cross(e, u);
  u = detail::scale(1 / max_abs(u), u);
  v = detail::scale(1 / max_abs(v), v);

  Rational radius = max_abs(e) / 16;
  for (int attempt = 0; attempt < 32; ++attempt, radius /= 2) {
    PolygonalCurve loop({detail::add(centre, detail::scale(radius, u)), detail::add(centre, detail::scale(radius, v)),
                         detail::sub(centre, detail::scale(radius, u)), detail::sub(centre, detail::scale(radius, v))});
    bool clear = true;
    for (const auto& other : link.components)
      if (curves_intersect(loop, other)) clear = false;
    if (clear) return loop;
  }
  throw LinkError("no room for a meridian around this component");
}

PolygonalLink hopf_link() {
  auto a = square({pt(0, 0, 0), pt(2, 0, 0), pt(2, 2, 0), pt(0, 2, 0)});
  auto b = square({pt(1, 1, -1), pt(3, 1, -1), pt(3, 1, 1), pt(1, 1, 1)});
  return PolygonalLink({a, b});
}

PolygonalLink split_link() {
  auto a = square({pt(0, 0, 0), pt(2, 0, 0), pt(2, 2, 0), pt(0, 2, 0)});
  auto b = square({pt(11, 1, -1), pt(13, 1, -1), pt(13, 1, 1), pt(11, 1, 1)});
  return PolygonalLink({a, b});
}

PolygonalCurve perturbed(const PolygonalCurve& c, std::uint64_t seed, const Rational& step, int range) {
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * range + 1);
  std::vector<Point3> v = c.vertices();
  for (auto& p : v)
    for (auto& x : p) x += step * Rational(static_cast<long>(rng() % span) - range);
  return PolygonalCurve(std::move(v));
}

}  // namespace fibresum::linkgeom
