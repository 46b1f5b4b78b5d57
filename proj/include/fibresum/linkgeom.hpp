#pragma once

// Polygonal links in R^3 with exact rational vertices: linking numbers by
// signed projection crossings, a floating-point Gauss-integral oracle, and H_1
// coordinates in a surgery presentation.

#include "fibresum/bigint.hpp"
#include "fibresum/intlat.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibresum::linkgeom {

using Point3 = std::array<Rational, 3>;

class LinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed polygonal curve; the last vertex connects back to the first.
class PolygonalCurve {
 public:
  PolygonalCurve() = default;
  /// Validates: at least 3 vertices, consecutive vertices distinct, embedded.
  explicit PolygonalCurve(std::vector<Point3> vertices);

  const std::vector<Point3>& vertices() const { return vertices_; }
  std::size_t segment_count() const { return vertices_.size(); }
  const Point3& segment_start(std::size_t i) const { return vertices_[i]; }
  const Point3& segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

  PolygonalCurve reversed() const;
  PolygonalCurve translated(const Point3& offset) const;

 private:
  std::vector<Point3> vertices_;
};

enum class ComponentRole { surgery, auxiliary };

struct PolygonalLink {
  std::vector<PolygonalCurve> components;
  std::vector<ComponentRole> roles;

  PolygonalLink() = default;
  /// All components default to surgery.  Validates pairwise disjointness.
  explicit PolygonalLink(std::vector<PolygonalCurve> comps, std::vector<ComponentRole> roles = {});

  std::vector<std::size_t> surgery_indices() const;
};

/// Exact test whether two closed polygonal curves share a point.
bool curves_intersect(const PolygonalCurve& a, const PolygonalCurve& b);

/// Linking number as half the signed crossing count between `a` and `b` in
/// the projection along `direction`.  A non-generic direction is replaced by
/// seeded pseudo-random directions, at most 64 attempts.
long linking_number_crossings(const PolygonalCurve& a, const PolygonalCurve& b, const Point3& direction,
                              std::uint64_t seed = 0);

enum class KernelChoice { automatic, scalar, avx2 };

/// Gauss linking integral evaluated as a sum of segment-pair solid angles.
/// Throws LinkError("ill-conditioned") when the curves nearly touch.
double linking_number_gauss(const PolygonalCurve& a, const PolygonalCurve& b,
                            KernelChoice kernel = KernelChoice::automatic);

/// Linking numbers of `loop` with each surgery component, in component order.
intlat::IntVector h1_coordinates(const PolygonalCurve& loop, const PolygonalLink& link, std::uint64_t seed = 0);

/// Coefficients of the torus over `axis` in the basis of tori over the
/// meridians of the three surgery components.
intlat::IntVector derive_torus_relation(const PolygonalLink& link, const PolygonalCurve& axis,
                                        std::uint64_t seed = 0);

/// Shortest distance between two curves, in floating point.
double curve_distance(const PolygonalCurve& a, const PolygonalCurve& b);

// Built-in configurations.

/// Borromean rings as three mutually perpendicular 4x2 rectangles.
PolygonalLink borromean_rings();
/// A loop through the common centre along (1,1,1), linking each ring once.
/// `offset` translates it, giving parallel copies.
PolygonalCurve borromean_axis(const Point3& offset = {});
/// Small positively oriented square around the midpoint of segment 0 of
/// the given component.
PolygonalCurve meridian(const PolygonalLink& link, std::size_t component);
PolygonalLink hopf_link();
PolygonalLink split_link();

/// Moves every vertex by a pseudo-random multiple of `step` in [-range, range]
/// per coordinate, deterministically from `seed`.
PolygonalCurve perturbed(const PolygonalCurve& c, std::uint64_t seed, const Rational& step, int range);

// Plain-text vertex-list format: one `x y z` per line, components separated by
// blank lines, `#` starts a comment.

std::vector<PolygonalCurve> read_curves(std::istream& in);
PolygonalLink load_link(const std::string& path);
PolygonalCurve load_curve(const std::string& path);
void write_curves(std::ostream& out, const std::vector<PolygonalCurve>& curves);

}  // namespace fibresum::linkgeom
