#ifndef WULFF_ISOPERIMETRY_HPP
#define WULFF_ISOPERIMETRY_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wulff/crystal.hpp"

namespace wulff {

/// Simple counterclockwise polygon with positive area.
class Polygon {
 public:
  explicit Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t k = vertices_.size();
    if (k < 3) throw std::invalid_argument("Polygon: need at least 3 vertices");
    for (std::size_t i = 0; i < k; ++i)
      if ((vertices_[(i + 1) % k] - vertices_[i]).norm() == 0.0) throw std::invalid_argument("Polygon: repeated vertex");
    if (!(signed_area() > 0.0)) throw std::invalid_argument("Polygon: degenerate or clockwise");
    if (k > 3 && self_intersecting()) throw std::invalid_argument("Polygon: not simple");
  }

  explicit Polygon(const ConvexRegion& region) : Polygon(region.vertices()) {}

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Vec2 edge(std::size_t i) const { return vertices_[(i + 1) % size()] - vertices_[i]; }
  /// Outward unit normal of edge i.
  Vec2 normal(std::size_t i) const {
    const Vec2 e = edge(i);
    return Vec2(e.y(), -e.x()) / e.norm();
  }

  double signed_area() const {
    double a2 = 0.0;
    for (std::size_t i = 0; i < size(); ++i) a2 += cross(vertices_[i], vertices_[(i + 1) % size()]);
    return 0.5 * a2;
  }

 private:
  static bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
  }

  bool self_intersecting() const {
    const std::size_t k = size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 2; j < k; ++j) {
        if (i == 0 && j == k - 1) continue;  // adjacent through the wrap
        if (segments_cross(vertices_[i], vertices_[(i + 1) % k], vertices_[j], vertices_[(j + 1) % k])) return true;
      }
    return false;
  }

  std::vector<Vec2> vertices_;
};

/// Per_F = sum over edges of F(normal) * length. By 1-homogeneity each term
/// is F of the edge vector rotated clockwise.
inline double anisotropic_perimeter(const Integrand& f, const Polygon& poly) {
  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 e = poly.edge(i);
    total += f(Vec2(e.y(), -e.x()));
  }
  return total;
}

inline double area(const Polygon& poly) { return poly.signed_area(); }

/// Per_F / |poly|^(1/2), the planar isoperimetric quotient.
inline double isoperimetric_ratio(const Integrand& f, const Polygon& poly) {
  if (f.dimension() != 2) throw std::invalid_argument("isoperimetric_ratio: planar integrands only");
  const double a = area(poly);
  if (!(a > 0.0)) throw std::invalid_argument("isoperimetric_ratio: zero area");
  return anisotropic_perimeter(f, poly) / std::sqrt(a);
}

struct WulffReport {
  double perimeter;            // Per_F(dK_F)
  double area;                 // |K_F|
  double n_times_area;         // 2 |K_F|
  double relative_difference;  // |Per_F - 2|K_F|| / Per_F
  double ratio;                // Per_F / |K_F|^(1/2)
  double reference_ratio;      // 2 |K_F|^(1/2), the sharp constant
  double euclidean_constant;       // 2 sqrt(pi), the Euclidean value, reported for comparison only
};

/// Checks Per_F(dK_F) = 2 |K_F| on the grid crystal.
inline WulffReport wulff_identity_check(const Context& ctx) {
  const Polygon k(ctx.crystal());
  WulffReport r{};
  r.perimeter = anisotropic_perimeter(ctx.integrand(), k);
  r.area = area(k);
  r.n_times_area = 2.0 * r.area;
  r.relative_difference = std::abs(r.perimeter - r.n_times_area) / r.perimeter;
  r.ratio = r.perimeter / std::sqrt(r.area);
  r.reference_ratio = 2.0 * std::sqrt(r.area);
  r.euclidean_constant = 2.0 * std::sqrt(std::numbers::pi);
  return r;
}

}  // namespace wulff

#endif  // WULFF_ISOPERIMETRY_HPP
