#ifndef WULFF_CONVEX_REGION_HPP
#define WULFF_CONVEX_REGION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wulff/vector.hpp"

namespace wulff {

/// {x : <x, normal> <= offset} with a unit normal.
struct HalfSpace {
  Vec2 normal;
  double offset;
};

enum class Provenance { crystal, polar_body, ball, user };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::crystal: return "crystal";
    case Provenance::polar_body: return "polar-body";
    case Provenance::ball: return "ball";
    case Provenance::user: return "user";
  }
  return "user";
}

inline Provenance provenance_from_string(const std::string& s) {
  if (s == "crystal") return Provenance::crystal;
  if (s == "polar-body") return Provenance::polar_body;
  if (s == "ball") return Provenance::ball;
  if (s == "user") return Provenance::user;
  throw std::invalid_argument("unknown region provenance '" + s + "'");
}

namespace detail {

// Andrew's monotone chain. Returns the hull counterclockwise, dropping
// points within `eps` (relative to the squared extent) of collinear.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts, double eps = 1e-12) {
  std::sort(pts.begin(), pts.end(),
            [](const Vec2& a, const Vec2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double slack = eps * scale * scale;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= slack) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= slack) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

inline double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace detail

/// Compact planar convex body with nonempty interior, stored both as a
/// counterclockwise vertex list and as the half-planes of its edges:
/// `halfspaces()[i]` carries the edge from vertex i to vertex i+1.
class ConvexRegion {
 public:
  /// Intersection of {<x, n> <= h |n|}, all h > 0: the offset is the
  /// distance of the line from the origin whatever the length of n.
  /// Computed as the convex hull of the dual points n/(|n| h): hull edges
  /// are primal vertices and hull vertices the non-redundant half-planes.
  static ConvexRegion intersect(std::span<const HalfSpace> halfspaces, Provenance provenance = Provenance::user) {
    std::vector<Vec2> dual;
    dual.reserve(halfspaces.size());
    for (const auto& h : halfspaces) {
      if (!(h.offset > 0.0)) throw std::invalid_argument("intersect: half-plane offsets must be positive");
      const double len = h.normal.norm();
      if (!(len > 0.0)) throw std::invalid_argument("intersect: zero normal");
      dual.push_back(h.normal / (len * h.offset));
    }
    return from_dual_points(std::move(dual), provenance);
  }

  /// {z : <z, q> <= 1 for all q}: bounded iff the origin is interior to the
  /// hull of the q.
  static ConvexRegion from_dual_points(std::vector<Vec2> dual, Provenance provenance = Provenance::user) {
    const std::vector<Vec2> hull = detail::convex_hull(std::move(dual));
    if (hull.size() < 3) throw std::domain_error("half-plane intersection is unbounded (fewer than 3 active constraints)");
    const std::size_t k = hull.size();
    for (std::size_t j = 0; j < k; ++j) {
      const Vec2& a = hull[j];
      const Vec2& b = hull[(j + 1) % k];
      if (!(cross(a, b) > 1e-14 * a.norm() * b.norm()))
        throw std::domain_error("half-plane intersection is unbounded: normals do not positively span the plane");
    }
    ConvexRegion r;
    r.provenance_ = provenance;
    r.vertices_.reserve(k);
    r.halfspaces_.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      const Vec2& a = hull[j];
      const Vec2& b = hull[(j + 1) % k];
      r.vertices_.push_back(Vec2(b.y() - a.y(), a.x() - b.x()) / cross(a, b));
      const Vec2& q = b;  // the edge from vertex j to j+1 lies on <x, q> = 1
      r.halfspaces_.push_back({q / q.norm(), 1.0 / q.norm()});
    }
    return r;
  }

  /// Region from a counterclockwise vertex list (collinear runs allowed).
  static ConvexRegion from_vertices(std::vector<Vec2> vertices, Provenance provenance = Provenance::user) {
    const std::size_t k = vertices.size();
    if (k < 3) throw std::invalid_argument("from_vertices: need at least 3 vertices");
    double scale = 0.0;
    for (const auto& v : vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    double area2 = 0.0;
    ConvexRegion r;
    r.provenance_ = provenance;
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2& a = vertices[i];
      const Vec2& b = vertices[(i + 1) % k];
      const Vec2& c = vertices[(i + 2) % k];
      const Vec2 e = b - a;
      const double len = e.norm();
      if (!(len > 1e-15 * std::max(1.0, scale))) throw std::invalid_argument("from_vertices: repeated vertex");
      if (cross(e, c - b) < -1e-12 * scale * scale) throw std::invalid_argument("from_vertices: not convex counterclockwise");
      area2 += cross(a, b);
      const Vec2 n(e.y() / len, -e.x() / len);
      r.halfspaces_.push_back({n, n.dot(a)});
    }
    if (!(area2 > 0.0)) throw std::invalid_argument("from_vertices: empty interior or clockwise order");
    r.vertices_ = std::move(vertices);
    return r;
  }

  /// Convex hull of arbitrary points.
  static ConvexRegion hull_of(std::vector<Vec2> points, Provenance provenance = Provenance::user) {
    return from_vertices(detail::convex_hull(std::move(points)), provenance);
  }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  Provenance provenance() const { return provenance_; }
  std::size_t size() const { return vertices_.size(); }

  /// True when every edge line stays a positive distance from the origin
  /// on the inner side.
  bool contains_origin_strictly() const {
    return std::all_of(halfspaces_.begin(), halfspaces_.end(), [](const HalfSpace& h) { return h.offset > 0.0; });
  }

  bool contains(const Vec2& x, double tol = 1e-12) const {
    const double slack = tol * std::max(1.0, radius());
    return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                       [&](const HalfSpace& h) { return x.dot(h.normal) <= h.offset + slack; });
  }

  /// Euclidean distance from x to the region (0 inside).
  double distance(const Vec2& x) const {
    if (contains(x, 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      best = std::min(best, detail::segment_distance(x, vertices_[i], vertices_[(i + 1) % vertices_.size()]));
    return best;
  }

  /// max over the region of <v, .>.
  double support(const Vec2& v) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& x : vertices_) best = std::max(best, v.dot(x));
    return best;
  }

  /// Minkowski gauge min{t >= 0 : v in t * region}; origin must be interior.
  double gauge(const Vec2& v) const {
    if (!contains_origin_strictly()) throw std::domain_error("gauge: origin is not interior");
    double best = 0.0;
    for (const auto& h : halfspaces_) best = std::max(best, v.dot(h.normal) / h.offset);
    return best;
  }

  double radius() const {
    double best = 0.0;
    for (const auto& x : vertices_) best = std::max(best, x.norm());
    return best;
  }

  double diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (std::size_t j = i + 1; j < vertices_.size(); ++j) best = std::max(best, (vertices_[i] - vertices_[j]).norm());
    return best;
  }

  double area() const {
    double a2 = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) a2 += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    return 0.5 * a2;
  }

  /// center + scale * region.
  ConvexRegion scaled_translated(double scale, const Vec2& center, Provenance provenance) const {
    if (!(scale > 0.0)) throw std::invalid_argument("scaled_translated: scale must be positive");
    ConvexRegion r = *this;
    r.provenance_ = provenance;
    for (auto& v : r.vertices_) v = center + scale * v;
    for (auto& h : r.halfspaces_) h.offset = scale * h.offset + h.normal.dot(center);
    return r;
  }

 private:
  ConvexRegion() = default;

  std::vector<Vec2> vertices_;
  std::vector<HalfSpace> halfspaces_;
  Provenance provenance_ = Provenance::user;
};

/// Polar body {z : <z, x> <= 1 for all x in region}. Each vertex p of the
/// region becomes the constraint <z, p> <= 1.
inline ConvexRegion polar(const ConvexRegion& region, Provenance provenance = Provenance::polar_body) {
  if (!region.contains_origin_strictly()) throw std::domain_error("polar: origin is not interior, polar body is unbounded");
  return ConvexRegion::from_dual_points(region.vertices(), provenance);
}

inline double support_function(const ConvexRegion& region, const Vec2& v) {
  if (v.squaredNorm() == 0.0) return 0.0;
  return region.support(v);
}

struct SupportingHyperplane {
  Vec2 normal;
  double offset;
};

inline SupportingHyperplane supporting_hyperplane(const ConvexRegion& region, const Vec2& v) {
  const double len = v.norm();
  if (std::abs(len - 1.0) > 1e-9) throw std::invalid_argument("supporting_hyperplane: direction must be a unit vector");
  return {v, region.support(v)};
}

/// The face of the region exposed by direction `normal`: a vertex or an edge.
struct ContactFace {
  Vec2 normal;
  Vec2 first;
  Vec2 last;  // equal to `first` when the face is a vertex
  Vec2 representative;

  bool is_vertex() const { return (first - last).norm() == 0.0; }
  /// Points worth trying as a common contact point: the endpoints and the midpoint.
  std::vector<Vec2> candidates() const {
    if (is_vertex()) return {first};
    return {first, representative, last};
  }
};

/// Vertices whose value <x, v> is within tol (relative to max(1, support)) of
/// the support value. They form one cyclic run; its ends span the face.
inline ContactFace contact_face(const ConvexRegion& region, const Vec2& v, double tol = 1e-9) {
  if (!(tol > 0.0)) throw std::invalid_argument("contact_face: tol must be positive");
  const auto& xs = region.vertices();
  const std::size_t k = xs.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (v.dot(xs[i]) > v.dot(xs[best])) best = i;
  const double top = v.dot(xs[best]);
  const double floor = top - tol * std::max(1.0, std::abs(top));
  std::size_t fwd = 0;
  while (fwd + 1 < k && v.dot(xs[(best + fwd + 1) % k]) >= floor) ++fwd;
  std::size_t back = 0;
  while (back + fwd + 1 < k && v.dot(xs[(best + k - back - 1) % k]) >= floor) ++back;
  const Vec2& first = xs[(best + k - back) % k];
  const Vec2& last = xs[(best + fwd) % k];
  const double len = v.norm();
  return {v / len, first, last, 0.5 * (first + last)};
}

struct NormalCone {
  Vec2 at;
  std::vector<Vec2> generators;  // one (edge interior) or two (vertex)
};

inline NormalCone normal_cone(const ConvexRegion& region, const Vec2& y, double tol = 1e-9) {
  const auto& xs = region.vertices();
  const auto& hs = region.halfspaces();
  const std::size_t k = xs.size();
  const double slack = tol * std::max(1.0, region.radius());
  for (std::size_t i = 0; i < k; ++i)
    if ((xs[i] - y).norm() <= slack) return {xs[i], {hs[(i + k - 1) % k].normal, hs[i].normal}};
  for (std::size_t i = 0; i < k; ++i)
    if (detail::segment_distance(y, xs[i], xs[(i + 1) % k]) <= slack) return {y, {hs[i].normal}};
  throw std::invalid_argument("normal_cone: point is not on the region boundary");
}

/// Vertices that are not (numerically) interior to their neighbours' chord:
/// a vertex is dropped when the triangle it forms with its neighbours has
/// area below 1e-10 * diameter^2.
inline std::vector<Vec2> extremal_points(const ConvexRegion& region) {
  std::vector<Vec2> pts = region.vertices();
  const double d = region.diameter();
  const double threshold = 1e-10 * d * d;
  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() > 3; ++i) {
      const std::size_t k = pts.size();
      const Vec2& a = pts[(i + k - 1) % k];
      const Vec2& c = pts[(i + 1) % k];
      if (0.5 * std::abs(cross(pts[i] - a, c - a)) < threshold) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return pts;
}

/// Hausdorff distance between two convex regions (attained at vertices).
inline double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b) {
  double h = 0.0;
  for (const auto& x : a.vertices()) h = std::max(h, b.distance(x));
  for (const auto& x : b.vertices()) h = std::max(h, a.distance(x));
  return h;
}

}  // namespace wulff

#endif  // WULFF_CONVEX_REGION_HPP
