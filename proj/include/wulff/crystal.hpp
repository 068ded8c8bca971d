#ifndef WULFF_CRYSTAL_HPP
#define WULFF_CRYSTAL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wulff/convex_region.hpp"
#include "wulff/integrand.hpp"
#include "wulff/sphere_grid.hpp"
#include "wulff/transforms.hpp"

namespace wulff {

/// K_F = intersection over grid directions v of {<x, v> <= F(v)}.
inline ConvexRegion build_crystal(const Integrand& f, const SphereGrid& grid) {
  if (f.dimension() != 2 || grid.dimension() != 2) throw std::invalid_argument("build_crystal: planar integrands only");
  std::vector<HalfSpace> hs;
  hs.reserve(grid.size());
  for (const auto& v : grid.directions()) hs.push_back({as_vec2(v), f(v)});
  try {
    return ConvexRegion::intersect(hs, Provenance::crystal);
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string("build_crystal: grid too coarse to bound the crystal (") + e.what() + ")");
  }
}

namespace detail {

// Directions at which F has a kink or a dip; adding them to the grid makes
// the grid crystal exact on the polygonal parts of K_F.
inline std::vector<Vector> planar_feature_directions(const Integrand& f) {
  std::vector<Vector> out = f.feature_directions();
  if (const auto* pn = std::get_if<Integrand::PNorm>(&f.spec())) {
    if (pn->p == 1.0)
      for (const auto& d : {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)}) out.push_back(as_vector(d));
    if (std::isinf(pn->p))
      for (const auto& d : {Vec2(1, 1), Vec2(-1, 1), Vec2(-1, -1), Vec2(1, -1)}) out.push_back(as_vector(d));
  } else if (const auto* cr = std::get_if<Integrand::Crystalline>(&f.spec())) {
    std::vector<Vec2> pts;
    for (const auto& fc : cr->facets) pts.push_back(fc.weight * as_vec2(fc.direction));
    const auto hull = convex_hull(std::move(pts));
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Vec2 e = hull[(i + 1) % hull.size()] - hull[i];
      out.push_back(as_vector(Vec2(e.y(), -e.x())));
    }
  }
  return out;
}

}  // namespace detail

/// Everything derived from one planar integrand on one grid: the crystal
/// K_F, the polar body O_F (the unit geodesic ball), and the envelope D(F).
///
/// For closed-form convex integrands D(F) = F, so the envelope and contact
/// faces are evaluated analytically; the polygons serve the set-level
/// queries. Otherwise D(F) is the support function of the grid crystal.
class Context {
 public:
  explicit Context(Integrand f, const SphereGrid& grid = SphereGrid::circle())
      : f_(std::move(f)),
        grid_(grid.with_directions(detail::planar_feature_directions(f_))),
        crystal_(build_crystal(f_, grid_)),
        polar_(polar(crystal_)) {
    for (const auto& v : grid_.directions()) max_f_ = std::max(max_f_, f_(v));
  }

  const Integrand& integrand() const { return f_; }
  const SphereGrid& grid() const { return grid_; }
  const ConvexRegion& crystal() const { return crystal_; }
  const ConvexRegion& polar_body() const { return polar_; }

  /// True when D(F) is evaluated in closed form.
  bool exact() const { return f_.is_convex(); }
  double resolution() const { return grid_.resolution(); }
  /// max of F over the grid directions.
  double max_value() const { return max_f_; }

  /// D(F)(v) = ||v||_F.
  double envelope(const Vec2& v) const {
    if (v.squaredNorm() == 0.0) return 0.0;
    return exact() ? f_(v) : crystal_.support(v);
  }

  /// Points x of K_F with <v, x> = D(F)(v).
  ContactFace contact(const Vec2& v, double tol = 1e-9) const {
    if (!exact()) return contact_face(crystal_, v, tol);
    const auto pts = f_.contact_points(as_vector(v), 1e-12);
    const Vec2 along(-v.y(), v.x());
    auto lo = pts.front(), hi = pts.front();
    for (const auto& p : pts) {
      if (as_vec2(p).dot(along) < as_vec2(lo).dot(along)) lo = p;
      if (as_vec2(p).dot(along) > as_vec2(hi).dot(along)) hi = p;
    }
    const Vec2 a = as_vec2(lo), b = as_vec2(hi);
    return {v / v.norm(), a, b, 0.5 * (a + b)};
  }

  /// Verification tolerance suited to this context: 1e-7 when D(F) is
  /// closed-form, otherwise 5 * resolution * max F.
  double default_tol() const { return exact() ? 1e-7 : 5.0 * resolution() * max_f_; }

  /// Distance below which a point of the boundary of O_F counts as one of
  /// its vertices: the chord spanned by one grid step at the body's radius.
  double extremal_tol() const { return resolution() * polar_.radius(); }

 private:
  Integrand f_;
  SphereGrid grid_;
  ConvexRegion crystal_;
  ConvexRegion polar_;
  double max_f_ = 0.0;
};

/// ||v||_F, the support function of K_F at v. The polygon route (gauge of
/// O_F versus support of K_F) is cross-checked on every call.
inline double anisotropic_norm(const Context& ctx, const Vec2& v) {
  if (v.squaredNorm() == 0.0) return 0.0;
  const double support = ctx.crystal().support(v);
  const double gauge = ctx.polar_body().gauge(v);
  if (std::abs(support - gauge) > 1e-9 * std::max(1.0, std::abs(support)))
    throw std::logic_error("anisotropic_norm: support of K_F and gauge of O_F disagree");
  return ctx.envelope(v);
}

namespace detail {

struct BoundaryLocation {
  Vec2 point;             // v / ||v||_F
  std::size_t edge;       // index into the extremal polygon
  double along;           // parameter of `point` on that edge, in [0, 1]
  double vertex_distance; // distance to the closer edge endpoint
};

inline BoundaryLocation locate_on_polar(const Context& ctx, const std::vector<Vec2>& extremal, const Vec2& v) {
  const double norm = ctx.envelope(v);
  const Vec2 p = v / norm;
  const std::size_t k = extremal.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2& a = extremal[i];
    const Vec2& b = extremal[(i + 1) % k];
    // p in the cone spanned by a and b (counterclockwise from a to b).
    if (cross(a, p) >= -1e-15 * a.norm() * p.norm() && cross(p, b) >= -1e-15 * b.norm() * p.norm()) {
      const double det = cross(a, b);
      const double s = cross(a, p) / det;
      const double r = cross(p, b) / det;
      const double t = std::clamp(s / (r + s), 0.0, 1.0);
      const double len = (b - a).norm();
      return {p, i, t, std::min(t, 1.0 - t) * len};
    }
  }
  throw std::logic_error("locate_on_polar: direction not bracketed by the polar body");
}

}  // namespace detail

/// Whether v lies in Ort(dK_F), i.e. v / ||v||_F is an extremal point of
/// O_F up to `tol`. A negative tol selects `ctx.extremal_tol()`.
inline bool is_orthogonal_direction(const Context& ctx, const Vec2& v, double tol = -1.0) {
  if (v.squaredNorm() == 0.0) throw std::invalid_argument("is_orthogonal_direction: zero vector");
  if (tol < 0.0) tol = ctx.extremal_tol();
  const auto extremal = extremal_points(ctx.polar_body());
  return detail::locate_on_polar(ctx, extremal, v).vertex_distance <= tol;
}

}  // namespace wulff

#endif  // WULFF_CRYSTAL_HPP
