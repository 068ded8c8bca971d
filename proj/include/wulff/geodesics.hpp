#ifndef WULFF_GEODESICS_HPP
#define WULFF_GEODESICS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wulff/crystal.hpp"
#include "wulff/path.hpp"

namespace wulff {

/// ||y - x||_F.
inline double geodesic_distance(const Context& ctx, const Vec2& x, const Vec2& y) { return ctx.envelope(y - x); }

struct SegmentCheck {
  Vec2 direction;   // unit direction of the segment
  bool contact_ok;  // F = D(F) there
  bool support_ok;  // x + direction^perp supports K_F at the common point
};

/// Evidence for or against a polyline being an F-geodesic.
///
/// `verdict` compares the F-length with the distance of the endpoints.
/// `tangency` is the independent pointwise test: every segment direction is
/// a contact direction and the line through one common point of the contact
/// face of the displacement, orthogonal to the segment, supports K_F.
struct GeodesicCertificate {
  double achieved_length = 0.0;
  double target_norm = 0.0;
  double tolerance = 0.0;
  ContactFace contact_face;
  std::vector<SegmentCheck> per_segment;
  std::optional<Vec2> common_point;  // the contact point that certified, if any
  bool verdict = false;
  bool tangency = false;
};

inline GeodesicCertificate is_geodesic(const Context& ctx, const Path& path, double tol = -1.0) {
  if (path.dimension() != 2) throw std::invalid_argument("is_geodesic: planar paths only");
  if (tol < 0.0) tol = ctx.default_tol();
  const Vec2 v = as_vec2(path.displacement());
  if (v.norm() <= Path::kMinSegment) throw std::invalid_argument("is_geodesic: endpoints coincide");

  GeodesicCertificate cert;
  cert.tolerance = tol;
  cert.achieved_length = path_length(ctx.integrand(), path);
  cert.target_norm = ctx.envelope(v);
  // The F-length never falls below the norm; the comparison is one-sided so
  // that grid overshoot of the norm cannot reject a segment.
  cert.verdict = cert.achieved_length - cert.target_norm <= tol * std::max(1.0, cert.target_norm);
  cert.contact_face = ctx.contact(v);

  std::vector<Vec2> dirs;
  std::vector<bool> contact;
  for (std::size_t i = 0; i < path.segment_count(); ++i) {
    const Vec2 d = as_vec2(path.segment(i));
    const double fd = ctx.integrand()(d);
    contact.push_back(fd - ctx.envelope(d) <= tol * std::max(1.0, fd));
    dirs.push_back(d / d.norm());
  }
  auto checks_for = [&](const Vec2& xbar) {
    std::vector<SegmentCheck> out;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const double dd = ctx.envelope(dirs[i]);
      out.push_back({dirs[i], contact[i], std::abs(dirs[i].dot(xbar) - dd) <= tol * std::max(1.0, dd)});
    }
    return out;
  };
  for (const auto& xbar : cert.contact_face.candidates()) {
    auto checks = checks_for(xbar);
    if (std::all_of(checks.begin(), checks.end(), [](const SegmentCheck& c) { return c.contact_ok && c.support_ok; })) {
      cert.per_segment = std::move(checks);
      cert.common_point = xbar;
      cert.tangency = true;
      return cert;
    }
  }
  cert.per_segment = checks_for(cert.contact_face.representative);
  return cert;
}

enum class Multiplicity { UniqueUpToReparam, InfinitelyMany };

inline const char* to_string(Multiplicity m) {
  return m == Multiplicity::UniqueUpToReparam ? "UniqueUpToReparam" : "InfinitelyMany";
}

inline Multiplicity classify(const Context& ctx, const Vec2& x, const Vec2& y, double tol = -1.0) {
  if ((y - x).norm() == 0.0) throw std::invalid_argument("classify: endpoints coincide");
  return is_orthogonal_direction(ctx, y - x, tol) ? Multiplicity::UniqueUpToReparam : Multiplicity::InfinitelyMany;
}

/// v / ||v||_F written as a convex combination of extremal points of O_F,
/// each of unit norm.
struct DirectionDecomposition {
  struct Term {
    double weight;
    Vec2 direction;
  };
  std::vector<Term> terms;

  Vec2 reconstructed() const {
    Vec2 s = Vec2::Zero();
    for (const auto& t : terms) s += t.weight * t.direction;
    return s;
  }
};

inline DirectionDecomposition decompose_direction(const Context& ctx, const Vec2& v, double tol = -1.0) {
  if (v.squaredNorm() == 0.0) throw std::invalid_argument("decompose_direction: zero vector");
  if (tol < 0.0) tol = ctx.extremal_tol();
  const auto extremal = extremal_points(ctx.polar_body());
  const auto loc = detail::locate_on_polar(ctx, extremal, v);
  if (loc.vertex_distance <= tol) return {{{1.0, loc.point}}};
  const Vec2& a = extremal[loc.edge];
  const Vec2& b = extremal[(loc.edge + 1) % extremal.size()];
  return {{{1.0 - loc.along, a}, {loc.along, b}}};
}

/// A geodesic from x to y: the segment when y - x is in Ort(dK_F), else the
/// two legs along the extremal directions of the decomposition, the first
/// extremal direction travelled first.
inline Path construct_geodesic(const Context& ctx, const Vec2& x, const Vec2& y, double tol = -1.0) {
  const Vec2 v = y - x;
  if (v.norm() == 0.0) throw std::invalid_argument("construct_geodesic: endpoints coincide");
  const auto dec = decompose_direction(ctx, v, tol);
  if (dec.terms.size() == 1) return Path{x, y};
  const double norm = ctx.envelope(v);
  return Path{x, x + dec.terms[0].weight * norm * dec.terms[0].direction, y};
}

/// sigma^tau = gamma_{(1-tau)u} <> gamma_w <> gamma_{tau u}: from x, a leg
/// tau u, the whole leg w, then the remaining (1 - tau) u. Zero-length legs
/// (tau = 0 or 1) are dropped.
inline Path geodesic_family(const Context& ctx, const Vec2& x, const Vec2& y, double tau, double tol = -1.0) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("geodesic_family: tau must lie in [0, 1]");
  const Vec2 v = y - x;
  if (v.norm() == 0.0) throw std::invalid_argument("geodesic_family: endpoints coincide");
  const auto dec = decompose_direction(ctx, v, tol);
  if (dec.terms.size() != 2)
    throw std::domain_error("geodesic_family: direction is extremal, the geodesic is unique");
  const double norm = ctx.envelope(v);
  const Vec2 u = dec.terms[0].weight * norm * dec.terms[0].direction;
  const Vec2 w = dec.terms[1].weight * norm * dec.terms[1].direction;
  std::vector<Vector> pts{as_vector(x)};
  const Vec2 p1 = x + tau * u;
  const Vec2 p2 = p1 + w;
  if (tau > 0.0) pts.push_back(as_vector(p1));
  if (tau < 1.0) pts.push_back(as_vector(p2));
  pts.push_back(as_vector(y));
  return Path(std::move(pts));
}

/// Points reachable from `center` with F-length at most r: center + r O_F.
inline ConvexRegion geodesic_ball(const Context& ctx, const Vec2& center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("geodesic_ball: radius must be positive");
  return ctx.polar_body().scaled_translated(r, center, Provenance::ball);
}

}  // namespace wulff

#endif  // WULFF_GEODESICS_HPP
