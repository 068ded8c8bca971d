#ifndef WULFF_TESTS_SUPPORT_HPP
#define WULFF_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "wulff/wulff.hpp"

namespace wulff::testing {

inline Integrand l1() { return Integrand::pnorm(2, 1.0); }
inline Integrand euclidean() { return Integrand::constant(2, 1.0); }
inline Integrand p3() { return Integrand::pnorm(2, 3.0); }
/// Unit base with one downward spike of value 1/2 at e1.
inline Integrand dip() { return Integrand::dip(Integrand::constant(2, 1.0), {{make_vector({1.0, 0.0}), 0.5}}); }

struct Named {
  std::string name;
  Integrand f;
};

inline std::vector<Named> four_integrands() { return {{"L1", l1()}, {"Euclidean", euclidean()}, {"p3", p3()}, {"dip", dip()}}; }

inline Vec2 random_point(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

/// Random polyline with 1 to 5 segments.
inline Path random_polyline(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 5);
  std::vector<Vector> pts{as_vector(random_point(rng))};
  const int k = count(rng);
  while (static_cast<int>(pts.size()) <= k) {
    const Vec2 p = random_point(rng);
    if ((p - as_vec2(pts.back())).norm() > 1e-3) pts.push_back(as_vector(p));
  }
  if ((pts.back() - pts.front()).norm() < 1e-3) pts.back() += make_vector({0.5, 0.5});
  return Path(std::move(pts));
}

/// Random convex polygon with the origin inside: the crystal of a randomly
/// perturbed positive cost on a coarse grid of directions.
inline Polygon random_convex_polygon(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(3, 24);
  std::uniform_real_distribution<double> offset(0.3, 2.0), jitter(-0.2, 0.2);
  const int m = size(rng);
  std::vector<HalfSpace> hs;
  for (int i = 0; i < m; ++i) hs.push_back({unit_at(kTwoPi * (i + 0.5 + jitter(rng)) / m), offset(rng)});
  return Polygon(ConvexRegion::intersect(hs).vertices());
}

}  // namespace wulff::testing

#endif  // WULFF_TESTS_SUPPORT_HPP
