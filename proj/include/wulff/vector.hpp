#ifndef WULFF_VECTOR_HPP
#define WULFF_VECTOR_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

namespace wulff {

/// Point or direction in R^n.
using Vector = Eigen::VectorXd;
/// Point or direction in the plane; all exact polygon geometry works on these.
using Vec2 = Eigen::Vector2d;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Angle of `v` in [0, 2pi).
inline double polar_angle(const Vec2& v) {
  double a = std::atan2(v.y(), v.x());
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

inline Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline Vec2 as_vec2(const Vector& v) {
  if (v.size() != 2) throw std::invalid_argument("expected a planar vector");
  return {v[0], v[1]};
}

inline Vector as_vector(const Vec2& v) {
  Vector out(2);
  out << v.x(), v.y();
  return out;
}

inline Vector make_vector(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

}  // namespace wulff

#endif  // WULFF_VECTOR_HPP
