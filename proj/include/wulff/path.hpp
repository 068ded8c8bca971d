#ifndef WULFF_PATH_HPP
#define WULFF_PATH_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wulff/integrand.hpp"
#include "wulff/vector.hpp"

namespace wulff {

/// Polyline through ordered breakpoints. Regular: every segment has
/// Euclidean length above kMinSegment.
class Path {
 public:
  static constexpr double kMinSegment = 1e-12;

  explicit Path(std::vector<Vector> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.size() < 2) throw std::invalid_argument("Path: need at least two breakpoints");
    const auto n = points_.front().size();
    if (n < 2) throw std::invalid_argument("Path: dimension must be >= 2");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].size() != n) throw std::invalid_argument("Path: mixed dimensions");
      if (i > 0 && (points_[i] - points_[i - 1]).norm() <= kMinSegment)
        throw std::invalid_argument("Path: degenerate segment " + std::to_string(i) + " (regularity violated)");
    }
  }

  Path(std::initializer_list<Vec2> pts) : Path(to_vectors(pts)) {}

  /// The segment t -> t v from the origin.
  static Path segment(const Vector& v) { return Path(std::vector<Vector>{Vector::Zero(v.size()), v}); }
  static Path segment(const Vector& from, const Vector& to) { return Path(std::vector<Vector>{from, to}); }

  int dimension() const { return static_cast<int>(points_.front().size()); }
  const std::vector<Vector>& breakpoints() const { return points_; }
  std::size_t segment_count() const { return points_.size() - 1; }
  Vector segment(std::size_t i) const { return points_[i + 1] - points_[i]; }
  const Vector& start() const { return points_.front(); }
  const Vector& end() const { return points_.back(); }
  Vector displacement() const { return end() - start(); }

 private:
  static std::vector<Vector> to_vectors(std::initializer_list<Vec2> pts) {
    std::vector<Vector> out;
    for (const auto& p : pts) out.push_back(as_vector(p));
    return out;
  }

  std::vector<Vector> points_;
};

/// F-length of a polyline: the sum of F over its segment vectors. Exact for
/// polylines, whatever their parametrization speed.
inline double path_length(const Integrand& f, const Path& path) {
  if (f.dimension() != path.dimension()) throw std::invalid_argument("path_length: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < path.segment_count(); ++i) total += f(path.segment(i));
  return total;
}

/// gamma_N <> ... <> gamma_1 with the operands listed left to right: the
/// last path is traversed first and each following one is translated to
/// start where the previous ended.
inline Path concatenate(std::span<const Path> paths) {
  if (paths.empty()) throw std::invalid_argument("concatenate: no paths");
  std::vector<Vector> pts{paths.back().start()};
  for (auto it = paths.rbegin(); it != paths.rend(); ++it) {
    const auto& bp = it->breakpoints();
    const Vector shift = pts.back() - bp.front();
    for (std::size_t i = 1; i < bp.size(); ++i) pts.push_back(bp[i] + shift);
  }
  return Path(std::move(pts));
}

}  // namespace wulff

#endif  // WULFF_PATH_HPP
