#ifndef WULFF_SPHERE_GRID_HPP
#define WULFF_SPHERE_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "wulff/vector.hpp"

namespace wulff {

/// Finite set of unit directions standing in for the sphere. Every sup/inf
/// over the sphere in this library is a max/min over one of these.
///
/// In the plane the directions are kept sorted by angle in [0, 2pi); in R^3
/// they come from a Fibonacci lattice. Copies share the underlying storage.
class SphereGrid {
 public:
  static constexpr std::size_t kDefaultPlanarSize = 720;

  /// m equispaced planar directions, the first one being e1.
  static SphereGrid circle(std::size_t m = kDefaultPlanarSize) {
    if (m < 3) throw std::invalid_argument("SphereGrid: need at least 3 planar directions");
    std::vector<double> angles(m);
    for (std::size_t k = 0; k < m; ++k) angles[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    return from_angles(std::move(angles));
  }

  /// Fibonacci point set on the unit sphere of R^3.
  static SphereGrid fibonacci(std::size_t m) {
    if (m < 4) throw std::invalid_argument("SphereGrid: need at least 4 directions on S^2");
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Vector> dirs;
    dirs.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(m);
      const double rho = std::sqrt(1.0 - z * z);
      const double phi = golden * static_cast<double>(k);
      Vector v(3);
      v << rho * std::cos(phi), rho * std::sin(phi), z;
      dirs.push_back(v);
    }
    return from_directions(std::move(dirs));
  }

  /// Planar grid from arbitrary angles (radians). Angles are reduced to
  /// [0, 2pi), sorted, and must be pairwise distinct.
  static SphereGrid from_angles(std::vector<double> angles) {
    for (double& a : angles) {
      a = std::fmod(a, kTwoPi);
      if (a < 0.0) a += kTwoPi;
    }
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 1; i < angles.size(); ++i)
      if (angles[i] - angles[i - 1] < 1e-13) throw std::invalid_argument("SphereGrid: duplicate direction");
    auto data = std::make_shared<Data>();
    data->dimension = 2;
    data->angles = std::move(angles);
    for (double a : data->angles) {
      // Snap the last-ulp residue at multiples of pi/2 so axis directions are exact.
      double c = std::cos(a), s = std::sin(a);
      if (std::abs(c) < 1e-15) c = 0.0;
      if (std::abs(s) < 1e-15) s = 0.0;
      Vector v(2);
      v << c, s;
      data->directions.push_back(v);
    }
    data->resolution = planar_resolution(data->angles);
    return SphereGrid(std::move(data));
  }

  /// Grid from explicit directions (normalized here). Planar input is routed
  /// through `from_angles`.
  static SphereGrid from_directions(std::vector<Vector> dirs) {
    if (dirs.empty()) throw std::invalid_argument("SphereGrid: empty");
    const auto n = dirs.front().size();
    if (n == 2) {
      std::vector<double> angles;
      for (const auto& d : dirs) angles.push_back(polar_angle(as_vec2(d)));
      return from_angles(std::move(angles));
    }
    auto data = std::make_shared<Data>();
    data->dimension = static_cast<int>(n);
    for (auto& d : dirs) {
      if (d.size() != n) throw std::invalid_argument("SphereGrid: mixed dimensions");
      const double len = d.norm();
      if (!(len > 0.0)) throw std::invalid_argument("SphereGrid: zero direction");
      data->directions.push_back(d / len);
    }
    // Covering radius estimate: the largest nearest-neighbour angle.
    double worst = 0.0;
    for (std::size_t i = 0; i < data->directions.size(); ++i) {
      double best = std::numbers::pi;
      for (std::size_t j = 0; j < data->directions.size(); ++j) {
        if (i == j) continue;
        const double c = std::clamp(data->directions[i].dot(data->directions[j]), -1.0, 1.0);
        best = std::min(best, std::acos(c));
      }
      if (best < 1e-13) throw std::invalid_argument("SphereGrid: duplicate direction");
      worst = std::max(worst, best);
    }
    data->resolution = worst;
    return SphereGrid(std::move(data));
  }

  /// Same grid plus `extra` directions (planar only). Directions already
  /// present within 1e-12 radians are skipped.
  SphereGrid with_directions(std::span<const Vector> extra) const {
    if (dimension() != 2) throw std::invalid_argument("SphereGrid::with_directions: planar grids only");
    std::vector<double> angles = data_->angles;
    for (const auto& d : extra) {
      const double a = polar_angle(as_vec2(d));
      const bool present = std::any_of(angles.begin(), angles.end(), [&](double b) {
        const double gap = std::abs(a - b);
        return std::min(gap, kTwoPi - gap) < 1e-12;
      });
      if (!present) angles.push_back(a);
    }
    if (angles.size() == data_->angles.size()) return *this;
    return from_angles(std::move(angles));
  }

  int dimension() const { return data_->dimension; }
  std::size_t size() const { return data_->directions.size(); }
  const Vector& operator[](std::size_t i) const { return data_->directions[i]; }
  const std::vector<Vector>& directions() const { return data_->directions; }

  /// Largest angular gap between neighbouring directions (radians).
  double resolution() const { return data_->resolution; }

  /// Sorted angles; planar grids only.
  const std::vector<double>& angles() const {
    if (dimension() != 2) throw std::logic_error("SphereGrid::angles: planar grids only");
    return data_->angles;
  }

  /// Planar: index i such that `angle` lies in [angle_i, angle_{i+1}) cyclically.
  std::size_t bracket(double angle) const {
    const auto& a = angles();
    auto it = std::upper_bound(a.begin(), a.end(), angle);
    if (it == a.begin()) return a.size() - 1;
    return static_cast<std::size_t>(it - a.begin()) - 1;
  }

  /// Index of the direction with the largest inner product with `v`.
  std::size_t nearest(const Vector& v) const {
    std::size_t best = 0;
    double best_dot = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
      const double d = v.dot(data_->directions[i]);
      if (d > best_dot) {
        best_dot = d;
        best = i;
      }
    }
    return best;
  }

 private:
  struct Data {
    int dimension = 2;
    std::vector<Vector> directions;
    std::vector<double> angles;
    double resolution = 0.0;
  };

  explicit SphereGrid(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  static double planar_resolution(const std::vector<double>& angles) {
    if (angles.size() < 3) throw std::invalid_argument("SphereGrid: need at least 3 planar directions");
    double gap = angles.front() + kTwoPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    if (gap >= std::numbers::pi) throw std::invalid_argument("SphereGrid: directions do not positively span the plane");
    return gap;
  }

  std::shared_ptr<const Data> data_;
};

}  // namespace wulff

#endif  // WULFF_SPHERE_GRID_HPP
