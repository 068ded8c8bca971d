#ifndef WULFF_TRANSFORMS_HPP
#define WULFF_TRANSFORMS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wulff/integrand.hpp"
#include "wulff/sphere_grid.hpp"

namespace wulff {

/// A positive function known at the directions of a grid, extended
/// 1-homogeneously.
class SampledFunction {
 public:
  SampledFunction(SphereGrid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("SampledFunction: size mismatch");
  }

  const SphereGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }
  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }

  /// Value at an arbitrary vector. In the plane, x is written as
  /// a v_i + b v_{i+1} over the bracketing grid directions and the result is
  /// a h_i + b h_{i+1}; this is exact for support functions of polygons whose
  /// edge normals are grid directions. Elsewhere: nearest grid direction.
  double at(const Vector& x) const { return interpolate(x, [](double h) { return h; }); }

  /// Gauge of the region {x : |x| <= h(x/|x|)} through the same cone
  /// interpolation applied to 1/h; the region boundary is the polygon through
  /// the points h_i v_i.
  double gauge_at(const Vector& x) const { return interpolate(x, [](double h) { return 1.0 / h; }); }

 private:
  template <typename Map>
  double interpolate(const Vector& x, Map map) const {
    if (x.size() != grid_.dimension()) throw std::invalid_argument("SampledFunction: dimension mismatch");
    const double r = x.norm();
    if (r == 0.0) return 0.0;
    if (grid_.dimension() != 2) return r * map(values_[grid_.nearest(x)]);
    const Vec2 p = as_vec2(x);
    const std::size_t i = grid_.bracket(polar_angle(p));
    const std::size_t j = (i + 1) % grid_.size();
    const Vec2 vi = as_vec2(grid_[i]);
    const Vec2 vj = as_vec2(grid_[j]);
    const double det = cross(vi, vj);
    const double a = cross(p, vj) / det;
    const double b = cross(vi, p) / det;
    return a * map(values_[i]) + b * map(values_[j]);
  }

  SphereGrid grid_;
  std::vector<double> values_;
};

inline std::vector<double> sample(const Integrand& f, const SphereGrid& grid) {
  if (f.dimension() != grid.dimension()) throw std::invalid_argument("sample: dimension mismatch");
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
  return out;
}

/// W(F)(v) = min over grid w with <v,w> > 0 of F(w) / <v,w>: the radial
/// function of the crystal seen through the grid.
inline SampledFunction wulff_transform(const Integrand& f, const SphereGrid& grid) {
  const std::vector<double> fw = sample(f, grid);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double d = grid[i].dot(grid[j]);
      if (d > 0.0) best = std::min(best, fw[j] / d);
    }
    out[i] = best;
  }
  return {grid, std::move(out)};
}

/// I(F)(v) = 1 / F(v).
inline Integrand inversion_transform(const Integrand& f) { return Integrand::reciprocal(f); }

/// A(G)(v) = max over grid w of G(w) <v,w>.
inline SampledFunction support_transform(const SampledFunction& g) {
  const SphereGrid& grid = g.grid();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.size(); ++j) best = std::max(best, g[j] * grid[i].dot(grid[j]));
    out[i] = best;
  }
  return {grid, std::move(out)};
}

/// D(F) = A(W(F)) on the grid.
inline SampledFunction convex_envelope(const Integrand& f, const SphereGrid& grid) {
  return support_transform(wulff_transform(f, grid));
}

/// The grid envelope as an integrand valid everywhere: the support function
/// of the points W(F)(w) w, which agrees with `convex_envelope` on the grid.
inline Integrand envelope_integrand(const Integrand& f, const SphereGrid& grid) {
  const SampledFunction w = wulff_transform(f, grid);
  std::vector<Integrand::Facet> facets;
  facets.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) facets.push_back({grid[i], w[i]});
  return Integrand::crystalline(std::move(facets));
}

/// Membership of x in Cont(F) = {F = D(F)} up to the relative slack `tol`.
/// The origin always belongs.
inline bool contact_contains(const Integrand& f, const SampledFunction& envelope, const Vector& x, double tol = 1e-6) {
  if (!(tol > 0.0)) throw std::invalid_argument("contact_contains: tol must be positive");
  if (x.norm() == 0.0) return true;
  const double fx = f(x);
  return fx - envelope.at(x) <= tol * std::max(1.0, fx);
}

/// Membership of x in Hypo(G) = {x : |x| <= G(x/|x|)}. The set is closed;
/// boundary points pass up to rounding (1e-12 relative).
inline bool hypograph_contains(const SampledFunction& g, const Vector& x) {
  if (x.norm() == 0.0) return true;
  return g.gauge_at(x) <= 1.0 + 1e-12;
}

}  // namespace wulff

#endif  // WULFF_TRANSFORMS_HPP
