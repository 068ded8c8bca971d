#ifndef WULFF_INTEGRAND_HPP
#define WULFF_INTEGRAND_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wulff/vector.hpp"

namespace wulff {

/// Directional cost F: positive on the unit sphere, extended 1-homogeneously.
///
/// Every spec is validated at construction, so `eval` never fails. The
/// closed-form kinds (p-norm, constant, crystalline) are convex; table,
/// dip and reciprocal integrands are treated as possibly non-convex.
class Integrand {
 public:
  /// x -> ||x||_p, p in [1, inf].
  struct PNorm {
    double p;
  };
  /// x -> c |x|.
  struct Constant {
    double c;
  };
  /// One generator of a crystalline cost; `direction` is stored normalized.
  struct Facet {
    Vector direction;
    double weight;
  };
  /// x -> max_i weight_i <x, direction_i>, the support function of the
  /// points weight_i * direction_i. Positive iff those points surround 0.
  struct Crystalline {
    std::vector<Facet> facets;
  };
  struct TableSample {
    double angle;
    double value;
  };
  /// Planar samples, interpolated piecewise-linearly in the angle.
  struct Table {
    std::vector<TableSample> samples;
  };
  struct DipPoint {
    Vector direction;
    double value;
  };
  /// Pointwise minimum of `base` with zero-width downward spikes.
  struct Dipped {
    std::shared_ptr<const Integrand> base;
    std::vector<DipPoint> dips;
  };
  /// v -> 1 / inner(v) on unit directions.
  struct Reciprocal {
    std::shared_ptr<const Integrand> inner;
  };

  using Spec = std::variant<PNorm, Constant, Crystalline, Table, Dipped, Reciprocal>;

  /// Two unit vectors closer than this count as the same direction.
  static constexpr double kDirectionTol = 1e-12;

  static Integrand pnorm(int dimension, double p) {
    check_dimension(dimension);
    if (!(p >= 1.0)) throw std::invalid_argument("pnorm: exponent must be >= 1");
    return Integrand(dimension, PNorm{p});
  }

  static Integrand constant(int dimension, double c) {
    check_dimension(dimension);
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("constant: value must be positive");
    return Integrand(dimension, Constant{c});
  }

  static Integrand crystalline(std::vector<Facet> facets) {
    if (facets.empty()) throw std::invalid_argument("crystalline: no facets");
    const auto n = static_cast<int>(facets.front().direction.size());
    check_dimension(n);
    for (auto& f : facets) {
      if (f.direction.size() != n) throw std::invalid_argument("crystalline: mixed dimensions");
      const double len = f.direction.norm();
      if (!(len > 0.0)) throw std::invalid_argument("crystalline: zero facet direction");
      if (!(f.weight > 0.0) || !std::isfinite(f.weight))
        throw std::invalid_argument("crystalline: facet weight must be positive");
      f.direction /= len;
    }
    if (n == 2 && !surrounds_origin(facets))
      throw std::invalid_argument("crystalline: facet directions do not positively span the plane");
    return Integrand(n, Crystalline{std::move(facets)});
  }

  static Integrand table(std::vector<TableSample> samples) {
    if (samples.empty()) throw std::invalid_argument("table: no samples");
    for (auto& s : samples) {
      if (!(s.value > 0.0) || !std::isfinite(s.value))
        throw std::invalid_argument("table: sample values must be positive");
      s.angle = std::fmod(s.angle, kTwoPi);
      if (s.angle < 0.0) s.angle += kTwoPi;
    }
    std::sort(samples.begin(), samples.end(),
              [](const TableSample& a, const TableSample& b) { return a.angle < b.angle; });
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (samples[i].angle - samples[i - 1].angle < 1e-12)
        throw std::invalid_argument("table: duplicate sample angle");
    return Integrand(2, Table{std::move(samples)});
  }

  static Integrand dip(Integrand base, std::vector<DipPoint> dips) {
    for (auto& d : dips) {
      if (d.direction.size() != base.dimension()) throw std::invalid_argument("dip: dimension mismatch");
      const double len = d.direction.norm();
      if (!(len > 0.0)) throw std::invalid_argument("dip: zero direction");
      if (!(d.value > 0.0) || !std::isfinite(d.value)) throw std::invalid_argument("dip: value must be positive");
      d.direction /= len;
    }
    const int n = base.dimension();
    return Integrand(n, Dipped{std::make_shared<const Integrand>(std::move(base)), std::move(dips)});
  }

  static Integrand reciprocal(Integrand inner) {
    const int n = inner.dimension();
    return Integrand(n, Reciprocal{std::make_shared<const Integrand>(std::move(inner))});
  }

  int dimension() const { return dimension_; }
  const Spec& spec() const { return spec_; }

  /// F(x); zero at the origin and |x| F(x/|x|) elsewhere.
  double operator()(const Vector& x) const {
    if (x.size() != dimension_) throw std::invalid_argument("integrand: dimension mismatch");
    const double r = x.norm();
    if (r == 0.0) return 0.0;
    if (const auto* pn = std::get_if<PNorm>(&spec_)) return pnorm_value(x, pn->p);
    const Vector u = x / r;
    return r * on_sphere(u);
  }

  double operator()(const Vec2& x) const { return (*this)(as_vector(x)); }

  /// Closed-form convex kinds. For these the convex envelope is F itself.
  bool is_convex() const {
    return std::holds_alternative<PNorm>(spec_) || std::holds_alternative<Constant>(spec_) ||
           std::holds_alternative<Crystalline>(spec_);
  }

  /// Directions where F is not continuous (dip spikes). Grids that must see
  /// F's true infimum need to contain these.
  std::vector<Vector> feature_directions() const {
    std::vector<Vector> out;
    if (const auto* d = std::get_if<Dipped>(&spec_)) {
      out = d->base->feature_directions();
      for (const auto& p : d->dips) out.push_back(p.direction);
    } else if (const auto* r = std::get_if<Reciprocal>(&spec_)) {
      out = r->inner->feature_directions();
    }
    return out;
  }

  /// Extreme points of the subdifferential of a convex F at v != 0, i.e.
  /// the points x of K_F with <v, x> = F(v). `tol` is the relative slack
  /// used to decide which pieces are active at non-smooth points.
  std::vector<Vector> contact_points(const Vector& v, double tol = 1e-12) const {
    if (!is_convex()) throw std::logic_error("contact_points: integrand is not a closed-form convex kind");
    if (v.size() != dimension_) throw std::invalid_argument("contact_points: dimension mismatch");
    const double r = v.norm();
    if (r == 0.0) throw std::invalid_argument("contact_points: zero vector");
    const Vector u = v / r;
    if (const auto* c = std::get_if<Constant>(&spec_)) return {c->c * u};
    if (const auto* cr = std::get_if<Crystalline>(&spec_)) {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& f : cr->facets) best = std::max(best, f.weight * u.dot(f.direction));
      std::vector<Vector> out;
      for (const auto& f : cr->facets)
        if (f.weight * u.dot(f.direction) >= best - tol * std::max(1.0, std::abs(best)))
          out.push_back(f.weight * f.direction);
      return out;
    }
    const double p = std::get<PNorm>(spec_).p;
    const double vmax = u.cwiseAbs().maxCoeff();
    if (p == 1.0) {
      std::vector<Vector> out{Vector::Zero(dimension_)};
      for (int i = 0; i < dimension_; ++i) {
        if (std::abs(u[i]) > tol * vmax) {
          for (auto& x : out) x[i] = u[i] > 0 ? 1.0 : -1.0;
        } else {
          std::vector<Vector> grown;
          for (auto x : out) {
            x[i] = -1.0;
            grown.push_back(x);
            x[i] = 1.0;
            grown.push_back(x);
          }
          out = std::move(grown);
        }
      }
      return out;
    }
    if (std::isinf(p)) {
      std::vector<Vector> out;
      for (int i = 0; i < dimension_; ++i) {
        if (std::abs(u[i]) >= (1.0 - tol) * vmax) {
          Vector e = Vector::Zero(dimension_);
          e[i] = u[i] > 0 ? 1.0 : -1.0;
          out.push_back(e);
        }
      }
      return out;
    }
    // Smooth case: the gradient sign(u_i) |u_i|^(p-1) / ||u||_p^(p-1).
    const double norm = pnorm_value(u, p);
    Vector g(dimension_);
    for (int i = 0; i < dimension_; ++i)
      g[i] = (u[i] < 0 ? -1.0 : 1.0) * std::pow(std::abs(u[i]) / norm, p - 1.0);
    return {g};
  }

 private:
  Integrand(int dimension, Spec spec) : dimension_(dimension), spec_(std::move(spec)) {}

  static void check_dimension(int n) {
    if (n < 2) throw std::invalid_argument("integrand dimension must be >= 2");
  }

  static bool surrounds_origin(const std::vector<Facet>& facets) {
    std::vector<double> angles;
    for (const auto& f : facets) angles.push_back(polar_angle(as_vec2(f.direction)));
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + kTwoPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    return gap < std::numbers::pi - 1e-12;
  }

  static double pnorm_value(const Vector& x, double p) {
    const double m = x.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    if (std::isinf(p)) return m;
    if (p == 1.0) return x.cwiseAbs().sum();
    if (p == 2.0) return x.norm();
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
    return m * std::pow(s, 1.0 / p);
  }

  // F on a unit vector u.
  double on_sphere(const Vector& u) const {
    return std::visit(
        [&](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, PNorm>) {
            return pnorm_value(u, s.p);
          } else if constexpr (std::is_same_v<T, Constant>) {
            return s.c;
          } else if constexpr (std::is_same_v<T, Crystalline>) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& f : s.facets) best = std::max(best, f.weight * u.dot(f.direction));
            return best;
          } else if constexpr (std::is_same_v<T, Table>) {
            return table_value(s, polar_angle(as_vec2(u)));
          } else if constexpr (std::is_same_v<T, Dipped>) {
            double value = (*s.base)(u);
            for (const auto& d : s.dips)
              if ((u - d.direction).norm() <= kDirectionTol) value = std::min(value, d.value);
            return value;
          } else {
            return 1.0 / (*s.inner)(u);
          }
        },
        spec_);
  }

  static double table_value(const Table& t, double angle) {
    const auto& s = t.samples;
    if (s.size() == 1) return s.front().value;
    auto hi = std::upper_bound(s.begin(), s.end(), angle,
                               [](double a, const TableSample& x) { return a < x.angle; });
    const TableSample& b = hi == s.end() ? s.front() : *hi;
    const TableSample& a = hi == s.begin() ? s.back() : *(hi - 1);
    double span = b.angle - a.angle;
    double offset = angle - a.angle;
    if (span <= 0.0) span += kTwoPi;
    if (offset < 0.0) offset += kTwoPi;
    const double t01 = offset / span;
    return (1.0 - t01) * a.value + t01 * b.value;
  }

  int dimension_;
  Spec spec_;
};

}  // namespace wulff

#endif  // WULFF_INTEGRAND_HPP
