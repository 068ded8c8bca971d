#ifndef WULFF_LATTICE_ORACLE_HPP
#define WULFF_LATTICE_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wulff/crystal.hpp"

namespace wulff {

using LatticeVector = std::array<std::int64_t, 2>;

/// Integer move set on Z^2.
class Stencil {
 public:
  explicit Stencil(std::vector<LatticeVector> moves) : moves_(std::move(moves)) {
    if (moves_.empty()) throw std::invalid_argument("Stencil: no moves");
    std::vector<Vec2> dirs;
    for (const auto& m : moves_) {
      if (m[0] == 0 && m[1] == 0) throw std::invalid_argument("Stencil: zero move");
      if (std::gcd(std::llabs(m[0]), std::llabs(m[1])) != 1) throw std::invalid_argument("Stencil: move is a multiple of another");
      dirs.push_back(Vec2(static_cast<double>(m[0]), static_cast<double>(m[1])));
    }
    std::vector<double> angles;
    for (const auto& d : dirs) angles.push_back(polar_angle(d));
    std::sort(angles.begin(), angles.end());
    if (std::adjacent_find(angles.begin(), angles.end()) != angles.end()) throw std::invalid_argument("Stencil: duplicate move");
    double gap = angles.front() + kTwoPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    if (gap >= std::numbers::pi) throw std::invalid_argument("Stencil: moves do not positively span the plane");
  }

  /// The four axis moves.
  static Stencil axis() { return Stencil({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

  /// Every primitive vector with max(|a|, |b|) <= k.
  static Stencil order(int k) {
    if (k < 1) throw std::invalid_argument("Stencil::order: k must be >= 1");
    std::vector<LatticeVector> moves;
    for (std::int64_t a = -k; a <= k; ++a)
      for (std::int64_t b = -k; b <= k; ++b)
        if ((a != 0 || b != 0) && std::gcd(std::llabs(a), std::llabs(b)) == 1) moves.push_back({a, b});
    return Stencil(std::move(moves));
  }

  const std::vector<LatticeVector>& moves() const { return moves_; }
  std::int64_t reach() const {
    std::int64_t r = 0;
    for (const auto& m : moves_) r = std::max<std::int64_t>({r, std::llabs(m[0]), std::llabs(m[1])});
    return r;
  }

 private:
  std::vector<LatticeVector> moves_;
};

inline Vec2 to_vec2(const LatticeVector& m) { return {static_cast<double>(m[0]), static_cast<double>(m[1])}; }

/// Directions of every nonzero lattice vector with |coordinates| <= reach.
/// Adding them to a grid makes the grid crystal exact along stencil moves and
/// along lattice targets in that box.
inline std::vector<Vector> lattice_directions(int reach) {
  if (reach < 1) throw std::invalid_argument("lattice_directions: reach must be at least 1");
  std::vector<Vector> out;
  for (int a = -reach; a <= reach; ++a)
    for (int b = -reach; b <= reach; ++b)
      if (std::gcd(a, b) == 1) out.push_back(make_vector({static_cast<double>(a), static_cast<double>(b)}));
  return out;
}

/// Optimal stencil combination for a target: v = sum c_m m with c >= 0.
struct OracleSolution {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<std::pair<LatticeVector, double>> basis;  // moves with their coefficients
  std::int64_t denominator = 1;                         // smallest scale making the coefficients integral
};

/// min sum c_m F(m) over c >= 0 with sum c_m m = v. With two equality
/// constraints the optimum sits at a basis of at most two moves, so every
/// single parallel move and every pair spanning a cone around v is tried.
inline OracleSolution oracle_solve(const Integrand& f, const LatticeVector& target, const Stencil& stencil) {
  if (target[0] == 0 && target[1] == 0) throw std::invalid_argument("oracle_distance: zero target");
  const auto& moves = stencil.moves();
  std::vector<double> cost;
  for (const auto& m : moves) cost.push_back(f(to_vec2(m)));
  const std::int64_t vx = target[0], vy = target[1];
  OracleSolution best;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& m = moves[i];
    if (m[0] * vy - m[1] * vx == 0 && m[0] * vx + m[1] * vy > 0) {
      // v = c m with c a positive integer since m is primitive
      const double c = static_cast<double>(m[0] != 0 ? vx / m[0] : vy / m[1]);
      if (c * cost[i] < best.cost) best = {c * cost[i], {{m, c}}, 1};
    }
  }
  for (std::size_t i = 0; i < moves.size(); ++i) {
    for (std::size_t j = i + 1; j < moves.size(); ++j) {
      const auto& a = moves[i];
      const auto& b = moves[j];
      const std::int64_t det = a[0] * b[1] - a[1] * b[0];
      if (det == 0) continue;
      const std::int64_t na = vx * b[1] - vy * b[0];
      const std::int64_t nb = a[0] * vy - a[1] * vx;
      if ((det > 0 && (na < 0 || nb < 0)) || (det < 0 && (na > 0 || nb > 0))) continue;
      const double ca = static_cast<double>(na) / static_cast<double>(det);
      const double cb = static_cast<double>(nb) / static_cast<double>(det);
      const double total = ca * cost[i] + cb * cost[j];
      if (total < best.cost - 1e-15 * std::max(1.0, total)) {
        const std::int64_t common = std::gcd(std::llabs(det), std::gcd(std::llabs(na), std::llabs(nb)));
        best = {total, {{a, ca}, {b, cb}}, std::llabs(det) / common};
      }
    }
  }
  if (!std::isfinite(best.cost)) throw std::domain_error("oracle_distance: target outside the positive span of the stencil");
  return best;
}

inline double oracle_distance(const Integrand& f, const LatticeVector& target, const Stencil& stencil) {
  return oracle_solve(f, target, stencil).cost;
}

/// Dijkstra from the origin to `target` on the box [-bound, bound]^2 of Z^2,
/// each stencil move costing F(move). A negative bound selects
/// 2 |target|_inf + reach.
inline double lattice_shortest_path(const Integrand& f, const LatticeVector& target, const Stencil& stencil,
                                    std::int64_t bound = -1) {
  if (bound < 0) bound = 2 * std::max<std::int64_t>(std::llabs(target[0]), std::llabs(target[1])) + stencil.reach();
  if (std::llabs(target[0]) > bound || std::llabs(target[1]) > bound)
    throw std::invalid_argument("lattice_shortest_path: target outside the box");
  const std::int64_t side = 2 * bound + 1;
  auto index = [&](std::int64_t x, std::int64_t y) { return static_cast<std::size_t>((y + bound) * side + (x + bound)); };
  std::vector<double> dist(static_cast<std::size_t>(side * side), std::numeric_limits<double>::infinity());
  std::vector<double> cost;
  for (const auto& m : stencil.moves()) cost.push_back(f(to_vec2(m)));

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[index(0, 0)] = 0.0;
  queue.push({0.0, index(0, 0)});
  const std::size_t goal = index(target[0], target[1]);
  while (!queue.empty()) {
    const auto [d, node] = queue.top();
    queue.pop();
    if (d > dist[node]) continue;
    if (node == goal) return d;
    const std::int64_t x = static_cast<std::int64_t>(node % static_cast<std::size_t>(side)) - bound;
    const std::int64_t y = static_cast<std::int64_t>(node / static_cast<std::size_t>(side)) - bound;
    for (std::size_t k = 0; k < stencil.moves().size(); ++k) {
      const std::int64_t nx = x + stencil.moves()[k][0];
      const std::int64_t ny = y + stencil.moves()[k][1];
      if (std::llabs(nx) > bound || std::llabs(ny) > bound) continue;
      const std::size_t next = index(nx, ny);
      const double nd = d + cost[k];
      if (nd < dist[next]) {
        dist[next] = nd;
        queue.push({nd, next});
      }
    }
  }
  throw std::domain_error("lattice_shortest_path: target unreachable inside the box");
}

struct OracleCrossCheck {
  double linear_program;
  double lattice;   // Dijkstra cost to scale * target, divided by scale
  std::int64_t scale;
  double relative_gap;
};

/// Runs both solvers. Dijkstra walks to denominator * v, where the optimal
/// basis has integral coefficients, so the two agree when both are right.
inline OracleCrossCheck oracle_cross_check(const Integrand& f, const LatticeVector& target, const Stencil& stencil) {
  const OracleSolution lp = oracle_solve(f, target, stencil);
  const std::int64_t s = lp.denominator;
  const double lattice = lattice_shortest_path(f, {s * target[0], s * target[1]}, stencil) / static_cast<double>(s);
  return {lp.cost, lattice, s, std::abs(lattice - lp.cost) / std::max(1.0, lp.cost)};
}

struct ConvergencePoint {
  int order;
  double gap;  // oracle distance minus ||v||_F
};

inline std::vector<ConvergencePoint> oracle_convergence(const Context& ctx, const LatticeVector& target,
                                                        const std::vector<int>& orders) {
  if (!std::is_sorted(orders.begin(), orders.end())) throw std::invalid_argument("oracle_convergence: orders must increase");
  const double norm = ctx.envelope(to_vec2(target));
  std::vector<ConvergencePoint> out;
  for (int k : orders) out.push_back({k, oracle_distance(ctx.integrand(), target, Stencil::order(k)) - norm});
  return out;
}

}  // namespace wulff

#endif  // WULFF_LATTICE_ORACLE_HPP
