#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "support.hpp"

using namespace wulff;
using namespace wulff::testing;

namespace {

const double kSqrt2 = std::sqrt(2.0);

Vector diag() { return make_vector({1.0 / kSqrt2, 1.0 / kSqrt2}); }

// D(F)(x) = sup_v inf_w F(w) <v,x> / <v,w>, evaluated by three nested loops
// over the grid with the inner constraint <v,w> > 0 and the outer one
// <v,x> > 0. Written independently of the library transforms.
std::vector<double> sup_inf_envelope(const Integrand& f, const SphereGrid& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sup = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double vx = grid[k].dot(grid[i]);
      if (vx <= 0.0) continue;
      double inf = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double vw = grid[k].dot(grid[j]);
        if (vw > 0.0) inf = std::min(inf, f(grid[j]) * vx / vw);
      }
      sup = std::max(sup, inf);
    }
    out[i] = sup;
  }
  return out;
}

}  // namespace

TEST(Integrand, EvaluatesExamples) {
  EXPECT_DOUBLE_EQ(l1()(make_vector({1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(euclidean()(unit_at(0.7)), 1.0);
  EXPECT_DOUBLE_EQ(dip()(make_vector({1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(dip()(make_vector({3, 0})), 1.5);
  EXPECT_DOUBLE_EQ(dip()(unit_at(1e-6)), 1.0);
  EXPECT_EQ(l1()(make_vector({0, 0})), 0.0);
}

TEST(Integrand, PNormFamily) {
  EXPECT_NEAR(Integrand::pnorm(2, 2.0)(make_vector({3, 4})), 5.0, 1e-15);
  EXPECT_NEAR(p3()(make_vector({1, 1})), std::cbrt(2.0), 1e-15);
  const auto inf = Integrand::pnorm(2, std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(inf(make_vector({-3, 2})), 3.0);
  EXPECT_NEAR(Integrand::pnorm(3, 1.0)(make_vector({1, -2, 3})), 6.0, 1e-15);
  // large coordinates must not overflow
  EXPECT_NEAR(Integrand::pnorm(2, 8.0)(make_vector({1e300, 0})), 1e300, 1e285);
}

TEST(Integrand, CrystallineIsSupportFunctionOfWeightedPoints) {
  const auto f = Integrand::crystalline({{make_vector({1, 0}), 1.0},
                                         {make_vector({0, 2}), 1.0},
                                         {make_vector({-1, 0}), 1.0},
                                         {make_vector({0, -1}), 1.0}});
  EXPECT_DOUBLE_EQ(f(make_vector({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(f(make_vector({0.5, -2})), 2.0);
  EXPECT_TRUE(f.is_convex());
}

TEST(Integrand, TableInterpolatesInAngle) {
  const auto f = Integrand::table({{0.0, 1.0}, {std::numbers::pi / 2, 2.0}, {std::numbers::pi, 1.0}, {3 * std::numbers::pi / 2, 2.0}});
  EXPECT_NEAR(f(unit_at(std::numbers::pi / 4)), 1.5, 1e-12);
  EXPECT_NEAR(f(unit_at(7 * std::numbers::pi / 4)), 1.5, 1e-12);  // wraps around
  EXPECT_NEAR(f(make_vector({0, 2})), 4.0, 1e-12);
  EXPECT_FALSE(f.is_convex());
}

TEST(Integrand, RejectsMalformedSpecs) {
  EXPECT_THROW(Integrand::pnorm(2, 0.5), std::invalid_argument);
  EXPECT_THROW(Integrand::pnorm(1, 2.0), std::invalid_argument);
  EXPECT_THROW(Integrand::constant(2, 0.0), std::invalid_argument);
  EXPECT_THROW(Integrand::constant(2, -1.0), std::invalid_argument);
  EXPECT_THROW(Integrand::table({{0.0, 1.0}, {1.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(Integrand::table({{0.0, 1.0}, {kTwoPi, 2.0}}), std::invalid_argument);
  EXPECT_THROW(Integrand::crystalline({{make_vector({1, 0}), 1.0}, {make_vector({0, 1}), 1.0}}), std::invalid_argument);
  EXPECT_THROW(Integrand::crystalline({{make_vector({1, 0}), -1.0}}), std::invalid_argument);
  EXPECT_THROW(Integrand::dip(euclidean(), {{make_vector({1, 0}), 0.0}}), std::invalid_argument);
  EXPECT_THROW(Integrand::dip(euclidean(), {{make_vector({1, 0, 0}), 0.5}}), std::invalid_argument);
}

TEST(Integrand, OneHomogeneity) {
  const auto grid = SphereGrid::circle(90);
  std::vector<Integrand> all{l1(), euclidean(), p3(), dip(),
                             inversion_transform(l1()), envelope_integrand(dip(), grid),
                             Integrand::table({{0.0, 1.0}, {2.0, 3.0}, {4.0, 0.5}})};
  for (const auto& f : all)
    for (double angle : {0.0, 0.3, 2.0, 4.5})
      for (double lambda : {0.5, 2.0, 10.0}) {
        const Vector x = 1.7 * as_vector(unit_at(angle));
        EXPECT_NEAR(f(Vector(lambda * x)), lambda * f(x), 1e-14 * lambda * f(x));
      }
  const auto w = wulff_transform(dip(), grid);
  const auto d = convex_envelope(dip(), grid);
  for (double lambda : {0.5, 2.0, 10.0}) {
    const Vector x = make_vector({0.3, -1.1});
    EXPECT_NEAR(w.at(lambda * x), lambda * w.at(x), 1e-14 * lambda);
    EXPECT_NEAR(d.at(lambda * x), lambda * d.at(x), 1e-14 * lambda);
  }
}

TEST(Integrand, ContactPointsAreSubgradientExtremes) {
  auto pts = l1().contact_points(make_vector({1, 1}));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_TRUE(pts[0].isApprox(make_vector({1, 1})));
  pts = l1().contact_points(make_vector({1, 0}));
  EXPECT_EQ(pts.size(), 2u);
  pts = euclidean().contact_points(make_vector({3, 4}));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR((pts[0] - make_vector({0.6, 0.8})).norm(), 0.0, 1e-15);
}

TEST(SphereGridTest, CircleIsSortedAndUnit) {
  const auto g = SphereGrid::circle();
  ASSERT_EQ(g.size(), 720u);
  EXPECT_NEAR(g.resolution(), kTwoPi / 720, 1e-14);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(g[i].norm(), 1.0, 1e-12);
    if (i > 0) {
      EXPECT_GT(g.angles()[i], g.angles()[i - 1]);
    }
  }
  EXPECT_EQ(g[180][0], 0.0);
  EXPECT_THROW(SphereGrid::circle(2), std::invalid_argument);
  EXPECT_THROW(SphereGrid::from_angles({0.0, 1.0, kTwoPi}), std::invalid_argument);
}

TEST(SphereGridTest, WithDirectionsMergesWithoutDuplicates) {
  const auto g = SphereGrid::circle(8);
  const std::vector<Vector> extra{make_vector({1, 0}), make_vector({2, 1})};
  const auto h = g.with_directions(extra);
  EXPECT_EQ(h.size(), 9u);
  EXPECT_EQ(h.nearest(make_vector({2, 1.01})), 1u);
}

TEST(SphereGridTest, FibonacciCoversTheSphere) {
  const auto g = SphereGrid::fibonacci(400);
  EXPECT_EQ(g.dimension(), 3);
  for (const auto& d : g.directions()) EXPECT_NEAR(d.norm(), 1.0, 1e-12);
  EXPECT_LT(g.resolution(), 0.2);
  // W <= F on the sphere as well
  const auto f = Integrand::pnorm(3, 1.0);
  const auto w = wulff_transform(f, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LE(w[i], f(g[i]) + 1e-12);
}

TEST(Transforms, WulffTransformExamples) {
  const auto grid = SphereGrid::circle();
  const auto w1 = wulff_transform(euclidean(), grid);
  for (std::size_t i = 0; i < grid.size(); i += 37) EXPECT_NEAR(w1[i], 1.0, 1e-15);
  const auto w = wulff_transform(l1(), grid);
  // brute force agrees with 1 / |v|_inf at grid directions aligned with the crystal corners
  EXPECT_NEAR(w.at(make_vector({1, 0})), 1.0, 1e-12);
  EXPECT_NEAR(w.at(diag()), kSqrt2, 1e-12);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double exact = 1.0 / grid[i].cwiseAbs().maxCoeff();
    EXPECT_LE(w[i], exact + 1e-12);
    EXPECT_GE(w[i], exact * std::cos(grid.resolution()) - 1e-12);
  }
}

TEST(Transforms, InversionExamples) {
  const auto two = Integrand::constant(2, 2.0);
  EXPECT_DOUBLE_EQ(inversion_transform(two)(unit_at(1.0)), 0.5);
  EXPECT_NEAR(inversion_transform(l1())(diag()), 1.0 / kSqrt2, 1e-15);
  const auto twice = inversion_transform(inversion_transform(dip()));
  const auto grid = SphereGrid::circle(120);
  for (const auto& v : grid.directions()) EXPECT_NEAR(twice(v), dip()(v), 1e-15);
}

TEST(Transforms, SupportTransformExamples) {
  const auto grid = SphereGrid::circle();
  const auto one = SampledFunction(grid, std::vector<double>(grid.size(), 1.0));
  const auto a = support_transform(one);
  for (std::size_t i = 0; i < grid.size(); i += 41) EXPECT_NEAR(a[i], 1.0, 1e-15);
  EXPECT_NEAR(support_transform(wulff_transform(l1(), grid)).at(diag()), kSqrt2, 1e-12);
  EXPECT_NEAR(support_transform(wulff_transform(euclidean(), grid)).at(make_vector({1, 0})), 1.0, 1e-15);
}

TEST(Transforms, ConvexEnvelopeExamples) {
  const auto grid = SphereGrid::circle();
  EXPECT_NEAR(convex_envelope(l1(), grid).at(make_vector({1, 1})), 2.0, 1e-12);
  EXPECT_NEAR(convex_envelope(euclidean(), grid).at(make_vector({3, 4})), 5.0, 5.0 * grid.resolution() * grid.resolution());
  EXPECT_NEAR(convex_envelope(dip(), grid).at(make_vector({1, 0})), 0.5, 1e-12);
}

TEST(Transforms, ContactExamples) {
  const auto grid = SphereGrid::circle();
  const auto dl1 = convex_envelope(l1(), grid);
  for (double a = 0.0; a < kTwoPi; a += 0.1) EXPECT_TRUE(contact_contains(l1(), dl1, as_vector(unit_at(a))));
  EXPECT_TRUE(contact_contains(dip(), convex_envelope(dip(), grid), make_vector({0, 0})));
  const Vector ten = as_vector(unit_at(10.0 * std::numbers::pi / 180.0));
  EXPECT_FALSE(contact_contains(dip(), convex_envelope(dip(), grid), ten));
  EXPECT_TRUE(contact_contains(dip(), convex_envelope(dip(), grid), make_vector({1, 0})));
  EXPECT_THROW(contact_contains(l1(), dl1, ten, 0.0), std::invalid_argument);
}

TEST(Transforms, HypographExamples) {
  const auto grid = SphereGrid::circle();
  const auto one = SampledFunction(grid, std::vector<double>(grid.size(), 1.0));
  EXPECT_TRUE(hypograph_contains(one, make_vector({0.5, 0})));
  EXPECT_FALSE(hypograph_contains(one, make_vector({1.5, 0})));
  EXPECT_TRUE(hypograph_contains(wulff_transform(l1(), grid), make_vector({1, 0.99})));
  EXPECT_FALSE(hypograph_contains(wulff_transform(l1(), grid), make_vector({1.01, 0.5})));
  EXPECT_TRUE(hypograph_contains(one, make_vector({0, 0})));
}

TEST(Transforms, OperatorInequalities) {
  const auto grid = SphereGrid::circle();
  for (const auto& [name, f] : four_integrands()) {
    const auto fv = sample(f, grid);
    const auto w = wulff_transform(f, grid);
    const auto a = support_transform(SampledFunction(grid, fv));
    const auto d = convex_envelope(f, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_LE(w[i], fv[i] + 1e-12) << name;
      EXPECT_GE(a[i], fv[i] - 1e-12) << name;
      EXPECT_LE(d[i], fv[i] + 1e-12) << name;
    }
  }
}

TEST(Transforms, EnvelopeFixesConvexIntegrands) {
  const auto grid = SphereGrid::circle();
  for (const auto& f : {l1(), euclidean(), p3(), Integrand::pnorm(2, 1.5)}) {
    const auto d = convex_envelope(f, grid);
    double worst = 0.0, maxf = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, std::abs(d[i] - f(grid[i])));
      maxf = std::max(maxf, f(grid[i]));
    }
    EXPECT_LE(worst, 2.0 * grid.resolution() * maxf);
  }
}

TEST(Transforms, SupInfDefinitionAgreesWithComposition) {
  const auto grid = SphereGrid::circle(240);
  for (const auto& [name, f] : four_integrands()) {
    const auto oracle = sup_inf_envelope(f, grid);
    const auto d = convex_envelope(f, grid);
    const double maxf = SampledFunction(grid, sample(f, grid)).max_value();
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(d[i], oracle[i], 2.0 * grid.resolution() * maxf) << name;
  }
}

TEST(Transforms, EnvelopeIsIdempotent) {
  const auto grid = SphereGrid::circle(360);
  for (const auto& [name, f] : four_integrands()) {
    const auto d = convex_envelope(f, grid);
    const auto dd = convex_envelope(envelope_integrand(f, grid), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(dd[i], d[i], 2.0 * grid.resolution() * d.max_value()) << name;
  }
}

TEST(Transforms, EnvelopeIsMidpointConvex) {
  const auto grid = SphereGrid::circle();
  const auto d = convex_envelope(dip(), grid);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    const Vector x = as_vector(random_point(rng)), y = as_vector(random_point(rng));
    EXPECT_LE(d.at(0.5 * (x + y)), 0.5 * (d.at(x) + d.at(y)) + grid.resolution() * d.max_value());
  }
}
