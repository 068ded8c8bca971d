#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace wulff;
using namespace wulff::testing;

namespace {

Path staircase() { return Path{{0, 0}, {0.3, 0}, {0.3, 0.7}, {1, 0.7}, {1, 1}}; }

double deg(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

TEST(PathTest, RegularityAndAccessors) {
  const Path p = staircase();
  EXPECT_EQ(p.dimension(), 2);
  EXPECT_EQ(p.segment_count(), 4u);
  EXPECT_TRUE(p.displacement().isApprox(make_vector({1, 1})));
  EXPECT_THROW((Path{{0, 0}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW((Path{{0, 0}, {1, 0}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(Path(std::vector<Vector>{make_vector({0, 0})}), std::invalid_argument);
  EXPECT_THROW(Path(std::vector<Vector>{make_vector({0, 0}), make_vector({1, 0, 0})}), std::invalid_argument);
  EXPECT_EQ(Path::segment(make_vector({1, 2, 3})).dimension(), 3);
}

TEST(PathLength, Examples) {
  EXPECT_NEAR(path_length(l1(), staircase()), 2.0, 1e-15);
  EXPECT_NEAR(path_length(p3(), Path::segment(make_vector({1, 1}))), p3()(make_vector({1, 1})), 1e-15);
  EXPECT_NEAR(path_length(euclidean(), Path{{0, 0}, {1, 0}, {1, 1}}), 2.0, 1e-15);
  EXPECT_THROW(path_length(Integrand::pnorm(3, 2.0), staircase()), std::invalid_argument);
}

TEST(PathLength, ReparametrizationInvariant) {
  // splitting a segment into collinear pieces does not change the length
  const Path coarse{{0, 0}, {2, 1}};
  const Path fine{{0, 0}, {0.2, 0.1}, {1.5, 0.75}, {2, 1}};
  for (const auto& [name, f] : four_integrands()) EXPECT_NEAR(path_length(f, coarse), path_length(f, fine), 1e-14) << name;
}

TEST(Concatenate, RightmostFirst) {
  const Path a = Path::segment(make_vector({1, 0}));
  const Path b = Path::segment(make_vector({0, 1}));
  const std::array<Path, 2> ops{a, b};
  const Path c = concatenate(ops);
  ASSERT_EQ(c.breakpoints().size(), 3u);
  EXPECT_TRUE(c.breakpoints()[1].isApprox(make_vector({0, 1})));
  EXPECT_TRUE(c.breakpoints()[2].isApprox(make_vector({1, 1})));
  const std::array<Path, 1> single{staircase()};
  EXPECT_EQ(concatenate(single).breakpoints(), staircase().breakpoints());
  for (const auto& [name, f] : four_integrands())
    EXPECT_NEAR(path_length(f, c), f(make_vector({1, 0})) + f(make_vector({0, 1})), 1e-15) << name;
  EXPECT_THROW(concatenate(std::span<const Path>{}), std::invalid_argument);
}

TEST(Distance, Examples) {
  Context l(l1());
  EXPECT_NEAR(geodesic_distance(l, {0, 0}, {1, 1}), 2.0, 1e-12);
  EXPECT_NEAR(geodesic_distance(l, {0, 0}, {1, 0}), 1.0, 1e-12);
  EXPECT_EQ(geodesic_distance(l, {2, 3}, {2, 3}), 0.0);
  Context d(dip());
  EXPECT_NEAR(geodesic_distance(d, {0, 0}, {1, 0}), 0.5, 1e-12);
  Context e(euclidean());
  EXPECT_NEAR(geodesic_distance(e, {0, 0}, {3, 4}), 5.0, 1e-12);
}

TEST(Verify, Examples) {
  Context l(l1());
  auto c = is_geodesic(l, staircase());
  EXPECT_TRUE(c.verdict);
  EXPECT_TRUE(c.tangency);
  ASSERT_TRUE(c.common_point.has_value());
  EXPECT_TRUE(c.common_point->isApprox(Vec2(1, 1)));

  c = is_geodesic(l, Path{{0, 0}, {0.5, -0.2}, {1, 1}});
  EXPECT_FALSE(c.verdict);
  EXPECT_FALSE(c.tangency);
  EXPECT_NEAR(c.achieved_length, 2.4, 1e-12);
  EXPECT_NEAR(c.target_norm, 2.0, 1e-12);

  Context e(euclidean());
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const Vec2 a = random_point(rng), b = random_point(rng), m = random_point(rng);
    if (std::abs(cross(b - a, m - a)) < 1e-2) continue;
    const auto cert = is_geodesic(e, Path{a, m, b});
    EXPECT_FALSE(cert.verdict);
    EXPECT_FALSE(cert.tangency);
  }
  EXPECT_THROW(is_geodesic(l, Path{{0, 0}, {1, 0}, {0, 0}}), std::invalid_argument);
}

TEST(Verify, CertificateReportsFailingSegment) {
  Context l(l1());
  const auto c = is_geodesic(l, Path{{0, 0}, {1, 0}, {1, 1}, {0.8, 1}, {1, 1}});
  EXPECT_FALSE(c.verdict);
  ASSERT_EQ(c.per_segment.size(), 4u);
  EXPECT_TRUE(c.per_segment[0].support_ok);
  EXPECT_FALSE(c.per_segment[2].support_ok);
}

TEST(Classify, Examples) {
  Context l(l1());
  EXPECT_EQ(classify(l, {0, 0}, {1, 0}), Multiplicity::UniqueUpToReparam);
  EXPECT_EQ(classify(l, {0, 0}, {1, 1}), Multiplicity::InfinitelyMany);
  Context e(euclidean());
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(classify(e, random_point(rng), random_point(rng)), Multiplicity::UniqueUpToReparam);
  EXPECT_THROW(classify(l, {1, 1}, {1, 1}), std::invalid_argument);
  EXPECT_STREQ(to_string(Multiplicity::InfinitelyMany), "InfinitelyMany");
}

TEST(Decompose, Examples) {
  Context l(l1());
  auto d = decompose_direction(l, {1, 1});
  ASSERT_EQ(d.terms.size(), 2u);
  EXPECT_NEAR(d.terms[0].weight, 0.5, 1e-9);
  EXPECT_TRUE(d.terms[0].direction.isApprox(Vec2(1, 0)));
  EXPECT_TRUE(d.terms[1].direction.isApprox(Vec2(0, 1)));

  d = decompose_direction(l, {1, 0});
  ASSERT_EQ(d.terms.size(), 1u);
  EXPECT_NEAR(d.terms[0].weight, 1.0, 1e-15);
  EXPECT_TRUE(d.terms[0].direction.isApprox(Vec2(1, 0)));

  d = decompose_direction(l, {2, 1});
  ASSERT_EQ(d.terms.size(), 2u);
  EXPECT_NEAR(d.terms[0].weight, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(d.terms[1].weight, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR((d.reconstructed() - Vec2(2.0 / 3.0, 1.0 / 3.0)).norm(), 0.0, 1e-9);
  EXPECT_THROW(decompose_direction(l, {0, 0}), std::invalid_argument);
}

TEST(Decompose, InvariantsOnRandomDirections) {
  std::mt19937_64 rng(4);
  for (const auto& [name, f] : four_integrands()) {
    Context ctx(f);
    for (int k = 0; k < 100; ++k) {
      const Vec2 v = random_point(rng, 3.0);
      const auto d = decompose_direction(ctx, v);
      double sum = 0.0;
      for (const auto& t : d.terms) {
        sum += t.weight;
        EXPECT_GT(t.weight, 0.0);
        EXPECT_LE(t.weight, 1.0);
        EXPECT_NEAR(ctx.envelope(t.direction), 1.0, 1e-9) << name;
        EXPECT_TRUE(is_orthogonal_direction(ctx, t.direction)) << name;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9) << name;
      EXPECT_NEAR((d.reconstructed() - v / ctx.envelope(v)).norm(), 0.0, 1e-9) << name;
    }
  }
}

TEST(Construct, Examples) {
  Context l(l1());
  auto g = construct_geodesic(l, {0, 0}, {1, 0});
  EXPECT_EQ(g.segment_count(), 1u);
  g = construct_geodesic(l, {0, 0}, {1, 1});
  ASSERT_EQ(g.breakpoints().size(), 3u);
  EXPECT_TRUE(g.breakpoints()[1].isApprox(make_vector({1, 0})));
  EXPECT_NEAR(path_length(l1(), g), 2.0, 1e-12);
  Context e(euclidean());
  g = construct_geodesic(e, {1, 2}, {4, 6});
  EXPECT_EQ(g.segment_count(), 1u);
  EXPECT_NEAR(path_length(euclidean(), g), 5.0, 1e-12);
  EXPECT_THROW(construct_geodesic(l, {1, 1}, {1, 1}), std::invalid_argument);
}

TEST(Construct, AlwaysCertified) {
  std::mt19937_64 rng(6);
  for (const auto& [name, f] : four_integrands()) {
    Context ctx(f);
    for (int k = 0; k < 100; ++k) {
      const Vec2 x = random_point(rng), y = random_point(rng);
      if ((y - x).norm() < 1e-3) continue;
      const auto c = is_geodesic(ctx, construct_geodesic(ctx, x, y));
      EXPECT_TRUE(c.verdict) << name;
      EXPECT_TRUE(c.tangency) << name;
    }
  }
}

TEST(Family, Examples) {
  Context l(l1());
  const Vec2 o(0, 0), y(1, 1);
  auto p = geodesic_family(l, o, y, 0.0);
  ASSERT_EQ(p.breakpoints().size(), 3u);
  EXPECT_TRUE(p.breakpoints()[1].isApprox(make_vector({0, 1})));
  p = geodesic_family(l, o, y, 0.5);
  ASSERT_EQ(p.breakpoints().size(), 4u);
  EXPECT_TRUE(p.breakpoints()[1].isApprox(make_vector({0.5, 0})));
  EXPECT_TRUE(p.breakpoints()[2].isApprox(make_vector({0.5, 1})));
  p = geodesic_family(l, o, y, 1.0);
  ASSERT_EQ(p.breakpoints().size(), 3u);
  EXPECT_TRUE(p.breakpoints()[1].isApprox(make_vector({1, 0})));
  for (double tau : {0.0, 0.5, 1.0}) EXPECT_NEAR(path_length(l1(), geodesic_family(l, o, y, tau)), 2.0, 1e-12);
  EXPECT_THROW(geodesic_family(l, o, {1, 0}, 0.5), std::domain_error);
  EXPECT_THROW(geodesic_family(l, o, y, 1.5), std::invalid_argument);
}

TEST(Family, LengthIndependentOfTau) {
  std::mt19937_64 rng(8);
  for (const auto& [name, f] : four_integrands()) {
    Context ctx(f);
    int families = 0;
    for (int k = 0; k < 200 && families < 20; ++k) {
      const Vec2 x = random_point(rng), y = random_point(rng);
      if ((y - x).norm() < 1e-3 || classify(ctx, x, y) == Multiplicity::UniqueUpToReparam) continue;
      ++families;
      const double dist = geodesic_distance(ctx, x, y);
      for (double tau : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0})
        EXPECT_NEAR(path_length(f, geodesic_family(ctx, x, y, tau)), dist, ctx.default_tol() * std::max(1.0, dist)) << name;
    }
    if (name != "Euclidean" && name != "p3") {
      EXPECT_GT(families, 0) << name;
    }
  }
}

TEST(Ball, Examples) {
  Context e(euclidean());
  const auto b = geodesic_ball(e, {0, 0}, 1.0);
  for (const auto& v : b.vertices()) EXPECT_NEAR(v.norm(), 1.0, e.resolution() * e.resolution());
  Context l(l1());
  const auto b2 = geodesic_ball(l, {0, 0}, 2.0);
  EXPECT_NEAR(b2.gauge({1, 1}), 1.0, 1e-12);
  EXPECT_EQ(b2.provenance(), Provenance::ball);
  const auto shifted = geodesic_ball(l, {3, -1}, 0.5);
  EXPECT_TRUE(shifted.contains({3.25, -0.75}));
  EXPECT_FALSE(shifted.contains({3.3, -0.75}));
  EXPECT_THROW(geodesic_ball(l, {0, 0}, 0.0), std::invalid_argument);
  for (const auto& [name, f] : four_integrands()) {
    Context ctx(f);
    EXPECT_LT(hausdorff_distance(polar(geodesic_ball(ctx, {0, 0}, 1.0)), ctx.crystal()), 5.0 * ctx.resolution()) << name;
  }
}

TEST(GeodesicProperties, JensenChain) {
  std::mt19937_64 rng(9);
  for (const auto& [name, f] : four_integrands()) {
    Context ctx(f);
    const double tol = ctx.default_tol();
    for (int k = 0; k < 10000; ++k) {
      const Path p = random_polyline(rng);
      const double lf = path_length(f, p);
      double ld = 0.0;
      for (std::size_t i = 0; i < p.segment_count(); ++i) ld += ctx.envelope(as_vec2(p.segment(i)));
      const double dist = ctx.envelope(as_vec2(p.displacement()));
      ASSERT_GE(lf, ld - tol * std::max(1.0, ld)) << name;
      ASSERT_GE(ld, dist - tol * std::max(1.0, dist)) << name;
    }
  }
}

TEST(GeodesicProperties, SegmentsOfConvexIntegrandsAreGeodesics) {
  std::mt19937_64 rng(10);
  for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
    Context ctx(Integrand::pnorm(2, p));
    for (int k = 0; k < 100; ++k) {
      const Vec2 x = random_point(rng, 5.0), y = random_point(rng, 5.0);
      const auto c = is_geodesic(ctx, Path{x, y});
      EXPECT_TRUE(c.verdict) << p;
      EXPECT_TRUE(c.tangency) << p;
    }
  }
}

TEST(GeodesicProperties, TriangleInequality) {
  std::mt19937_64 rng(12);
  for (const auto& [name, f] : four_integrands()) {
    Context ctx(f);
    for (int k = 0; k < 1000; ++k) {
      const Vec2 x = random_point(rng), y = random_point(rng), z = random_point(rng);
      const double lhs = geodesic_distance(ctx, x, z);
      EXPECT_LE(lhs, geodesic_distance(ctx, x, y) + geodesic_distance(ctx, y, z) + 1e-12 * std::max(1.0, lhs)) << name;
    }
  }
}

TEST(GeodesicProperties, ConcatenationInequality) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> count(1, 5);
  for (const auto& [name, f] : four_integrands()) {
    Context ctx(f);
    for (int k = 0; k < 500; ++k) {
      std::vector<Path> legs;
      Vec2 sum = Vec2::Zero();
      double envelope_length = 0.0;
      const int n = count(rng);
      for (int i = 0; i < n; ++i) {
        const Vec2 u = random_point(rng) + Vec2(1e-3, 0);
        legs.push_back(Path::segment(as_vector(u)));
        sum += u;
        envelope_length += ctx.envelope(u);
      }
      const Path joined = concatenate(legs);
      EXPECT_TRUE(as_vec2(joined.displacement()).isApprox(sum, 1e-12) || sum.norm() < 1e-12);
      EXPECT_LE(ctx.envelope(sum), envelope_length + 1e-12 * std::max(1.0, envelope_length)) << name;
    }
  }
}

TEST(GeodesicProperties, DipSegmentInsideTheGapIsNotAGeodesic) {
  Context ctx(dip());
  const Vec2 v = unit_at(deg(30.0));
  const auto seg = is_geodesic(ctx, Path{{0, 0}, v});
  EXPECT_FALSE(seg.verdict);
  EXPECT_FALSE(seg.tangency);
  EXPECT_NEAR(seg.target_norm, std::cos(deg(30.0)), 1e-4);
  const auto legs = construct_geodesic(ctx, {0, 0}, v);
  EXPECT_EQ(legs.segment_count(), 2u);
  EXPECT_TRUE(is_geodesic(ctx, legs).verdict);
  // directions on the circular arc of the crystal are unique geodesics
  EXPECT_EQ(classify(ctx, {0, 0}, unit_at(deg(120.0))), Multiplicity::UniqueUpToReparam);
  EXPECT_TRUE(is_geodesic(ctx, Path{{0, 0}, unit_at(deg(120.0))}).verdict);
}
