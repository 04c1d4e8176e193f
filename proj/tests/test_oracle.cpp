#include <gtest/gtest.h>

#include <cmath>

#include "geodiam/diameter.hpp"
#include "geodiam/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace geodiam;

TEST(RandomDomain, DeterministicAndValid)
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const DomainSpec spec{seed, 6 + static_cast<int>(seed % 20), static_cast<int>(seed % 3), {0.08, 0.2}};
        const PolygonalDomain a = random_domain(spec);
        const PolygonalDomain b = random_domain(spec);
        EXPECT_EQ(serialize_domain(a), serialize_domain(b));
        EXPECT_EQ(a.outer().size(), static_cast<std::size_t>(spec.n_outer));
        EXPECT_EQ(static_cast<int>(a.hole_count()), spec.n_holes);
        EXPECT_NO_THROW(parse_domain(serialize_domain(a)));
    }
    EXPECT_NE(serialize_domain(random_domain({1, 10, 1, {0.08, 0.2}})), serialize_domain(random_domain({2, 10, 1, {0.08, 0.2}})));
}

TEST(RandomDomain, HoleVerticesAreReflex)
{
    const PolygonalDomain d = random_domain({7, 12, 2, {0.08, 0.2}});
    ASSERT_EQ(d.hole_count(), 2u);
    for (VertexId v = static_cast<VertexId>(d.outer().size()); v < d.n(); ++v) EXPECT_TRUE(d.is_reflex(v));
}

TEST(RandomDomain, ImpossibleHolesFail)
{
    EXPECT_THROW(random_domain({3, 8, 6, {0.6, 0.9}}), GenerationFailed);
}

TEST(RandomConvex, IsConvex)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PolygonalDomain d = random_convex_domain(seed, 30);
        EXPECT_EQ(d.n(), 30);
        EXPECT_TRUE(reflex_vertices(d).empty());
    }
}

TEST(Samples, SquareGridAndEdges)
{
    const SampleSet s = make_samples(fixtures::unit_square(), 0.25);
    // 4 edges x 4 points, plus the 3x3 strictly interior grid.
    EXPECT_EQ(s.points.size(), 16u + 9u);
    const PolygonalDomain d = fixtures::unit_square();
    for (Point p : s.points) EXPECT_TRUE(contains(d, p));
}

TEST(SampleDiameter, SquareFindsTheDiagonal)
{
    const SampleDiameter s = sample_diameter(fixtures::unit_square(), 0.1);
    EXPECT_NEAR(s.distance, std::sqrt(2.0), 1e-12);
}

TEST(SampleDiameter, RefinementNeverLowersTheBound)
{
    // Halving the spacing keeps every old sample, so the bound is monotone.
    const PolygonalDomain d = fixtures::load("domain_s7_n12_h2.json");
    const VisibilityGraph g = build_visibility_graph(d);
    const double coarse = sample_diameter(g, d.scale() / 10).distance;
    const double fine = sample_diameter(g, d.scale() / 20).distance;
    const double diam = compute_diameter(g, {.threads = 1}).first.distance;
    EXPECT_GE(fine, coarse - 1e-12);
    EXPECT_LE(fine, diam + 1e-9 * d.scale());
}

TEST(SampleDiameter, PairDistanceMatchesOracle)
{
    const PolygonalDomain d = fixtures::load("domain_s13_n9_h3.json");
    const SampleDiameter s = sample_diameter(d, d.scale() / 30);
    EXPECT_NEAR(oracle::Geodesics(d).distance(s.p, s.q), s.distance, 1e-9 * d.scale());
}

TEST(SampleDiameter, RejectsCoarseResolution)
{
    EXPECT_THROW(sample_diameter(fixtures::unit_square(), 5.0), ResolutionTooCoarse);
    EXPECT_THROW(sample_diameter(fixtures::unit_square(), 0.0), ResolutionTooCoarse);
    EXPECT_THROW(sample_diameter(fixtures::unit_square(), -1.0), ResolutionTooCoarse);
}

TEST(ProjectStep, StopsAtTheBoundary)
{
    const PolygonalDomain d = fixtures::unit_square();
    EXPECT_EQ(project_step(d, {0.5, 0.5}, {1, 0}, 0.2), (Point{0.7, 0.5}));
    const Point q = project_step(d, {0.5, 0.5}, {1, 0}, 2.0);
    EXPECT_NEAR(q.x, 1.0, 1e-12);
    EXPECT_NEAR(q.y, 0.5, 1e-12);
    EXPECT_EQ(project_step(d, {1, 0.5}, {1, 0}, 0.1), (Point{1, 0.5}));
}

TEST(LocalImprovement, StaysAtTheOptimum)
{
    const PolygonalDomain d = fixtures::unit_square();
    const LocalPair l = local_improvement(d, {0, 0}, {1, 1});
    EXPECT_DOUBLE_EQ(l.distance, std::sqrt(2.0));
}

TEST(LocalImprovement, ClimbsBackFromAPerturbation)
{
    const PolygonalDomain d = fixtures::hole_square();
    const LocalPair l = local_improvement(d, {0.01, 0.02}, {3.98, 3.99});
    EXPECT_NEAR(l.distance, 6.141164864840266, 1e-6);
}

TEST(LocalImprovement, NeverDecreasesAndNeverExceedsTheDiameter)
{
    for (const std::string& name : {"domain_s7_n12_h2.json", "domain_s3_n10_h1.json", "comb.json"}) {
        const PolygonalDomain d = fixtures::load(name);
        const VisibilityGraph g = build_visibility_graph(d);
        const double diam = compute_diameter(g, {.threads = 1}).first.distance;
        const SampleDiameter s = sample_diameter(g, d.scale() / 25);
        const LocalPair l = local_improvement(g, s.p, s.q);
        EXPECT_GE(l.distance, s.distance - 1e-12) << name;
        EXPECT_LE(l.distance, diam + 1e-6 * d.scale()) << name;
        EXPECT_TRUE(contains(d, l.p));
        EXPECT_TRUE(contains(d, l.q));
    }
}
