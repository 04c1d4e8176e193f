#include <gtest/gtest.h>

#include <cmath>

#include "geodiam/diameter.hpp"
#include "geodiam/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace geodiam;

TEST(Diameter, UnitSquare)
{
    const auto [r, rep] = compute_diameter(fixtures::unit_square(), {.threads = 1});
    EXPECT_DOUBLE_EQ(r.distance, std::sqrt(2.0));
    EXPECT_EQ(r.p_provenance.kind, CandidateKind::DomainVertex);
    EXPECT_EQ(r.p, (Point{0, 0}));
    EXPECT_EQ(r.q, (Point{1, 1}));
    EXPECT_EQ(rep.n, 4);
    EXPECT_EQ(rep.reflex, 0);
    EXPECT_EQ(rep.spm_arcs, 0u);
    EXPECT_EQ(rep.plausible_tuples, 0u);
    // Both diagonals tie.
    EXPECT_GE(rep.ties, 2u);
}

TEST(Diameter, ConvexEqualsEuclidean)
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const PolygonalDomain d = random_convex_domain(seed, 6 + 5 * static_cast<int>(seed));
        const auto [r, rep] = compute_diameter(d, {.threads = 1});
        EXPECT_NEAR(r.distance, oracle::max_euclidean_vertex_distance(d), 1e-12 * r.distance) << seed;
    }
}

TEST(Diameter, HoleFreeEqualsVertexPairs)
{
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const PolygonalDomain d = random_domain({seed, 8 + 2 * static_cast<int>(seed), 0, {0.08, 0.2}});
        const auto [r, rep] = compute_diameter(d, {.threads = 1});
        EXPECT_NEAR(r.distance, oracle::Geodesics(d).vertex_diameter(), 1e-9 * r.distance) << seed;
    }
}

TEST(Diameter, SlotFixtureGolden)
{
    const PolygonalDomain d = fixtures::hole_square();
    const auto [r, rep] = compute_diameter(d, {.threads = 1});
    // Opposite corners, around a corner of the slot; confirmed by the all-pairs oracle.
    EXPECT_NEAR(r.distance, 6.141164864840266, 1e-12);
    EXPECT_NEAR(oracle::Geodesics(d).vertex_diameter(), 6.141164864840266, 1e-12);
    EXPECT_NEAR(r.witness.length, r.distance, 1e-12);
    EXPECT_EQ(rep.holes, 1);
    EXPECT_GT(rep.boundary_feet, 0u);
}

TEST(Diameter, CorpusAgreesWithFrozenValues)
{
    const std::vector<std::pair<std::string, double>> golden = {
        {"comb.json", 9.47213595499958},          {"convex_hexagon.json", 6.003332407921454},
        {"domain_s11_n16_h2.json", 18.01115404685154}, {"domain_s13_n9_h3.json", 16.758940384955274},
        {"domain_s1_n8_h0.json", 13.622211772507727},  {"domain_s3_n10_h1.json", 17.948673873419743},
        {"domain_s5_n20_h0.json", 18.444531025975465}, {"domain_s7_n12_h2.json", 17.6339357192537},
        {"l_shape.json", 5.39834563766817},          {"two_triangles.json", 11.797250048727857},
    };
    for (const auto& [name, value] : golden) {
        const PolygonalDomain d = fixtures::load(name);
        const auto [r, rep] = compute_diameter(d, {.threads = 1});
        EXPECT_NEAR(r.distance, value, 1e-9 * d.scale()) << name;
        EXPECT_NEAR(oracle::Geodesics(d).distance(r.p, r.q), r.distance, 1e-9 * d.scale()) << name;
    }
}

TEST(Diameter, NonVertexWinner)
{
    const PolygonalDomain d = fixtures::load("domain_s235_n6_h2.json");
    const auto [r, rep] = compute_diameter(d, {.threads = 1});
    const DiameterResult vo = diameter_vertex_only(d, {.threads = 1});
    EXPECT_NEAR(r.distance, 18.726860906322454, 1e-9 * d.scale());
    EXPECT_NE(r.p_provenance.kind, CandidateKind::DomainVertex);
    EXPECT_GT(r.distance - vo.distance, 0.2);
    EXPECT_NEAR(oracle::Geodesics(d).distance(r.p, r.q), r.distance, 1e-9 * d.scale());
}

TEST(Diameter, AtLeastVertexOnlyAndSampling)
{
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        const PolygonalDomain d = random_domain({seed, 10, 2, {0.1, 0.3}});
        const VisibilityGraph g = build_visibility_graph(d);
        const auto [r, rep] = compute_diameter(g, {.threads = 1});
        EXPECT_GE(r.distance, diameter_vertex_only(g, {.threads = 1}).distance - 1e-12);
        EXPECT_GE(r.distance, sample_diameter(g, d.scale() / 40).distance - 1e-9 * d.scale()) << seed;
    }
}

TEST(Diameter, PruningKeepsTheAnswer)
{
    for (const std::string& name : {"domain_s7_n12_h2.json", "domain_s235_n6_h2.json", "comb.json"}) {
        const PolygonalDomain d = fixtures::load(name);
        const auto [a, ra] = compute_diameter(d, {.prune = false, .threads = 1});
        const auto [b, rb] = compute_diameter(d, {.prune = true, .threads = 1});
        EXPECT_EQ(a.distance, b.distance) << name;
        EXPECT_EQ(a.p, b.p) << name;
        EXPECT_EQ(a.q, b.q) << name;
        EXPECT_TRUE(rb.prune);
        EXPECT_EQ(ra.pruned, 0u);
    }
}

TEST(Diameter, ThreadCountDoesNotChangeTheResult)
{
    const PolygonalDomain d = fixtures::load("domain_s13_n9_h3.json");
    const auto [a, ra] = compute_diameter(d, {.threads = 1});
    const auto [b, rb] = compute_diameter(d, {.threads = 4});
    EXPECT_EQ(a.distance, b.distance);
    EXPECT_EQ(a.p, b.p);
    EXPECT_EQ(a.q, b.q);
    EXPECT_EQ(ra.evaluated, rb.evaluated);
    ASSERT_EQ(a.runner_ups.size(), b.runner_ups.size());
    for (std::size_t i = 0; i < a.runner_ups.size(); ++i) EXPECT_EQ(a.runner_ups[i].candidate.location, b.runner_ups[i].candidate.location);
}

TEST(Diameter, RunnerUpsAreSortedAndBounded)
{
    const PolygonalDomain d = fixtures::load("domain_s11_n16_h2.json");
    const auto [r, rep] = compute_diameter(d, {.threads = 1, .top_k = 3});
    ASSERT_FALSE(r.runner_ups.empty());
    for (std::size_t i = 0; i + 1 < r.runner_ups.size(); ++i) EXPECT_GE(r.runner_ups[i].distance, r.runner_ups[i + 1].distance);
    for (const RankedCandidate& c : r.runner_ups) EXPECT_LE(c.distance, r.distance + d.tol().tie());
    EXPECT_LE(r.runner_ups.size(), std::max<std::size_t>(3, rep.ties));
}

TEST(Reduce, FirstInClassOrderWinsTies)
{
    const VisibilityGraph g = build_visibility_graph(fixtures::unit_square());
    std::vector<RankedCandidate> ranked(3);
    ranked[0] = {{{0, 0}, CandidateKind::DomainVertex, 0}, {1, 1}, std::sqrt(2.0)};
    ranked[1] = {{{1, 0}, CandidateKind::DomainVertex, 1}, {0, 1}, std::sqrt(2.0)};
    ranked[2] = {{{0.5, 0}, CandidateKind::BoundaryFoot, 0}, {0, 1}, std::sqrt(1.25)};
    std::size_t ties = 0;
    const DiameterResult r = detail::reduce(g, ranked, 5, ties);
    EXPECT_EQ(r.p, (Point{0, 0}));
    EXPECT_EQ(ties, 2u);
    ASSERT_EQ(r.runner_ups.size(), 2u);
    EXPECT_EQ(r.runner_ups[0].candidate.location, (Point{1, 0}));
}
