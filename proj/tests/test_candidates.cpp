#include <gtest/gtest.h>

#include "geodiam/diameter.hpp"
#include "geodiam/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace geodiam;

namespace {

struct Built {
    PolygonalDomain d;
    VisibilityGraph g;
    std::vector<ShortestPathMap> maps;
    BisectorAdjacency b;

    explicit Built(PolygonalDomain dom)
        : d(std::move(dom)), g(build_visibility_graph(d)), maps(detail::vertex_maps(g, 1)), b(bisector_adjacency(d, maps))
    {
    }
};

} // namespace

TEST(Adjacency, SymmetricInFirstTwoIndices)
{
    const Built x(fixtures::load("domain_s11_n16_h2.json"));
    const int n = x.b.n();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            EXPECT_FALSE(x.b(i, i, k));
            for (int j = 0; j < n; ++j) EXPECT_EQ(x.b(i, j, k), x.b(j, i, k));
        }
    EXPECT_GT(x.b.count(), 0u);
}

TEST(Adjacency, ConvexDomainIsEmpty)
{
    const Built x(fixtures::load("convex_hexagon.json"));
    EXPECT_EQ(x.b.count(), 0u);
    EXPECT_TRUE(plausible_tuples(x.b).empty());
}

TEST(Adjacency, MatchesArcsOfEachMap)
{
    const Built x(fixtures::load("domain_s7_n12_h2.json"));
    for (int k = 0; k < x.d.n(); ++k) {
        std::size_t expect = 0;
        std::vector<std::pair<int, int>> seen;
        for (const BisectorArc& arc : x.maps[static_cast<std::size_t>(k)].arcs) {
            const int i = x.maps[static_cast<std::size_t>(k)].anchor_id(arc.a), j = x.maps[static_cast<std::size_t>(k)].anchor_id(arc.b);
            if (i < 0 || j < 0) continue;
            EXPECT_TRUE(x.b(i, j, k));
            seen.emplace_back(std::min(i, j), std::max(i, j));
        }
        std::sort(seen.begin(), seen.end());
        expect = 2 * static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
        EXPECT_EQ(x.b.pairs_in(k).size(), expect);
    }
}

TEST(PlausibleTuples, HandcraftedArray)
{
    BisectorAdjacency b(5);
    b.set(0, 1, 3);
    b.set(1, 2, 4);
    b.set(3, 4, 1);
    const auto got = plausible_tuples(b);
    EXPECT_EQ(got, oracle::brute_plausible_tuples(b));
    // (u1,u2,u3,v2,v3) = (0,1,2,3,4) and its mirror (2,1,0,4,3).
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[0], (PlausibleTuple{0, 1, 2, 3, 4}));
    EXPECT_EQ(got[1], (PlausibleTuple{2, 1, 0, 4, 3}));
}

TEST(PlausibleTuples, RandomArraysMatchBruteForce)
{
    Xorshift64Star rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.uniform_int(3, 12);
        BisectorAdjacency b(n);
        const int bits = rng.uniform_int(0, n * n);
        for (int s = 0; s < bits; ++s) b.set(rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1));
        ASSERT_EQ(plausible_tuples(b), oracle::brute_plausible_tuples(b)) << "trial " << trial;
    }
}

TEST(PlausibleTuples, CorpusMatchesBruteForce)
{
    for (const std::string& name : fixtures::corpus()) {
        const Built x(fixtures::load(name));
        EXPECT_EQ(plausible_tuples(x.b), oracle::brute_plausible_tuples(x.b)) << name;
    }
}

TEST(PlausibleNodes, BoundedAndContained)
{
    for (const std::string& name : fixtures::corpus()) {
        const Built x(fixtures::load(name));
        const auto tuples = plausible_tuples(x.b);
        const auto nodes = plausible_nodes(x.d, x.maps, tuples);
        EXPECT_LE(nodes.size(), 4 * tuples.size()) << name;
        for (const CandidatePoint& c : nodes) {
            EXPECT_EQ(c.kind, CandidateKind::PlausibleNode);
            EXPECT_TRUE(contains(x.d, c.location)) << name;
            EXPECT_TRUE(std::binary_search(tuples.begin(), tuples.end(), c.tuple)) << name;
        }
    }
}

TEST(PlausibleNodes, SubsetOfOverlay)
{
    for (const std::string& name : {"domain_s7_n12_h2.json", "domain_s13_n9_h3.json", "domain_s235_n6_h2.json", "hole_square.json"}) {
        const Built x(fixtures::load(name));
        const auto nodes = plausible_nodes(x.d, x.maps, plausible_tuples(x.b));
        const auto overlay = overlay_nodes(x.d, x.maps);
        EXPECT_GE(overlay.size(), nodes.size()) << name;
        for (const CandidatePoint& c : nodes) {
            bool hit = false;
            for (const CandidatePoint& o : overlay) hit = hit || dist(o.location, c.location) <= 1e-6 * x.d.scale();
            EXPECT_TRUE(hit) << name << " " << c.location;
        }
    }
}

TEST(Candidates, FeetAndTriplesComeFromMaps)
{
    const Built x(fixtures::hole_square());
    const auto feet = boundary_foot_candidates(x.maps);
    ASSERT_FALSE(feet.empty());
    for (const CandidatePoint& c : feet) {
        EXPECT_EQ(locate(x.d, c.location, x.d.tol().eval()), Location::Boundary);
        EXPECT_GE(c.vertex, 0);
        EXPECT_LT(c.vertex, x.d.n());
    }
    for (const CandidatePoint& c : triple_point_candidates(x.maps)) EXPECT_TRUE(contains(x.d, c.location));
    const auto verts = vertex_candidates(x.d);
    ASSERT_EQ(static_cast<int>(verts.size()), x.d.n());
    for (VertexId v = 0; v < x.d.n(); ++v) EXPECT_EQ(verts[static_cast<std::size_t>(v)].location, x.d.vertex(v));
}
