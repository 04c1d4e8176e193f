#include <gtest/gtest.h>

#include "geodiam/domain.hpp"
#include "geodiam/random.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace geodiam;

namespace {

std::string validation_code(const std::string& text)
{
    try {
        parse_domain(text);
    } catch (const ValidationError& e) {
        return e.code;
    }
    return "";
}

} // namespace

TEST(Domain, UnitSquareBasics)
{
    const PolygonalDomain d = fixtures::unit_square();
    EXPECT_EQ(d.n(), 4);
    EXPECT_EQ(d.hole_count(), 0u);
    EXPECT_FALSE(d.reoriented());
    EXPECT_DOUBLE_EQ(d.scale(), std::sqrt(2.0));
    for (VertexId v = 0; v < 4; ++v) EXPECT_FALSE(d.is_reflex(v));
}

TEST(Domain, ClockwiseOuterIsReoriented)
{
    const PolygonalDomain d({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, {});
    EXPECT_TRUE(d.reoriented());
    EXPECT_GT(ring_area2(d.outer()), 0.0);
    EXPECT_EQ(d.vertex(0), (Point{0, 0}));
}

TEST(Domain, HoleVerticesAreReflexAndClockwise)
{
    const PolygonalDomain d = fixtures::hole_square();
    EXPECT_EQ(d.n(), 8);
    EXPECT_LT(ring_area2(d.ring(1)), 0.0);
    for (VertexId v = 0; v < 4; ++v) EXPECT_FALSE(d.is_reflex(v));
    for (VertexId v = 4; v < 8; ++v) EXPECT_TRUE(d.is_reflex(v));
    EXPECT_EQ(reflex_vertices(d).size(), 4u);
}

TEST(Domain, LShapeHasOneReflexVertex)
{
    const PolygonalDomain d = fixtures::load("l_shape.json");
    const auto r = reflex_vertices(d);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(d.vertex(r[0]), (Point{1, 1}));
}

TEST(Domain, ValidationCodes)
{
    EXPECT_EQ(validation_code(R"({"outer":[[0,0],[1,0]]})"), "too_few_vertices");
    EXPECT_EQ(validation_code(R"({"outer":[[0,0],[1,0],[2,0]]})"), "zero_area");
    EXPECT_EQ(validation_code(R"({"outer":[[0,0],[4,0],[4,4],[2,-1],[0,4]]})"), "self_intersection");
    EXPECT_EQ(validation_code(R"({"outer":[[0,0],[1,0],[1,1],[0,1]],"holes":[[[2,2],[3,2],[3,3]]]})"), "hole_outside_outer");
    EXPECT_EQ(validation_code(R"({"outer":[[0,0],[9,0],[9,9],[0,9]],"holes":[[[1,1],[5,1],[5,5],[1,5]],[[4,4],[7,4],[7,7],[4,7]]]})"),
              "overlapping_holes");
    EXPECT_EQ(validation_code(R"({"outer":[[0,0],[1,0],[1,0],[0,1]]})"), "repeated_vertex");
    EXPECT_EQ(validation_code(R"({"outer":[[0,0],[4,0],[4,4],[0,4]]})"), "");
}

TEST(Domain, MalformedJsonIsParseError)
{
    EXPECT_THROW(parse_domain("{"), ParseError);
    EXPECT_THROW(parse_domain(R"({"holes":[]})"), ParseError);
    EXPECT_THROW(parse_domain(R"({"outer":[[0,0],[1],[0,1]]})"), ParseError);
}

TEST(Domain, CanonicalSerializationIsStable)
{
    // Clockwise input starting at an arbitrary vertex.
    const PolygonalDomain a({{1, 1}, {1, 0}, {0, 0}, {0, 1}}, {});
    const PolygonalDomain b({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {});
    EXPECT_EQ(serialize_domain(a), serialize_domain(b));
    EXPECT_EQ(serialize_domain(b), R"({"holes":[],"outer":[[0.0,0.0],[1.0,0.0],[1.0,1.0],[0.0,1.0]]})");
    const PolygonalDomain round = parse_domain(serialize_domain(fixtures::hole_square()));
    EXPECT_EQ(serialize_domain(round), serialize_domain(fixtures::hole_square()));
}

TEST(Domain, LocateAndContains)
{
    const PolygonalDomain d = fixtures::hole_square();
    EXPECT_EQ(locate(d, {1, 1}, 1e-9), Location::Inside);
    EXPECT_EQ(locate(d, {2, 2}, 1e-9), Location::Outside);
    EXPECT_EQ(locate(d, {1.9, 2}, 1e-9), Location::Boundary);
    EXPECT_EQ(locate(d, {5, 2}, 1e-9), Location::Outside);
    EXPECT_TRUE(contains(d, {0, 0}));
    EXPECT_FALSE(contains(d, {2.0, 1.0}));
}

TEST(Visibility, HoleBlocksAndGrazingIsAllowed)
{
    const PolygonalDomain d = fixtures::hole_square();
    EXPECT_FALSE(segment_visible(d, {0, 2}, {4, 2}));
    EXPECT_TRUE(segment_visible(d, {0, 3.5}, {4, 3.5}));  // runs along the hole's top edge
    EXPECT_TRUE(segment_visible(d, {0, 0}, {1.9, 3.5}));
    EXPECT_TRUE(segment_visible(d, {1.9, 0.5}, {2.1, 0.5}));
    EXPECT_FALSE(segment_visible(d, {1.9, 0.5}, {2.1, 3.5}));  // the hole's diagonal
    EXPECT_TRUE(segment_visible(d, {0, 0}, {4, 0}));
    EXPECT_FALSE(segment_visible(d, {-1, 0}, {1, 1}));
}

TEST(Visibility, NearlyParallelToAnEdge)
{
    // Both endpoints on the same long edge, but rounded off it by a few ulps.
    const PolygonalDomain d({{0, 0}, {7.010494024678171, -6.747694432934446}, {5.349909553324196, 3.038302741081039}, {-2, 3}}, {});
    const Segment e = d.edge(1);
    const Point p = e.at(0.3), q = e.at(0.45);
    EXPECT_TRUE(segment_visible(d, p, q));
    EXPECT_TRUE(segment_visible(d, q, p));
}

TEST(Visibility, ReflexCornerOfLShape)
{
    const PolygonalDomain d = fixtures::load("l_shape.json");
    EXPECT_TRUE(segment_visible(d, {4, 0}, {1, 1}));
    EXPECT_TRUE(segment_visible(d, {1, 1}, {0, 3}));
    EXPECT_FALSE(segment_visible(d, {4, 0.5}, {0.5, 3}));
    EXPECT_FALSE(segment_visible(d, {3, 0}, {0, 3}));
    EXPECT_TRUE(segment_visible(d, {2, 0}, {0, 2}));
}

TEST(Visibility, AgreesWithBruteForceOnCorpus)
{
    geodiam::Xorshift64Star rng(5);
    for (const std::string& name : fixtures::corpus()) {
        const PolygonalDomain d = fixtures::load(name);
        const oracle::Shape shape(d);
        const auto pts = oracle::random_points(d, 60, rng);
        std::vector<Point> all(pts);
        for (VertexId v = 0; v < d.n(); ++v) all.push_back(d.vertex(v));
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                ASSERT_EQ(segment_visible(d, all[i], all[j]), shape.visible(all[i], all[j])) << name << " " << all[i] << " " << all[j];
    }
}
