#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "geodiam/errors.hpp"
#include "geodiam/geometry.hpp"

namespace geodiam {

using VertexId = int;

struct BoundingBox {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void expand(Point p)
    {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    double diagonal() const { return dist(lo, hi); }
    Point center() const { return 0.5 * (lo + hi); }
};

inline double ring_area2(std::span<const Point> ring)
{
    double a = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) a += cross(ring[i], ring[(i + 1) % ring.size()]);
    return a;
}

/// Polygon with polygonal holes. Ring 0 is the outer boundary (CCW), the
/// remaining rings are holes (CW), so the domain lies to the left of every
/// directed edge. Vertex ids index the concatenation of the rings.
class PolygonalDomain {
public:
    PolygonalDomain() = default;

    /// Validates and canonicalises orientation. Throws ValidationError.
    PolygonalDomain(std::vector<Point> outer, std::vector<std::vector<Point>> holes)
    {
        rings_.push_back(std::move(outer));
        for (auto& h : holes) rings_.push_back(std::move(h));
        build();
    }

    int n() const { return static_cast<int>(vertices_.size()); }
    std::size_t ring_count() const { return rings_.size(); }
    std::span<const Point> ring(std::size_t r) const { return rings_[r]; }
    std::span<const Point> outer() const { return rings_[0]; }
    std::size_t hole_count() const { return rings_.size() - 1; }

    Point vertex(VertexId v) const { return vertices_[static_cast<std::size_t>(v)]; }
    std::span<const Point> vertices() const { return vertices_; }
    VertexId next(VertexId v) const { return next_[static_cast<std::size_t>(v)]; }
    VertexId prev(VertexId v) const { return prev_[static_cast<std::size_t>(v)]; }
    int ring_of(VertexId v) const { return ring_of_[static_cast<std::size_t>(v)]; }
    bool is_reflex(VertexId v) const { return reflex_[static_cast<std::size_t>(v)]; }

    /// Edge e runs from vertex e to next(e).
    Segment edge(int e) const { return {vertex(e), vertex(next(e))}; }
    int edge_count() const { return n(); }

    const BoundingBox& bbox() const { return bbox_; }
    const Tolerance& tol() const { return tol_; }
    double scale() const { return tol_.scale; }
    /// True when some input ring had the wrong orientation and was reversed.
    bool reoriented() const { return reoriented_; }

    double boundary_distance(Point p) const
    {
        double best = std::numeric_limits<double>::infinity();
        for (int e = 0; e < n(); ++e) {
            const Segment s = edge(e);
            best = std::min(best, dist_to_segment(s.a, s.b, p));
        }
        return best;
    }

    bool on_boundary(Point p, double eps) const { return boundary_distance(p) <= eps; }

private:
    void build();

    std::vector<std::vector<Point>> rings_;
    std::vector<Point> vertices_;
    std::vector<VertexId> next_, prev_;
    std::vector<int> ring_of_;
    std::vector<bool> reflex_;
    BoundingBox bbox_;
    Tolerance tol_;
    bool reoriented_ = false;
};

namespace detail {

// Crossing-number point-in-ring test (strict interior for points off the boundary).
inline bool ring_contains(std::span<const Point> ring, Point p)
{
    bool inside = false;
    const std::size_t m = ring.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Point a = ring[i], b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const int o = orient(b, a, p);
            // Edge crosses the horizontal through p to the right of p.
            if ((a.y > b.y) ? o > 0 : o < 0) inside = !inside;
        }
    }
    return inside;
}

inline void validation_fail(const std::string& code, const std::string& what) { throw ValidationError(code, what); }

} // namespace detail

inline void PolygonalDomain::build()
{
    if (rings_.empty()) detail::validation_fail("missing_outer", "domain has no outer ring");
    for (std::size_t r = 0; r < rings_.size(); ++r) {
        auto& ring = rings_[r];
        if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
        if (ring.size() < 3) detail::validation_fail("too_few_vertices", "ring " + std::to_string(r) + " has fewer than 3 vertices");
        for (Point p : ring)
            if (!is_finite(p)) detail::validation_fail("non_finite", "non-finite coordinate in ring " + std::to_string(r));
        for (std::size_t i = 0; i < ring.size(); ++i)
            if (ring[i] == ring[(i + 1) % ring.size()])
                detail::validation_fail("repeated_vertex", "consecutive coincident vertices in ring " + std::to_string(r));
        const double area = ring_area2(ring);
        if (area == 0.0) detail::validation_fail("zero_area", "ring " + std::to_string(r) + " has zero area");
        const bool want_ccw = r == 0;
        if ((area > 0) != want_ccw) {
            std::reverse(ring.begin() + 1, ring.end());
            reoriented_ = true;
        }
    }

    for (std::size_t r = 0; r < rings_.size(); ++r) {
        const int base = static_cast<int>(vertices_.size());
        const int m = static_cast<int>(rings_[r].size());
        for (int i = 0; i < m; ++i) {
            vertices_.push_back(rings_[r][static_cast<std::size_t>(i)]);
            next_.push_back(base + (i + 1) % m);
            prev_.push_back(base + (i + m - 1) % m);
            ring_of_.push_back(static_cast<int>(r));
        }
    }
    for (Point p : vertices_) bbox_.expand(p);
    tol_.scale = std::max(bbox_.diagonal(), 1e-300);

    // Coincident non-consecutive vertices.
    {
        std::vector<std::pair<Point, int>> sorted;
        for (int v = 0; v < n(); ++v) sorted.emplace_back(vertex(v), v);
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            if (sorted[i].first == sorted[i + 1].first)
                detail::validation_fail("coincident_vertices", "vertices " + std::to_string(sorted[i].second) + " and " +
                                                                   std::to_string(sorted[i + 1].second) + " coincide");
    }

    // Pairwise edge intersections: only consecutive edges of a ring may touch, at their shared vertex.
    for (int e = 0; e < n(); ++e) {
        const Segment se = edge(e);
        for (int f = e + 1; f < n(); ++f) {
            const Segment sf = edge(f);
            const bool adjacent = next(e) == f || next(f) == e;
            const SegmentHit hit = intersect_segments(se.a, se.b, sf.a, sf.b);
            if (hit.kind == SegmentHit::Kind::None) continue;
            if (adjacent && hit.kind == SegmentHit::Kind::Touch) continue;
            const bool same_ring = ring_of(e) == ring_of(f);
            if (same_ring) detail::validation_fail("self_intersection", "ring " + std::to_string(ring_of(e)) + " is not simple");
            if (ring_of(e) == 0 || ring_of(f) == 0)
                detail::validation_fail("hole_outside_outer", "hole " + std::to_string(std::max(ring_of(e), ring_of(f))) +
                                                                  " touches or crosses the outer ring");
            detail::validation_fail("overlapping_holes", "holes " + std::to_string(ring_of(e)) + " and " +
                                                             std::to_string(ring_of(f)) + " intersect");
        }
    }
    // Containment: holes inside the outer ring and not nested in one another.
    for (std::size_t r = 1; r < rings_.size(); ++r) {
        const Point p = rings_[r][0];
        if (!detail::ring_contains(rings_[0], p))
            detail::validation_fail("hole_outside_outer", "hole " + std::to_string(r) + " lies outside the outer ring");
        for (std::size_t s = 1; s < rings_.size(); ++s)
            if (s != r && detail::ring_contains(rings_[s], p))
                detail::validation_fail("overlapping_holes", "hole " + std::to_string(r) + " lies inside hole " + std::to_string(s));
    }

    reflex_.assign(vertices_.size(), false);
    for (int v = 0; v < n(); ++v) {
        const Point a = vertex(prev(v)), b = vertex(v), c = vertex(next(v));
        const double s = cross(b - a, c - b) / (dist(a, b) * dist(b, c));
        reflex_[static_cast<std::size_t>(v)] = s < -1e-10;
    }
}

enum class Location { Inside, Boundary, Outside };

/// Classifies p against the closed domain; points within `eps` of an edge are Boundary.
inline Location locate(const PolygonalDomain& d, Point p, double eps)
{
    if (d.on_boundary(p, eps)) return Location::Boundary;
    if (!detail::ring_contains(d.outer(), p)) return Location::Outside;
    for (std::size_t r = 1; r < d.ring_count(); ++r)
        if (detail::ring_contains(d.ring(r), p)) return Location::Outside;
    return Location::Inside;
}

/// Membership in the closed domain (boundary within tol.eval() counts as inside).
inline bool contains(const PolygonalDomain& d, Point p) { return locate(d, p, d.tol().eval()) != Location::Outside; }

/// Nearest point of the boundary to p.
inline Point closest_boundary_point(const PolygonalDomain& d, Point p)
{
    Point best = d.vertex(0);
    double bd = std::numeric_limits<double>::infinity();
    for (int e = 0; e < d.edge_count(); ++e) {
        const Segment s = d.edge(e);
        const Point c = closest_on_segment(s.a, s.b, p);
        if (const double r = dist(c, p); r < bd) {
            bd = r;
            best = c;
        }
    }
    return best;
}

/// Moves a point that lies just outside the domain (within `eps` of the
/// boundary) onto the boundary; other points are returned unchanged.
inline Point snap_into(const PolygonalDomain& d, Point p, double eps)
{
    if (locate(d, p, 0.0) != Location::Outside || d.boundary_distance(p) > eps) return p;
    return closest_boundary_point(d, p);
}

/// True iff the closed segment pq stays in the closed domain. Grazing along the
/// boundary and passing through vertices are allowed as long as no open piece
/// of the segment leaves the domain.
inline bool segment_visible(const PolygonalDomain& d, Point p, Point q)
{
    if (p == q) return contains(d, p);
    const double eps = d.tol().eval();
    const double len = dist(p, q);
    double events[64];
    std::vector<double> overflow;
    std::size_t ne = 0;
    auto push = [&](double t) {
        if (ne < 64) events[ne++] = t;
        else overflow.push_back(t);
    };
    const double minx = std::min(p.x, q.x) - eps, maxx = std::max(p.x, q.x) + eps;
    const double miny = std::min(p.y, q.y) - eps, maxy = std::max(p.y, q.y) + eps;
    for (int e = 0; e < d.edge_count(); ++e) {
        const Point a = d.vertex(e), b = d.vertex(d.next(e));
        if (std::max(a.x, b.x) < minx || std::min(a.x, b.x) > maxx || std::max(a.y, b.y) < miny || std::min(a.y, b.y) > maxy)
            continue;
        const SegmentHit hit = intersect_segments(p, q, a, b);
        switch (hit.kind) {
        case SegmentHit::Kind::Proper: {
            // A crossing counts only when no endpoint of either segment lies on the other
            // one; near-parallel grazing is left to the midpoint tests.
            if (dist_to_segment(a, b, p) <= eps || dist_to_segment(a, b, q) <= eps || dist_to_segment(p, q, a) <= eps ||
                dist_to_segment(p, q, b) <= eps)
                push(hit.t);
            else
                return false;
            break;
        }
        case SegmentHit::Kind::Touch: push(hit.t); break;
        case SegmentHit::Kind::Overlap:
            push(hit.t);
            push(hit.u);
            break;
        case SegmentHit::Kind::None:
            if (dist_to_segment(p, q, a) <= eps) push(std::clamp(project_param(p, q, a), 0.0, 1.0));
            break;
        }
    }
    std::vector<double> ts(events, events + ne);
    ts.insert(ts.end(), overflow.begin(), overflow.end());
    ts.push_back(0.0);
    ts.push_back(1.0);
    std::sort(ts.begin(), ts.end());
    const double min_gap = 0.5 * eps / len;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] <= min_gap) continue;
        const Point mid = p + (0.5 * (ts[i] + ts[i + 1])) * (q - p);
        if (!contains(d, mid)) return false;
    }
    return true;
}

/// Vertices whose interior angle, measured inside the domain, exceeds pi.
inline std::vector<VertexId> reflex_vertices(const PolygonalDomain& d)
{
    std::vector<VertexId> out;
    for (int v = 0; v < d.n(); ++v)
        if (d.is_reflex(v)) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// JSON domain format: { "outer": [[x,y],...], "holes": [[[x,y],...], ...] }

namespace detail {

inline std::vector<Point> parse_ring(const nlohmann::json& j, const char* what)
{
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of [x, y] pairs");
    std::vector<Point> ring;
    for (const auto& pt : j) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
            throw ParseError(std::string(what) + " contains a malformed point");
        ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return ring;
}

inline nlohmann::json ring_json(std::span<const Point> ring)
{
    // Start at the lexicographically smallest vertex; orientation is already canonical.
    const auto it = std::min_element(ring.begin(), ring.end());
    const std::size_t start = static_cast<std::size_t>(it - ring.begin());
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t k = 0; k < ring.size(); ++k) {
        const Point p = ring[(start + k) % ring.size()];
        arr.push_back({p.x, p.y});
    }
    return arr;
}

} // namespace detail

inline PolygonalDomain domain_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("outer")) throw ParseError("domain must be an object with an \"outer\" ring");
    std::vector<Point> outer = detail::parse_ring(j["outer"], "outer");
    std::vector<std::vector<Point>> holes;
    if (j.contains("holes")) {
        if (!j["holes"].is_array()) throw ParseError("\"holes\" must be an array of rings");
        for (const auto& h : j["holes"]) holes.push_back(detail::parse_ring(h, "hole"));
    }
    return PolygonalDomain(std::move(outer), std::move(holes));
}

/// Parses and validates a domain. Throws ParseError or ValidationError.
inline PolygonalDomain parse_domain(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    return domain_from_json(j);
}

inline nlohmann::json domain_to_json(const PolygonalDomain& d)
{
    nlohmann::json j;
    j["outer"] = detail::ring_json(d.outer());
    j["holes"] = nlohmann::json::array();
    for (std::size_t r = 1; r < d.ring_count(); ++r) j["holes"].push_back(detail::ring_json(d.ring(r)));
    return j;
}

/// Canonical serialisation: outer CCW, holes CW, rings start at their smallest vertex.
inline std::string serialize_domain(const PolygonalDomain& d) { return domain_to_json(d).dump(); }

} // namespace geodiam
