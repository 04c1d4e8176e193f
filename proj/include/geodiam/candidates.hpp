#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "geodiam/spm.hpp"

namespace geodiam {

/// n x n x n bit array: b(i, j, k) = 1 iff the map from vertex k has an arc
/// between anchors i and j. Symmetric in (i, j).
class BisectorAdjacency {
public:
    BisectorAdjacency() = default;
    explicit BisectorAdjacency(int n) : n_(n), bits_((static_cast<std::size_t>(n) * n * n + 63) / 64, 0) {}

    int n() const { return n_; }

    bool operator()(int i, int j, int k) const
    {
        const std::size_t b = bit(i, j, k);
        return (bits_[b >> 6] >> (b & 63)) & 1u;
    }

    void set(int i, int j, int k)
    {
        if (i == j) return;
        for (std::size_t b : {bit(i, j, k), bit(j, i, k)}) bits_[b >> 6] |= std::uint64_t{1} << (b & 63);
    }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (std::uint64_t w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    /// Ordered pairs (i, j) with b(i, j, k) = 1.
    std::vector<std::pair<int, int>> pairs_in(int k) const
    {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if ((*this)(i, j, k)) out.emplace_back(i, j);
        return out;
    }

    /// Vertices j with b(i, j, k) = 1.
    std::vector<int> neighbours(int i, int k) const
    {
        std::vector<int> out;
        for (int j = 0; j < n_; ++j)
            if ((*this)(i, j, k)) out.push_back(j);
        return out;
    }

private:
    std::size_t bit(int i, int j, int k) const
    {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }

    int n_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// maps[k] must be the shortest path map from vertex k.
inline BisectorAdjacency bisector_adjacency(const PolygonalDomain& d, std::span<const ShortestPathMap> maps)
{
    BisectorAdjacency b(d.n());
    for (int k = 0; k < static_cast<int>(maps.size()); ++k)
        for (const BisectorArc& arc : maps[static_cast<std::size_t>(k)].arcs) {
            const VertexId i = maps[static_cast<std::size_t>(k)].anchor_id(arc.a);
            const VertexId j = maps[static_cast<std::size_t>(k)].anchor_id(arc.b);
            if (i >= 0 && j >= 0) b.set(i, j, k);
        }
    return b;
}

struct PlausibleTuple {
    VertexId u1, u2, u3, v2, v3;

    auto key() const { return std::tie(u1, u2, u3, v2, v3); }
    friend bool operator==(const PlausibleTuple& a, const PlausibleTuple& b) { return a.key() == b.key(); }
    friend bool operator<(const PlausibleTuple& a, const PlausibleTuple& b) { return a.key() < b.key(); }
};

/// Every 5-tuple with b(u1,u2,v2) = b(u2,u3,v3) = b(v2,v3,u2) = 1 and u1, u2, u3
/// pairwise distinct, enumerated per u2 over the pairs tied in the map from u2.
/// Sorted lexicographically.
inline std::vector<PlausibleTuple> plausible_tuples(const BisectorAdjacency& b)
{
    const int n = b.n();
    // nb[k][i]: neighbours of i in the map from k.
    std::vector<std::vector<std::vector<int>>> nb(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        nb[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(n));
        for (const auto& [i, j] : b.pairs_in(k)) nb[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].push_back(j);
    }
    std::vector<PlausibleTuple> out;
    for (int u2 = 0; u2 < n; ++u2) {
        for (const auto& [v2, v3] : b.pairs_in(u2)) {
            const auto& left = nb[static_cast<std::size_t>(v2)][static_cast<std::size_t>(u2)];
            const auto& right = nb[static_cast<std::size_t>(v3)][static_cast<std::size_t>(u2)];
            for (int u1 : left)
                for (int u3 : right)
                    if (u1 != u3) out.push_back({u1, u2, u3, v2, v3});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

enum class CandidateKind { DomainVertex = 0, BoundaryFoot = 1, TriplePoint = 2, PlausibleNode = 3, OverlayNode = 4 };

inline const char* to_string(CandidateKind k)
{
    switch (k) {
    case CandidateKind::DomainVertex: return "DomainVertex";
    case CandidateKind::BoundaryFoot: return "BoundaryFoot";
    case CandidateKind::TriplePoint: return "TriplePoint";
    case CandidateKind::PlausibleNode: return "PlausibleNode";
    case CandidateKind::OverlayNode: return "OverlayNode";
    }
    return "?";
}

struct CandidatePoint {
    Point location;
    CandidateKind kind = CandidateKind::DomainVertex;
    VertexId vertex = kNoVertex;  // DomainVertex: the vertex; BoundaryFoot/TriplePoint: the map's source vertex
    PlausibleTuple tuple{};       // PlausibleNode only
    std::array<VertexId, 2> sources{kNoVertex, kNoVertex};  // OverlayNode: the two map sources
};

namespace detail {

inline BoundingBox arc_box(const BisectorArc& arc)
{
    BoundingBox b;
    constexpr int kSamples = 16;
    Point prev = arc.start;
    double pad = 0.0;
    b.expand(arc.start);
    b.expand(arc.end);
    for (int s = 1; s <= kSamples; ++s) {
        const Point p = arc.at(arc.t0 + (arc.t1 - arc.t0) * s / kSamples);
        b.expand(p);
        pad = std::max(pad, dist(p, prev));
        prev = p;
    }
    b.lo = b.lo - Point{pad, pad};
    b.hi = b.hi + Point{pad, pad};
    return b;
}

inline bool boxes_meet(const BoundingBox& a, const BoundingBox& b)
{
    return a.lo.x <= b.hi.x && b.lo.x <= a.hi.x && a.lo.y <= b.hi.y && b.lo.y <= a.hi.y;
}

/// Intersection points of two clipped arcs.
inline std::vector<Point> intersect_arcs(const BisectorArc& a, const BisectorArc& b, const Tolerance& tol)
{
    std::vector<Point> out;
    std::vector<Point> pts;
    try {
        pts = intersect_curves_in(a.curve, a.t0, a.t1, b.curve, tol);
    } catch (const OverlappingCurves&) {
        return out;
    }
    for (Point p : pts) {
        const double t = b.curve.param_of(p);
        const double slack = 1e-9 * (1.0 + std::abs(t));
        if (t >= std::min(b.t0, b.t1) - slack && t <= std::max(b.t0, b.t1) + slack) out.push_back(p);
    }
    return out;
}

/// Removes points within `eps` of an earlier point (grid hashing).
template <class T, class Loc>
void dedupe_by_location(std::vector<T>& items, double eps, Loc loc)
{
    std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
    auto cell = [&](double v) { return static_cast<std::int64_t>(std::floor(v / eps)); };
    auto key = [](std::int64_t cx, std::int64_t cy) { return cx * 73856093LL ^ cy * 19349663LL; };
    std::vector<T> out;
    for (T& item : items) {
        const Point p = loc(item);
        const std::int64_t cx = cell(p.x), cy = cell(p.y);
        bool dup = false;
        for (std::int64_t dx = -1; dx <= 1 && !dup; ++dx)
            for (std::int64_t dy = -1; dy <= 1 && !dup; ++dy) {
                const auto it = grid.find(key(cx + dx, cy + dy));
                if (it == grid.end()) continue;
                for (std::size_t idx : it->second)
                    if (dist(loc(out[idx]), p) <= eps) {
                        dup = true;
                        break;
                    }
            }
        if (dup) continue;
        grid[key(cx, cy)].push_back(out.size());
        out.push_back(std::move(item));
    }
    items.swap(out);
}

inline std::uint64_t pair_key(VertexId i, VertexId j)
{
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) | static_cast<std::uint32_t>(j);
}

} // namespace detail

/// Arcs of one map grouped by their (unordered) anchor-vertex pair.
class ArcIndex {
public:
    explicit ArcIndex(const ShortestPathMap& m) : map_(&m)
    {
        for (std::size_t a = 0; a < m.arcs.size(); ++a) {
            const BisectorArc& arc = m.arcs[a];
            by_pair_[detail::pair_key(m.anchor_id(arc.a), m.anchor_id(arc.b))].push_back(a);
            boxes_.push_back(detail::arc_box(arc));
        }
    }

    const std::vector<std::size_t>& arcs_between(VertexId i, VertexId j) const
    {
        static const std::vector<std::size_t> none;
        const auto it = by_pair_.find(detail::pair_key(i, j));
        return it == by_pair_.end() ? none : it->second;
    }
    const BisectorArc& arc(std::size_t a) const { return map_->arcs[a]; }
    const BoundingBox& box(std::size_t a) const { return boxes_[a]; }

private:
    const ShortestPathMap* map_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_pair_;
    std::vector<BoundingBox> boxes_;
};

/// Intersections of the (u1,u2) arcs of the map from v2 with the (u2,u3) arcs of
/// the map from v3, for every tuple; deduplicated within the merge tolerance.
/// Mirror tuples describe the same arc pairs, so only v2 < v3 is intersected.
inline std::vector<CandidatePoint> plausible_nodes(const PolygonalDomain& d, std::span<const ShortestPathMap> maps,
                                                   std::span<const PlausibleTuple> tuples)
{
    std::vector<ArcIndex> index;
    index.reserve(maps.size());
    for (const ShortestPathMap& m : maps) index.emplace_back(m);
    std::vector<CandidatePoint> out;
    for (const PlausibleTuple& t : tuples) {
        if (t.v2 > t.v3) continue;
        const ArcIndex& left = index[static_cast<std::size_t>(t.v2)];
        const ArcIndex& right = index[static_cast<std::size_t>(t.v3)];
        for (std::size_t a : left.arcs_between(t.u1, t.u2))
            for (std::size_t b : right.arcs_between(t.u2, t.u3)) {
                if (!detail::boxes_meet(left.box(a), right.box(b))) continue;
                for (Point p : detail::intersect_arcs(left.arc(a), right.arc(b), d.tol())) {
                    p = snap_into(d, p, d.tol().merge());
                    if (!contains(d, p)) continue;
                    CandidatePoint c;
                    c.location = p;
                    c.kind = CandidateKind::PlausibleNode;
                    c.tuple = t;
                    out.push_back(c);
                }
            }
    }
    detail::dedupe_by_location(out, d.tol().merge(), [](const CandidatePoint& c) { return c.location; });
    return out;
}

namespace detail {

inline std::vector<CandidatePoint> map_vertices_of_kind(std::span<const ShortestPathMap> maps, SpmVertexKind kind, CandidateKind as)
{
    std::vector<CandidatePoint> out;
    for (std::size_t k = 0; k < maps.size(); ++k)
        for (const SpmVertex& v : maps[k].vertices)
            if (v.kind == kind) {
                CandidatePoint c;
                c.location = v.location;
                c.kind = as;
                c.vertex = static_cast<VertexId>(k);
                out.push_back(c);
            }
    return out;
}

} // namespace detail

inline std::vector<CandidatePoint> triple_point_candidates(std::span<const ShortestPathMap> maps)
{
    return detail::map_vertices_of_kind(maps, SpmVertexKind::TriplePoint, CandidateKind::TriplePoint);
}

inline std::vector<CandidatePoint> boundary_foot_candidates(std::span<const ShortestPathMap> maps)
{
    return detail::map_vertices_of_kind(maps, SpmVertexKind::BoundaryFoot, CandidateKind::BoundaryFoot);
}

inline std::vector<CandidatePoint> vertex_candidates(const PolygonalDomain& d)
{
    std::vector<CandidatePoint> out;
    for (VertexId v = 0; v < d.n(); ++v) {
        CandidatePoint c;
        c.location = d.vertex(v);
        c.kind = CandidateKind::DomainVertex;
        c.vertex = v;
        out.push_back(c);
    }
    return out;
}

/// All crossings of arcs from maps of different sources. Quadratic in the total
/// arc count; meant for cross-checks on small domains.
inline std::vector<CandidatePoint> overlay_nodes(const PolygonalDomain& d, std::span<const ShortestPathMap> maps)
{
    struct Ref {
        std::size_t map, arc;
        BoundingBox box;
    };
    std::vector<Ref> refs;
    for (std::size_t k = 0; k < maps.size(); ++k)
        for (std::size_t a = 0; a < maps[k].arcs.size(); ++a) refs.push_back({k, a, detail::arc_box(maps[k].arcs[a])});
    std::vector<CandidatePoint> out;
    for (std::size_t x = 0; x < refs.size(); ++x)
        for (std::size_t y = x + 1; y < refs.size(); ++y) {
            if (refs[x].map == refs[y].map || !detail::boxes_meet(refs[x].box, refs[y].box)) continue;
            const BisectorArc& a = maps[refs[x].map].arcs[refs[x].arc];
            const BisectorArc& b = maps[refs[y].map].arcs[refs[y].arc];
            for (Point p : detail::intersect_arcs(a, b, d.tol())) {
                p = snap_into(d, p, d.tol().merge());
                if (!contains(d, p)) continue;
                CandidatePoint c;
                c.location = p;
                c.kind = CandidateKind::OverlayNode;
                c.sources = {static_cast<VertexId>(refs[x].map), static_cast<VertexId>(refs[y].map)};
                out.push_back(c);
            }
        }
    detail::dedupe_by_location(out, d.tol().merge(), [](const CandidatePoint& c) { return c.location; });
    return out;
}

} // namespace geodiam
