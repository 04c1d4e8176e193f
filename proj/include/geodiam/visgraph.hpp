#pragma once

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "geodiam/domain.hpp"

namespace geodiam {

/// Visibility graph over all domain vertices. Holds its domain by value.
struct VisibilityGraph {
    struct Edge {
        VertexId to;
        double length;
    };

    PolygonalDomain domain;
    std::vector<std::vector<Edge>> adjacency;

    int node_count() const { return static_cast<int>(adjacency.size()); }

    bool has_edge(VertexId u, VertexId v) const
    {
        for (const Edge& e : adjacency[static_cast<std::size_t>(u)])
            if (e.to == v) return true;
        return false;
    }
};

inline VisibilityGraph build_visibility_graph(const PolygonalDomain& d)
{
    VisibilityGraph g;
    g.domain = d;
    g.adjacency.resize(static_cast<std::size_t>(d.n()));
    for (VertexId u = 0; u < d.n(); ++u) {
        for (VertexId v = u + 1; v < d.n(); ++v) {
            if (!segment_visible(d, d.vertex(u), d.vertex(v))) continue;
            const double len = dist(d.vertex(u), d.vertex(v));
            g.adjacency[static_cast<std::size_t>(u)].push_back({v, len});
            g.adjacency[static_cast<std::size_t>(v)].push_back({u, len});
        }
    }
    return g;
}

inline constexpr VertexId kSource = -1;
inline constexpr VertexId kNoVertex = -2;

/// Geodesic distances from a point source to every domain vertex.
struct SourceDistances {
    Point source;
    VertexId source_vertex = kNoVertex;  // vertex coinciding with the source, if any
    std::vector<double> distance;
    std::vector<VertexId> predecessor;   // kSource when the vertex sees the source directly
    std::vector<bool> sees_source;

    double at(VertexId v) const { return distance[static_cast<std::size_t>(v)]; }
};

/// Vertex coinciding with p (exactly or within the merge tolerance), or kNoVertex.
inline VertexId vertex_at(const PolygonalDomain& d, Point p)
{
    for (VertexId v = 0; v < d.n(); ++v)
        if (dist(d.vertex(v), p) <= 1e-12 * d.scale()) return v;
    return kNoVertex;
}

/// Dijkstra over the visibility graph augmented with the source. Only the
/// source and reflex vertices are expanded: shortest paths bend nowhere else.
/// Ties prefer the smaller predecessor id (source first).
inline SourceDistances single_source_distances(const VisibilityGraph& g, Point s)
{
    const PolygonalDomain& d = g.domain;
    const std::size_t n = static_cast<std::size_t>(d.n());
    const double inf = std::numeric_limits<double>::infinity();
    const double tie = d.tol().tie();
    SourceDistances out;
    out.source = s;
    out.source_vertex = vertex_at(d, s);
    out.distance.assign(n, inf);
    out.predecessor.assign(n, kNoVertex);
    out.sees_source.assign(n, false);

    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (VertexId v = 0; v < d.n(); ++v) {
        const bool vis = v == out.source_vertex || segment_visible(d, s, d.vertex(v));
        if (!vis) continue;
        out.sees_source[static_cast<std::size_t>(v)] = true;
        out.distance[static_cast<std::size_t>(v)] = v == out.source_vertex ? 0.0 : dist(s, d.vertex(v));
        out.predecessor[static_cast<std::size_t>(v)] = kSource;
        heap.emplace(out.distance[static_cast<std::size_t>(v)], v);
    }
    std::vector<bool> done(n, false);
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        const std::size_t ui = static_cast<std::size_t>(u);
        if (done[ui] || du > out.distance[ui]) continue;
        done[ui] = true;
        if (!d.is_reflex(u) && u != out.source_vertex) continue;
        for (const auto& e : g.adjacency[ui]) {
            const std::size_t vi = static_cast<std::size_t>(e.to);
            if (done[vi]) continue;
            const double nd = du + e.length;
            if (nd < out.distance[vi] - tie) {
                out.distance[vi] = nd;
                out.predecessor[vi] = u;
                heap.emplace(nd, e.to);
            } else if (nd <= out.distance[vi] + tie && u < out.predecessor[vi] && out.predecessor[vi] != kSource) {
                out.predecessor[vi] = u;
                if (nd < out.distance[vi]) {
                    out.distance[vi] = nd;
                    heap.emplace(nd, e.to);
                }
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!std::isfinite(out.distance[v])) throw UnreachableVertex("vertex " + std::to_string(v) + " unreachable from source");
    return out;
}

inline SourceDistances single_source_distances(const PolygonalDomain& d, Point s)
{
    return single_source_distances(build_visibility_graph(d), s);
}

struct GeodesicPath {
    std::vector<Point> waypoints;
    std::vector<VertexId> bends;  // vertex ids of the interior waypoints
    double length = 0.0;
};

/// Geodesic distance to q given the vertex distances from a source, together with
/// the last bend (kSource for a direct segment).
inline std::pair<double, VertexId> distance_via(const VisibilityGraph& g, const SourceDistances& sd, Point q)
{
    const PolygonalDomain& d = g.domain;
    if (segment_visible(d, sd.source, q)) return {dist(sd.source, q), kSource};
    const double tie = d.tol().tie();
    double best = std::numeric_limits<double>::infinity();
    VertexId arg = kNoVertex;
    for (VertexId v = 0; v < d.n(); ++v) {
        if (!d.is_reflex(v) && v != sd.source_vertex) continue;
        const double lower = sd.at(v) + dist(d.vertex(v), q);
        if (lower > best + tie) continue;
        if (!segment_visible(d, d.vertex(v), q)) continue;
        // Ascending ids: on a tie the earlier (smaller) vertex is kept.
        if (lower < best - tie) {
            best = lower;
            arg = v;
        }
    }
    return {best, arg};
}

/// Shortest path from p to q inside the domain.
inline GeodesicPath geodesic_distance(const VisibilityGraph& g, Point p, Point q)
{
    GeodesicPath path;
    if (p == q) {
        path.waypoints = {p};
        return path;
    }
    const PolygonalDomain& d = g.domain;
    if (segment_visible(d, p, q)) {
        path.waypoints = {p, q};
        path.length = dist(p, q);
        return path;
    }
    const SourceDistances sd = single_source_distances(g, p);
    const auto [len, last] = distance_via(g, sd, q);
    if (last == kNoVertex) throw InvariantViolation("no visible bend vertex for geodesic query");
    std::vector<VertexId> chain;
    for (VertexId v = last; v != kSource; v = sd.predecessor[static_cast<std::size_t>(v)]) {
        if (v == sd.source_vertex) break;
        chain.push_back(v);
        if (chain.size() > static_cast<std::size_t>(d.n())) throw InvariantViolation("predecessor cycle");
    }
    std::reverse(chain.begin(), chain.end());
    path.waypoints.push_back(p);
    for (VertexId v : chain) {
        path.waypoints.push_back(d.vertex(v));
        path.bends.push_back(v);
    }
    path.waypoints.push_back(q);
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) path.length += dist(path.waypoints[i], path.waypoints[i + 1]);
    return path;
}

inline GeodesicPath geodesic_distance(const PolygonalDomain& d, Point p, Point q)
{
    return geodesic_distance(build_visibility_graph(d), p, q);
}

} // namespace geodiam
