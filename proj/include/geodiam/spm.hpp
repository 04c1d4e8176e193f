#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "geodiam/bisector.hpp"
#include "geodiam/domain.hpp"
#include "geodiam/visgraph.hpp"

namespace geodiam {

/// Last vertex of a shortest path (or the source itself) with its geodesic weight.
struct Anchor {
    VertexId id = kSource;  // kSource unless the source coincides with a vertex
    Point site;
    double weight = 0.0;
};

/// Portion of a bisector curve along which its two anchors jointly realise the
/// geodesic distance. `a` and `b` index ShortestPathMap::anchors.
struct BisectorArc {
    BisectorCurve curve;
    int a = 0;
    int b = 0;
    double t0 = 0.0;
    double t1 = 0.0;
    Point start;
    Point end;

    Point at(double t) const { return curve.at(t); }
};

enum class SpmVertexKind { DomainVertex, BoundaryFoot, TriplePoint };

inline const char* to_string(SpmVertexKind k)
{
    switch (k) {
    case SpmVertexKind::DomainVertex: return "DomainVertex";
    case SpmVertexKind::BoundaryFoot: return "BoundaryFoot";
    case SpmVertexKind::TriplePoint: return "TriplePoint";
    }
    return "?";
}

struct SpmVertex {
    Point location;
    SpmVertexKind kind = SpmVertexKind::DomainVertex;
    std::vector<int> anchors;             // indices into ShortestPathMap::anchors, ascending
    VertexId domain_vertex = kNoVertex;   // for DomainVertex
};

struct ShortestPathMap {
    Point source;
    VertexId source_vertex = kNoVertex;
    std::vector<Anchor> anchors;  // anchors[0] is the source
    std::vector<BisectorArc> arcs;
    std::vector<SpmVertex> vertices;
    /// Arc endpoints that are not map vertices (visibility cut-offs without a tie).
    std::vector<Point> loose_ends;

    VertexId anchor_id(int a) const { return anchors[static_cast<std::size_t>(a)].id; }
};

namespace detail {

class SpmBuilder {
public:
    SpmBuilder(const VisibilityGraph& g, Point s) : g_(g), d_(g.domain), tol_(g.domain.tol())
    {
        const SourceDistances sd = single_source_distances(g, s);
        map_.source = s;
        map_.source_vertex = sd.source_vertex;
        map_.anchors.push_back({sd.source_vertex == kNoVertex ? kSource : sd.source_vertex, s, 0.0});
        for (VertexId v = 0; v < d_.n(); ++v)
            if (d_.is_reflex(v) && v != sd.source_vertex) map_.anchors.push_back({v, d_.vertex(v), sd.at(v)});
    }

    ShortestPathMap build()
    {
        const int m = static_cast<int>(map_.anchors.size());
        curves_.assign(static_cast<std::size_t>(m * m), BisectorCurve{});
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                BisectorCurve c = make_bisector(site(i), site(j), tol_);
                curves_[idx(i, j)] = c;
                std::swap(c.site_a, c.site_b);
                curves_[idx(j, i)] = c;
            }
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) trace_pair(i, j);
        classify_vertices();
        return std::move(map_);
    }

private:
    struct Break {
        double t;
        Point p;
    };

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * map_.anchors.size() + static_cast<std::size_t>(j); }
    WeightedSite site(int i) const { return {map_.anchors[static_cast<std::size_t>(i)].site, map_.anchors[static_cast<std::size_t>(i)].weight}; }
    double value(int k, Point x) const
    {
        const Anchor& a = map_.anchors[static_cast<std::size_t>(k)];
        return a.weight + dist(a.site, x);
    }
    bool sees(int k, Point x) const { return segment_visible(d_, map_.anchors[static_cast<std::size_t>(k)].site, x); }

    // True when anchors i and j jointly minimise the weighted distance at x.
    bool on_envelope(int i, int j, Point x) const
    {
        const double g = std::min(value(i, x), value(j, x));
        const double eps = tol_.tie();
        const int m = static_cast<int>(map_.anchors.size());
        thread_local std::vector<std::pair<double, int>> rivals;
        rivals.clear();
        for (int k = 0; k < m; ++k) {
            if (k == i || k == j) continue;
            const double vk = value(k, x);
            if (vk < g - eps) rivals.emplace_back(vk, k);
        }
        if (!contains(d_, x) || !sees(i, x) || !sees(j, x)) return false;
        std::sort(rivals.begin(), rivals.end());
        for (const auto& [vk, k] : rivals)
            if (sees(k, x)) return false;
        return true;
    }

    void trace_pair(int i, int j)
    {
        const BisectorCurve& c = curves_[idx(i, j)];
        if (c.kind == CurveKind::Empty) return;
        const BoundingBox& box = d_.bbox();
        auto [lo, hi] = c.window(box.center(), 0.5 * box.diagonal() * (1.0 + 1e-6));
        if (!(lo < hi)) return;

        std::vector<Break> breaks;
        auto add = [&](Point p) {
            const double t = c.param_of(p);
            if (t >= lo - 1e-12 && t <= hi + 1e-12) breaks.push_back({t, p});
        };
        if (c.kind == CurveKind::Ray) breaks.push_back({0.0, c.center});
        for (int e = 0; e < d_.edge_count(); ++e)
            for (Point p : intersect_curve_segment(c, d_.edge(e), tol_)) add(p);
        if (breaks.empty()) return;
        const int m = static_cast<int>(map_.anchors.size());
        for (int k = 0; k < m; ++k) {
            if (k == i || k == j) continue;
            const BisectorCurve& other = curves_[idx(i, k)];
            if (other.kind == CurveKind::Empty) continue;
            try {
                for (Point p : intersect_curves_in(c, lo, hi, other, tol_)) add(p);
            } catch (const OverlappingCurves&) {
                // Collinear rays: the overlap starts at the other ray's origin.
                if (other.kind == CurveKind::Ray) add(other.center);
            }
        }
        std::sort(breaks.begin(), breaks.end(), [](const Break& a, const Break& b) { return a.t < b.t; });
        std::vector<Break> uniq;
        for (const Break& b : breaks)
            if (uniq.empty() || dist(uniq.back().p, b.p) > tol_.merge()) uniq.push_back(b);
        if (uniq.size() < 2) return;

        std::optional<Break> open;
        Break last{};
        auto close = [&]() {
            if (open && dist(open->p, last.p) > tol_.merge()) {
                BisectorArc arc;
                arc.curve = c;
                arc.a = i;
                arc.b = j;
                arc.t0 = open->t;
                arc.t1 = last.t;
                arc.start = open->p;
                arc.end = last.p;
                map_.arcs.push_back(arc);
            }
            open.reset();
        };
        for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
            const Point mid = c.at(0.5 * (uniq[k].t + uniq[k + 1].t));
            if (on_envelope(i, j, mid)) {
                if (!open) open = uniq[k];
                last = uniq[k + 1];
            } else {
                close();
            }
        }
        close();
    }

    // Visible anchors whose weighted distance at x is within the tie tolerance of the minimum.
    std::vector<int> tied_anchors(Point x) const
    {
        const int m = static_cast<int>(map_.anchors.size());
        std::vector<std::pair<double, int>> vals;
        for (int k = 0; k < m; ++k) vals.emplace_back(value(k, x), k);
        std::sort(vals.begin(), vals.end());
        std::vector<int> out;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [v, k] : vals) {
            if (v > best + 4.0 * tol_.tie()) break;
            if (!sees(k, x)) continue;
            if (!std::isfinite(best)) best = v;
            out.push_back(k);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void classify_vertices()
    {
        std::vector<SpmVertex> verts;
        for (VertexId v = 0; v < d_.n(); ++v) {
            SpmVertex sv;
            sv.location = d_.vertex(v);
            sv.kind = SpmVertexKind::DomainVertex;
            sv.domain_vertex = v;
            sv.anchors = tied_anchors(sv.location);
            verts.push_back(std::move(sv));
        }
        auto merge_into = [&](std::vector<SpmVertex>& list, SpmVertex sv) {
            for (SpmVertex& o : list)
                if (dist(o.location, sv.location) <= tol_.merge()) {
                    std::vector<int> u;
                    std::set_union(o.anchors.begin(), o.anchors.end(), sv.anchors.begin(), sv.anchors.end(), std::back_inserter(u));
                    o.anchors = std::move(u);
                    return;
                }
            list.push_back(std::move(sv));
        };
        std::vector<SpmVertex> feet, triples;
        for (BisectorArc& arc : map_.arcs) {
            for (Point* end : {&arc.start, &arc.end}) {
                const Point p = *end;
                bool at_vertex = false;
                for (VertexId v = 0; v < d_.n(); ++v)
                    if (dist(d_.vertex(v), p) <= tol_.merge()) {
                        at_vertex = true;
                        std::vector<int> pair{std::min(arc.a, arc.b), std::max(arc.a, arc.b)};
                        SpmVertex& o = verts[static_cast<std::size_t>(v)];
                        std::vector<int> u;
                        std::set_union(o.anchors.begin(), o.anchors.end(), pair.begin(), pair.end(), std::back_inserter(u));
                        o.anchors = std::move(u);
                        break;
                    }
                if (at_vertex) continue;
                SpmVertex sv;
                sv.location = p;
                sv.anchors = tied_anchors(p);
                for (int k : {arc.a, arc.b})
                    if (!std::binary_search(sv.anchors.begin(), sv.anchors.end(), k)) {
                        sv.anchors.insert(std::lower_bound(sv.anchors.begin(), sv.anchors.end(), k), k);
                    }
                if (d_.boundary_distance(p) <= tol_.merge()) {
                    sv.location = closest_boundary_point(d_, p);
                    sv.kind = SpmVertexKind::BoundaryFoot;
                    merge_into(feet, std::move(sv));
                } else if (sv.anchors.size() >= 3) {
                    sv.kind = SpmVertexKind::TriplePoint;
                    merge_into(triples, std::move(sv));
                } else {
                    bool dup = false;
                    for (Point q : map_.loose_ends) dup = dup || dist(q, p) <= tol_.merge();
                    if (!dup) map_.loose_ends.push_back(p);
                }
            }
        }
        auto by_location = [](const SpmVertex& a, const SpmVertex& b) { return a.location < b.location; };
        std::sort(feet.begin(), feet.end(), by_location);
        std::sort(triples.begin(), triples.end(), by_location);
        map_.vertices = std::move(verts);
        for (auto& f : feet) map_.vertices.push_back(std::move(f));
        for (auto& t : triples) map_.vertices.push_back(std::move(t));
    }

    const VisibilityGraph& g_;
    const PolygonalDomain& d_;
    Tolerance tol_;
    ShortestPathMap map_;
    std::vector<BisectorCurve> curves_;
};

} // namespace detail

/// Shortest path map from s, realised as the last-anchor partition of the
/// geodesic distance function.
inline ShortestPathMap build_spm(const VisibilityGraph& g, Point s) { return detail::SpmBuilder(g, s).build(); }

inline ShortestPathMap build_spm(const PolygonalDomain& d, Point s) { return build_spm(build_visibility_graph(d), s); }

struct SpmValue {
    double distance = std::numeric_limits<double>::infinity();
    int anchor = -1;  // index into ShortestPathMap::anchors
};

/// Geodesic distance from the map's source to x, with the realising anchor
/// (smallest anchor id among ties).
inline SpmValue spm_eval(const PolygonalDomain& d, const ShortestPathMap& m, Point x)
{
    const double eps = d.tol().tie();
    const int count = static_cast<int>(m.anchors.size());
    thread_local std::vector<std::pair<double, int>> vals;
    vals.clear();
    for (int k = 0; k < count; ++k) vals.emplace_back(m.anchors[static_cast<std::size_t>(k)].weight + dist(m.anchors[static_cast<std::size_t>(k)].site, x), k);
    std::sort(vals.begin(), vals.end());
    SpmValue best;
    for (const auto& [v, k] : vals) {
        if (v > best.distance + eps) break;
        if (!segment_visible(d, m.anchors[static_cast<std::size_t>(k)].site, x)) continue;
        if (best.anchor < 0) {
            best = {v, k};
        } else if (m.anchor_id(k) < m.anchor_id(best.anchor)) {
            best.anchor = k;
        }
    }
    return best;
}

struct FarthestPoint {
    Point q;
    double distance = 0.0;
};

/// Points at which the distance function from the map's source can have a local maximum.
inline std::vector<Point> farthest_candidates(const PolygonalDomain& d, const ShortestPathMap& m)
{
    std::vector<Point> pts(d.vertices().begin(), d.vertices().end());
    for (const SpmVertex& v : m.vertices)
        if (v.kind != SpmVertexKind::DomainVertex) pts.push_back(v.location);
    for (Point p : m.loose_ends) pts.push_back(p);
    return pts;
}

/// Farthest point of the domain from p, chosen among domain vertices and map vertices
/// (earliest on ties) and re-verified against the visibility-graph geodesic.
inline FarthestPoint farthest_point(const VisibilityGraph& g, const ShortestPathMap& m)
{
    const PolygonalDomain& d = g.domain;
    FarthestPoint best;
    best.distance = -1.0;
    for (Point q : farthest_candidates(d, m)) {
        const double v = spm_eval(d, m, q).distance;
        if (v > best.distance + d.tol().tie()) best = {q, v};
    }
    const double check = geodesic_distance(g, m.source, best.q).length;
    if (std::abs(check - best.distance) > 1e-8 * d.scale())
        throw InvariantViolation("farthest point distance disagrees with geodesic distance");
    return best;
}

inline FarthestPoint farthest_point(const VisibilityGraph& g, Point p) { return farthest_point(g, build_spm(g, p)); }

inline FarthestPoint farthest_point(const PolygonalDomain& d, Point p) { return farthest_point(build_visibility_graph(d), p); }

} // namespace geodiam
