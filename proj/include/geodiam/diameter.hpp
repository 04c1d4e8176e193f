#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "geodiam/candidates.hpp"
#include "geodiam/parallel.hpp"
#include "geodiam/spm.hpp"
#include "geodiam/visgraph.hpp"

namespace geodiam {

struct DiameterOptions {
    /// Skip candidates whose eccentricity upper bound cannot beat the vertex-pair diameter.
    bool prune = false;
    /// Worker count; 0 resolves through GEODIAM_THREADS / hardware concurrency.
    unsigned threads = 0;
    /// Number of runner-ups reported in addition to all ties.
    int top_k = 5;
};

struct RankedCandidate {
    CandidatePoint candidate;
    Point farthest;
    double distance = 0.0;
};

struct DiameterResult {
    Point p;
    Point q;
    double distance = 0.0;
    CandidatePoint p_provenance;
    GeodesicPath witness;
    std::vector<RankedCandidate> runner_ups;
};

struct AlgorithmReport {
    int n = 0;
    int reflex = 0;
    int holes = 0;
    std::size_t spm_arcs = 0;
    std::size_t spm_vertices = 0;
    std::size_t adjacency_bits = 0;
    std::size_t plausible_tuples = 0;
    std::size_t vertex_candidates = 0;
    std::size_t boundary_feet = 0;
    std::size_t triple_points = 0;
    std::size_t plausible_nodes = 0;
    /// Candidates left after merging coincident points across classes.
    std::size_t evaluated = 0;
    std::size_t pruned = 0;
    /// Candidates within the tie tolerance of the maximum.
    std::size_t ties = 0;
    bool prune = false;
    bool vertex_only = false;
    unsigned threads = 1;
    std::vector<std::pair<std::string, double>> timings_ms;
};

namespace detail {

class PhaseClock {
public:
    explicit PhaseClock(AlgorithmReport& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
    void lap(const char* phase)
    {
        const auto now = std::chrono::steady_clock::now();
        report_.timings_ms.emplace_back(phase, std::chrono::duration<double, std::milli>(now - start_).count());
        start_ = now;
    }

private:
    AlgorithmReport& report_;
    std::chrono::steady_clock::time_point start_;
};

inline bool candidate_order(const CandidatePoint& a, const CandidatePoint& b)
{
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.location < b.location;
}

/// Picks the maximum; among candidates within the tie tolerance of it, the
/// first in (class, coordinates) order wins. `ranked` must already be in that order.
inline DiameterResult reduce(const VisibilityGraph& g, const std::vector<RankedCandidate>& ranked, int top_k, std::size_t& ties)
{
    const double eps = g.domain.tol().tie();
    double top = -1.0;
    for (const RankedCandidate& r : ranked) top = std::max(top, r.distance);
    std::size_t win = 0;
    while (ranked[win].distance < top - eps) ++win;

    DiameterResult res;
    const RankedCandidate& w = ranked[win];
    res.p = w.candidate.location;
    res.q = w.farthest;
    res.distance = w.distance;
    res.p_provenance = w.candidate;
    res.witness = geodesic_distance(g, res.p, res.q);

    std::vector<std::size_t> order(ranked.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ranked[a].distance > ranked[b].distance; });
    ties = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const RankedCandidate& r = ranked[order[k]];
        const bool tie = r.distance >= top - eps;
        ties += tie ? 1 : 0;
        if (order[k] == win) continue;
        if (tie || static_cast<int>(res.runner_ups.size()) < top_k) res.runner_ups.push_back(r);
        else break;
    }
    return res;
}

inline std::vector<ShortestPathMap> vertex_maps(const VisibilityGraph& g, unsigned threads)
{
    std::vector<ShortestPathMap> maps(static_cast<std::size_t>(g.domain.n()));
    parallel_for(maps.size(), threads, [&](std::size_t v) { maps[v] = build_spm(g, g.domain.vertex(static_cast<VertexId>(v))); });
    return maps;
}

inline std::vector<RankedCandidate> rank_vertices(const VisibilityGraph& g, std::span<const ShortestPathMap> maps, unsigned threads)
{
    std::vector<CandidatePoint> cands = vertex_candidates(g.domain);
    std::vector<RankedCandidate> ranked(cands.size());
    parallel_for(cands.size(), threads, [&](std::size_t i) {
        const FarthestPoint f = farthest_point(g, maps[i]);
        ranked[i] = {cands[i], f.q, f.distance};
    });
    std::sort(ranked.begin(), ranked.end(), [](const RankedCandidate& a, const RankedCandidate& b) { return candidate_order(a.candidate, b.candidate); });
    return ranked;
}

} // namespace detail

/// Largest distance from a domain vertex to its farthest point.
inline DiameterResult diameter_vertex_only(const VisibilityGraph& g, const DiameterOptions& opt = {})
{
    const unsigned threads = resolve_threads(opt.threads);
    const std::vector<ShortestPathMap> maps = detail::vertex_maps(g, threads);
    std::size_t ties = 0;
    return detail::reduce(g, detail::rank_vertices(g, maps, threads), opt.top_k, ties);
}

inline DiameterResult diameter_vertex_only(const PolygonalDomain& d, const DiameterOptions& opt = {})
{
    return diameter_vertex_only(build_visibility_graph(d), opt);
}

/// Geodesic diameter: the farthest-point distance maximised over domain vertices,
/// boundary feet, triple points and plausible nodes of the per-vertex maps.
inline std::pair<DiameterResult, AlgorithmReport> compute_diameter(const VisibilityGraph& g, const DiameterOptions& opt = {})
{
    const PolygonalDomain& d = g.domain;
    AlgorithmReport rep;
    rep.n = d.n();
    rep.holes = static_cast<int>(d.hole_count());
    for (VertexId v = 0; v < d.n(); ++v) rep.reflex += d.is_reflex(v) ? 1 : 0;
    rep.prune = opt.prune;
    rep.threads = resolve_threads(opt.threads);
    const unsigned threads = rep.threads;
    detail::PhaseClock clock(rep);

    const std::vector<ShortestPathMap> maps = detail::vertex_maps(g, threads);
    for (const ShortestPathMap& m : maps) {
        rep.spm_arcs += m.arcs.size();
        rep.spm_vertices += m.vertices.size();
    }
    clock.lap("vertex_maps");

    std::vector<RankedCandidate> ranked = detail::rank_vertices(g, maps, threads);
    rep.vertex_candidates = ranked.size();
    clock.lap("vertex_farthest");

    const BisectorAdjacency b = bisector_adjacency(d, maps);
    const std::vector<PlausibleTuple> tuples = plausible_tuples(b);
    rep.adjacency_bits = b.count();
    rep.plausible_tuples = tuples.size();
    clock.lap("plausible_tuples");

    std::vector<CandidatePoint> feet = boundary_foot_candidates(maps);
    std::vector<CandidatePoint> triples = triple_point_candidates(maps);
    std::vector<CandidatePoint> nodes = plausible_nodes(d, maps, tuples);
    rep.boundary_feet = feet.size();
    rep.triple_points = triples.size();
    rep.plausible_nodes = nodes.size();
    clock.lap("candidates");

    // Later classes lose points that coincide with an earlier class or each other.
    std::vector<CandidatePoint> extra;
    for (auto* list : {&feet, &triples, &nodes}) {
        std::sort(list->begin(), list->end(), detail::candidate_order);
        extra.insert(extra.end(), list->begin(), list->end());
    }
    std::vector<CandidatePoint> merged = vertex_candidates(d);
    merged.insert(merged.end(), extra.begin(), extra.end());
    detail::dedupe_by_location(merged, d.tol().merge(), [](const CandidatePoint& c) { return c.location; });
    std::erase_if(merged, [](const CandidatePoint& c) { return c.kind == CandidateKind::DomainVertex; });

    std::vector<char> skip(merged.size(), 0);
    if (opt.prune) {
        // d(c, x) <= |cv| + ecc(v) for any vertex v visible from c.
        std::vector<double> ecc(static_cast<std::size_t>(d.n()));
        for (const RankedCandidate& r : ranked) ecc[static_cast<std::size_t>(r.candidate.vertex)] = r.distance;
        double floor = 0.0;
        for (const RankedCandidate& r : ranked) floor = std::max(floor, r.distance);
        floor -= d.tol().tie();
        parallel_for(merged.size(), threads, [&](std::size_t i) {
            const Point c = merged[i].location;
            double ub = std::numeric_limits<double>::infinity();
            for (VertexId v = 0; v < d.n(); ++v) {
                const double bound = dist(c, d.vertex(v)) + ecc[static_cast<std::size_t>(v)];
                if (bound < ub && segment_visible(d, c, d.vertex(v))) ub = bound;
            }
            skip[i] = ub < floor ? 1 : 0;
        });
    }

    std::vector<RankedCandidate> extra_ranked(merged.size());
    parallel_for(merged.size(), threads, [&](std::size_t i) {
        if (skip[i]) return;
        const FarthestPoint f = farthest_point(g, merged[i].location);
        extra_ranked[i] = {merged[i], f.q, f.distance};
    });
    rep.evaluated = ranked.size();
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (skip[i]) {
            ++rep.pruned;
            continue;
        }
        ranked.push_back(extra_ranked[i]);
        ++rep.evaluated;
    }
    clock.lap("candidate_farthest");

    DiameterResult res = detail::reduce(g, ranked, opt.top_k, rep.ties);
    clock.lap("reduce");
    return {std::move(res), std::move(rep)};
}

inline std::pair<DiameterResult, AlgorithmReport> compute_diameter(const PolygonalDomain& d, const DiameterOptions& opt = {})
{
    return compute_diameter(build_visibility_graph(d), opt);
}

} // namespace geodiam
