#pragma once

#include <nlohmann/json.hpp>

#include "geodiam/candidates.hpp"
#include "geodiam/diameter.hpp"
#include "geodiam/oracle.hpp"
#include "geodiam/spm.hpp"

namespace geodiam {

inline nlohmann::json to_json(Point p) { return nlohmann::json::array({p.x, p.y}); }

inline nlohmann::json anchor_ref(VertexId id)
{
    if (id == kSource) return "source";
    return id;
}

inline nlohmann::json to_json(const PlausibleTuple& t) { return {{"u1", t.u1}, {"u2", t.u2}, {"u3", t.u3}, {"v2", t.v2}, {"v3", t.v3}}; }

inline nlohmann::json provenance_json(const CandidatePoint& c)
{
    nlohmann::json j{{"kind", to_string(c.kind)}};
    switch (c.kind) {
    case CandidateKind::DomainVertex: j["vertex"] = c.vertex; break;
    case CandidateKind::BoundaryFoot:
    case CandidateKind::TriplePoint: j["source"] = c.vertex; break;
    case CandidateKind::PlausibleNode: j["tuple"] = to_json(c.tuple); break;
    case CandidateKind::OverlayNode: j["sources"] = {c.sources[0], c.sources[1]}; break;
    }
    return j;
}

inline nlohmann::json to_json(const CandidatePoint& c) { return {{"location", to_json(c.location)}, {"provenance", provenance_json(c)}}; }

/// Polyline with `segments` pieces, uniform in the curve parameter.
inline std::vector<Point> arc_polyline(const BisectorArc& arc, int segments = 64)
{
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(segments) + 1);
    pts.push_back(arc.start);
    for (int k = 1; k < segments; ++k) pts.push_back(arc.at(arc.t0 + (arc.t1 - arc.t0) * k / segments));
    pts.push_back(arc.end);
    return pts;
}

inline nlohmann::json to_json(const ShortestPathMap& m)
{
    nlohmann::json anchors = nlohmann::json::array();
    for (const Anchor& a : m.anchors) anchors.push_back({{"id", anchor_ref(a.id)}, {"site", to_json(a.site)}, {"weight", a.weight}});
    nlohmann::json arcs = nlohmann::json::array();
    for (const BisectorArc& arc : m.arcs) {
        nlohmann::json poly = nlohmann::json::array();
        for (Point p : arc_polyline(arc)) poly.push_back(to_json(p));
        arcs.push_back({{"anchors", {anchor_ref(m.anchor_id(arc.a)), anchor_ref(m.anchor_id(arc.b))}},
                        {"curve", to_string(arc.curve.kind)},
                        {"start", to_json(arc.start)},
                        {"end", to_json(arc.end)},
                        {"polyline", std::move(poly)}});
    }
    nlohmann::json verts = nlohmann::json::array();
    for (const SpmVertex& v : m.vertices) {
        nlohmann::json ids = nlohmann::json::array();
        for (int a : v.anchors) ids.push_back(anchor_ref(m.anchor_id(a)));
        nlohmann::json j{{"location", to_json(v.location)}, {"kind", to_string(v.kind)}, {"anchors", std::move(ids)}};
        if (v.kind == SpmVertexKind::DomainVertex) j["vertex"] = v.domain_vertex;
        verts.push_back(std::move(j));
    }
    nlohmann::json loose = nlohmann::json::array();
    for (Point p : m.loose_ends) loose.push_back(to_json(p));
    return {{"source", to_json(m.source)},
            {"source_vertex", m.source_vertex == kNoVertex ? nlohmann::json(nullptr) : nlohmann::json(m.source_vertex)},
            {"anchors", std::move(anchors)},
            {"arcs", std::move(arcs)},
            {"vertices", std::move(verts)},
            {"loose_ends", std::move(loose)}};
}

inline nlohmann::json to_json(const GeodesicPath& path)
{
    nlohmann::json pts = nlohmann::json::array();
    for (Point p : path.waypoints) pts.push_back(to_json(p));
    return {{"length", path.length}, {"waypoints", std::move(pts)}, {"bends", path.bends}};
}

inline nlohmann::json to_json(const DiameterResult& r)
{
    nlohmann::json wp = nlohmann::json::array();
    for (Point p : r.witness.waypoints) wp.push_back(to_json(p));
    nlohmann::json runners = nlohmann::json::array();
    for (const RankedCandidate& c : r.runner_ups)
        runners.push_back({{"p", to_json(c.candidate.location)},
                           {"q", to_json(c.farthest)},
                           {"distance", c.distance},
                           {"provenance", provenance_json(c.candidate)}});
    return {{"p", to_json(r.p)},
            {"q", to_json(r.q)},
            {"distance", r.distance},
            {"provenance", provenance_json(r.p_provenance)},
            {"witness_waypoints", std::move(wp)},
            {"runner_ups", std::move(runners)}};
}

inline nlohmann::json to_json(const AlgorithmReport& r)
{
    nlohmann::json timings = nlohmann::json::object();
    for (const auto& [phase, ms] : r.timings_ms) timings[phase] = ms;
    return {{"n", r.n},
            {"reflex", r.reflex},
            {"holes", r.holes},
            {"counts",
             {{"spm_arcs", r.spm_arcs},
              {"spm_vertices", r.spm_vertices},
              {"adjacency_bits", r.adjacency_bits},
              {"plausible_tuples", r.plausible_tuples},
              {"DomainVertex", r.vertex_candidates},
              {"BoundaryFoot", r.boundary_feet},
              {"TriplePoint", r.triple_points},
              {"PlausibleNode", r.plausible_nodes},
              {"evaluated", r.evaluated},
              {"pruned", r.pruned}}},
            {"flags", {{"ties", r.ties}, {"prune", r.prune}, {"vertex_only", r.vertex_only}}},
            {"threads", r.threads},
            {"timings_ms", std::move(timings)}};
}

} // namespace geodiam
