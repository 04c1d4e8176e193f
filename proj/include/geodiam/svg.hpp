#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "geodiam/candidates.hpp"
#include "geodiam/diameter.hpp"
#include "geodiam/json_io.hpp"

namespace geodiam {

struct RenderSpec {
    int width_px = 800;
    double domain_stroke = 1.5;
    double arc_stroke = 0.8;
    double path_stroke = 2.0;
    double point_radius = 3.0;
    bool show_domain = true;
    bool show_arcs = true;
    bool show_candidates = true;
    bool show_diameter = true;
    bool show_oracle = true;
};

/// Optional overlays drawn on top of the domain.
struct RenderLayers {
    std::vector<const ShortestPathMap*> maps;
    std::vector<CandidatePoint> candidates;
    const DiameterResult* diameter = nullptr;
    std::vector<Point> oracle_points;
};

namespace detail {

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline const char* candidate_colour(CandidateKind k)
{
    switch (k) {
    case CandidateKind::DomainVertex: return "#1f77b4";
    case CandidateKind::BoundaryFoot: return "#2ca02c";
    case CandidateKind::TriplePoint: return "#d62728";
    case CandidateKind::PlausibleNode: return "#9467bd";
    case CandidateKind::OverlayNode: return "#8c564b";
    }
    return "#000";
}

} // namespace detail

/// SVG drawing in domain coordinates: y-up via a flipped group, viewBox fitted
/// to the bounding box with a 5% margin.
inline std::string render_svg(const PolygonalDomain& d, const RenderLayers& layers, const RenderSpec& spec = {})
{
    if (spec.width_px < 64) throw ValidationError("render_spec", "width_px must be at least 64");
    const BoundingBox& box = d.bbox();
    const double w = box.hi.x - box.lo.x, h = box.hi.y - box.lo.y;
    const double margin = 0.05 * std::max(w, h);
    const double vx = box.lo.x - margin, vw = w + 2 * margin;
    const double vy = -(box.hi.y + margin), vh = h + 2 * margin;
    const double px = vw / spec.width_px;  // domain units per pixel
    const int height_px = std::max(1, static_cast<int>(std::lround(spec.width_px * vh / vw)));
    using detail::fmt;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width_px << "\" height=\"" << height_px << "\" viewBox=\""
        << fmt(vx) << ' ' << fmt(vy) << ' ' << fmt(vw) << ' ' << fmt(vh) << "\">\n";
    out << "<g transform=\"scale(1,-1)\">\n";

    auto polyline = [&](const std::vector<Point>& pts, const char* colour, double width, bool closed) {
        out << (closed ? "<path d=\"" : "<polyline fill=\"none\" points=\"");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (closed) out << (i == 0 ? "M" : " L") << fmt(pts[i].x) << ',' << fmt(pts[i].y);
            else out << (i ? " " : "") << fmt(pts[i].x) << ',' << fmt(pts[i].y);
        }
        if (closed) out << " Z\" fill-rule=\"evenodd\" fill=\"none\"";
        else out << '"';
        out << " stroke=\"" << colour << "\" stroke-width=\"" << fmt(width * px) << "\"/>\n";
    };
    auto dot = [&](Point p, const char* colour) {
        out << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y) << "\" r=\"" << fmt(spec.point_radius * px) << "\" fill=\"" << colour
            << "\"/>\n";
    };

    if (spec.show_domain) {
        out << "<g id=\"domain\">\n";
        for (std::size_t r = 0; r < d.ring_count(); ++r) {
            const auto ring = d.ring(r);
            polyline(std::vector<Point>(ring.begin(), ring.end()), "#222", spec.domain_stroke, true);
        }
        out << "</g>\n";
    }
    if (spec.show_arcs && !layers.maps.empty()) {
        out << "<g id=\"spm-arcs\">\n";
        for (const ShortestPathMap* m : layers.maps)
            for (const BisectorArc& arc : m->arcs) polyline(arc_polyline(arc, 64), "#ff7f0e", spec.arc_stroke, false);
        out << "</g>\n";
    }
    if (spec.show_candidates && !layers.candidates.empty()) {
        out << "<g id=\"candidates\">\n";
        for (const CandidatePoint& c : layers.candidates) dot(c.location, detail::candidate_colour(c.kind));
        out << "</g>\n";
    }
    if (spec.show_oracle && !layers.oracle_points.empty()) {
        out << "<g id=\"oracle-points\">\n";
        for (Point p : layers.oracle_points) dot(p, "#7f7f7f");
        out << "</g>\n";
    }
    if (spec.show_diameter && layers.diameter) {
        out << "<g id=\"diameter-path\">\n";
        polyline(layers.diameter->witness.waypoints, "#e31a1c", spec.path_stroke, false);
        dot(layers.diameter->p, "#e31a1c");
        dot(layers.diameter->q, "#e31a1c");
        out << "</g>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace geodiam
