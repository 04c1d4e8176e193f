#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "geodiam/domain.hpp"
#include "geodiam/parallel.hpp"
#include "geodiam/random.hpp"
#include "geodiam/visgraph.hpp"

namespace geodiam {

// ---------------------------------------------------------------------------
// Random domains

struct DomainSpec {
    std::uint64_t seed = 1;
    int n_outer = 8;
    int n_holes = 0;
    /// Hole circumradius range as a fraction of the outer radius.
    std::pair<double, double> hole_size_range{0.08, 0.2};
};

namespace detail {

inline std::vector<Point> random_star(Xorshift64Star& rng, int count, Point center, double radius, double r_min_frac, bool convex)
{
    std::vector<double> angles;
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (int k = 0; k < count; ++k)
        angles.push_back(phase + (k + rng.uniform(-0.35, 0.35)) * 2.0 * std::numbers::pi / count);
    std::vector<Point> ring;
    for (double a : angles) {
        const double r = convex ? radius : radius * rng.uniform(r_min_frac, 1.0);
        ring.push_back(center + Point{r * std::cos(a), r * std::sin(a)});
    }
    return ring;
}

inline double ring_gap(std::span<const Point> a, std::span<const Point> b)
{
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point a0 = a[i], a1 = a[(i + 1) % a.size()];
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Point b0 = b[j], b1 = b[(j + 1) % b.size()];
            if (intersect_segments(a0, a1, b0, b1).kind != SegmentHit::Kind::None) return 0.0;
            g = std::min({g, dist_to_segment(a0, a1, b0), dist_to_segment(a0, a1, b1), dist_to_segment(b0, b1, a0),
                          dist_to_segment(b0, b1, a1)});
        }
    }
    return g;
}

} // namespace detail

/// Deterministic random domain: a star-shaped outer ring around the origin
/// (radius 10) with convex holes placed by rejection sampling.
inline PolygonalDomain random_domain(const DomainSpec& spec)
{
    constexpr double kRadius = 10.0;
    Xorshift64Star rng(spec.seed);
    const std::vector<Point> outer = detail::random_star(rng, spec.n_outer, {0, 0}, kRadius, 0.45, false);
    std::vector<std::vector<Point>> holes;
    int attempts = 0;
    while (static_cast<int>(holes.size()) < spec.n_holes) {
        if (++attempts > 1000) throw GenerationFailed("could not place holes after 1000 attempts");
        const double r = kRadius * rng.uniform(spec.hole_size_range.first, spec.hole_size_range.second);
        const Point c{rng.uniform(-kRadius, kRadius), rng.uniform(-kRadius, kRadius)};
        std::vector<Point> hole = detail::random_star(rng, rng.uniform_int(3, 5), c, r, 1.0, true);
        std::reverse(hole.begin(), hole.end());
        const double clearance = 0.03 * kRadius;
        if (!detail::ring_contains(outer, c) || detail::ring_gap(hole, outer) < clearance) continue;
        bool inside = true;
        for (Point p : hole) inside = inside && detail::ring_contains(outer, p);
        if (!inside) continue;
        bool ok = true;
        for (const auto& h : holes)
            if (detail::ring_gap(hole, h) < clearance || detail::ring_contains(h, c) || detail::ring_contains(hole, h[0])) ok = false;
        if (!ok) continue;
        holes.push_back(std::move(hole));
    }
    return PolygonalDomain(outer, holes);
}

/// Random convex polygon with `n` vertices on an ellipse.
inline PolygonalDomain random_convex_domain(std::uint64_t seed, int n)
{
    Xorshift64Star rng(seed);
    const double a = rng.uniform(5.0, 10.0), b = rng.uniform(3.0, 10.0);
    const double rot = rng.uniform(0.0, std::numbers::pi);
    std::vector<Point> ring;
    for (Point p : detail::random_star(rng, n, {0, 0}, 1.0, 1.0, true)) {
        const Point e{a * p.x, b * p.y};
        ring.push_back({e.x * std::cos(rot) - e.y * std::sin(rot), e.x * std::sin(rot) + e.y * std::cos(rot)});
    }
    return PolygonalDomain(ring, {});
}

// ---------------------------------------------------------------------------
// Sampling lower bound

struct SampleSet {
    std::vector<Point> points;
    double resolution = 0.0;
};

/// Grid points of spacing `resolution` inside the domain plus boundary points
/// every `resolution` along each edge, starting at the edge's first vertex.
inline SampleSet make_samples(const PolygonalDomain& d, double resolution)
{
    SampleSet s;
    s.resolution = resolution;
    for (int e = 0; e < d.edge_count(); ++e) {
        const Segment seg = d.edge(e);
        const int steps = static_cast<int>(std::floor(seg.length() / resolution));
        for (int k = 0; k <= steps; ++k) {
            const double t = k * resolution / seg.length();
            if (t < 1.0) s.points.push_back(k == 0 ? seg.a : seg.at(t));
        }
    }
    const BoundingBox& box = d.bbox();
    const Point origin{std::floor(box.lo.x / resolution) * resolution, std::floor(box.lo.y / resolution) * resolution};
    const int nx = static_cast<int>(std::ceil((box.hi.x - origin.x) / resolution));
    const int ny = static_cast<int>(std::ceil((box.hi.y - origin.y) / resolution));
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j) {
            const Point p{origin.x + i * resolution, origin.y + j * resolution};
            if (locate(d, p, 0.0) == Location::Inside) s.points.push_back(p);
        }
    return s;
}

struct SampleDiameter {
    Point p;
    Point q;
    double distance = 0.0;
    std::size_t sample_count = 0;
};

/// Largest geodesic distance over all pairs of samples: a lower bound on the diameter.
inline SampleDiameter sample_diameter(const VisibilityGraph& g, double resolution, unsigned threads = 1)
{
    const PolygonalDomain& d = g.domain;
    if (!(resolution > 0.0)) throw ResolutionTooCoarse("resolution must be positive");
    const SampleSet samples = make_samples(d, resolution);
    const std::size_t count = samples.points.size();
    if (count < 16) throw ResolutionTooCoarse("fewer than 16 samples at this resolution");

    std::vector<VertexId> bends;
    for (VertexId v = 0; v < d.n(); ++v)
        if (d.is_reflex(v)) bends.push_back(v);
    const std::size_t nb = bends.size();
    // Geodesic distance from each sample to each bend vertex (inf when unused).
    std::vector<double> to_bend(count * nb);
    std::vector<std::vector<std::uint32_t>> visible_bends(count);
    parallel_for(count, threads, [&](std::size_t s) {
        const SourceDistances sd = single_source_distances(g, samples.points[s]);
        for (std::size_t b = 0; b < nb; ++b) {
            to_bend[s * nb + b] = sd.at(bends[b]);
            if (sd.sees_source[static_cast<std::size_t>(bends[b])]) visible_bends[s].push_back(static_cast<std::uint32_t>(b));
        }
    });

    struct Best {
        double distance = -1.0;
        std::size_t s = 0, t = 0;
    };
    std::vector<Best> per_source(count);
    parallel_for(count, threads, [&](std::size_t s) {
        Best best;
        const Point ps = samples.points[s];
        for (std::size_t t = s + 1; t < count; ++t) {
            const Point pt = samples.points[t];
            double via = std::numeric_limits<double>::infinity();
            for (std::uint32_t b : visible_bends[t]) via = std::min(via, to_bend[s * nb + b] + dist(d.vertex(bends[b]), pt));
            // d(s, t) <= via, with equality unless the samples see each other.
            const double euclid = dist(ps, pt);
            if (std::max(via, euclid) <= best.distance) continue;
            const double geo = segment_visible(d, ps, pt) ? euclid : via;
            if (geo > best.distance) best = {geo, s, t};
        }
        per_source[s] = best;
    });
    Best best;
    for (const Best& b : per_source)
        if (b.distance > best.distance) best = b;
    return {samples.points[best.s], samples.points[best.t], best.distance, count};
}

inline SampleDiameter sample_diameter(const PolygonalDomain& d, double resolution)
{
    return sample_diameter(build_visibility_graph(d), resolution);
}

// ---------------------------------------------------------------------------
// Local hill climbing

/// Moves p by `step` along `dir`; a step leaving the domain stops at the first
/// boundary crossing. Returns p when no admissible move exists.
inline Point project_step(const PolygonalDomain& d, Point p, Point dir, double step)
{
    auto settle = [&](Point x) { return locate(d, x, 0.0) == Location::Outside ? closest_boundary_point(d, x) : x; };
    const Point target = p + step * dir;
    if (segment_visible(d, p, target)) return settle(target);
    double first = 1.0;
    bool hit = false;
    const double tiny = 1e-12;
    for (int e = 0; e < d.edge_count(); ++e) {
        const Segment s = d.edge(e);
        const SegmentHit h = intersect_segments(p, target, s.a, s.b);
        if (h.kind == SegmentHit::Kind::None) continue;
        const double t = h.t;
        if (t > tiny && t < first) {
            first = t;
            hit = true;
        }
    }
    if (!hit) return p;
    const Point q = p + (first * step) * dir;
    return segment_visible(d, p, q) ? settle(q) : p;
}

struct LocalPair {
    Point p;
    Point q;
    double distance = 0.0;
};

/// Alternating 8-direction coordinate ascent on d(p, q) over shrinking steps
/// scale * 1e-1 ... scale * 1e-7. Never decreases the distance.
inline LocalPair local_improvement(const VisibilityGraph& g, Point p, Point q)
{
    const PolygonalDomain& d = g.domain;
    auto eval_from = [&](const SourceDistances& sd, Point x) { return distance_via(g, sd, x).first; };
    double current = geodesic_distance(g, p, q).length;
    const double gain = 1e-14 * d.scale();
    for (int e = 1; e <= 7; ++e) {
        const double step = d.scale() * std::pow(10.0, -e);
        for (int round = 0; round < 200; ++round) {
            bool improved = false;
            for (int which = 0; which < 2; ++which) {
                Point& moving = which == 0 ? p : q;
                const Point fixed = which == 0 ? q : p;
                const SourceDistances sd = single_source_distances(g, fixed);
                Point best_pt = moving;
                double best = current;
                for (int k = 0; k < 8; ++k) {
                    const double a = k * std::numbers::pi / 4.0;
                    const Point cand = project_step(d, moving, {std::cos(a), std::sin(a)}, step);
                    if (cand == moving) continue;
                    const double v = eval_from(sd, cand);
                    if (v > best + gain) {
                        best = v;
                        best_pt = cand;
                    }
                }
                if (best_pt != moving) {
                    moving = best_pt;
                    current = best;
                    improved = true;
                }
            }
            if (!improved) break;
        }
    }
    return {p, q, geodesic_distance(g, p, q).length};
}

inline LocalPair local_improvement(const PolygonalDomain& d, Point p, Point q)
{
    return local_improvement(build_visibility_graph(d), p, q);
}

} // namespace geodiam
