#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <ostream>

namespace geodiam {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Point a, Point b) = default;
    // Lexicographic (x, then y); used for canonical orderings only.
    friend constexpr auto operator<=>(Point a, Point b)
    {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
    friend std::ostream& operator<<(std::ostream& os, Point p) { return os << '(' << p.x << ", " << p.y << ')'; }
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline constexpr double norm2(Point a) { return dot(a, a); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline constexpr Point perp(Point a) { return {-a.y, a.x}; }
inline Point unit(Point a)
{
    const double l = norm(a);
    return l > 0.0 ? a / l : Point{};
}
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Segment {
    Point a;
    Point b;

    Point at(double t) const { return a + t * (b - a); }
    double length() const { return dist(a, b); }
};

/// Scale-relative tolerance family. `scale` is the bounding-box diagonal of the
/// domain (or 1 for free-standing geometry).
struct Tolerance {
    double scale = 1.0;

    double tie() const { return 1e-9 * scale; }
    double eval() const { return 1e-9 * scale; }
    double merge() const { return 1e-7 * scale; }
    double collinear() const { return 1e-12 * scale * scale; }
};

namespace detail {

// Error-free transformations (Knuth two-sum, fma two-product).
inline void two_sum(double a, double b, double& s, double& e)
{
    s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    e = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e)
{
    p = a * b;
    e = std::fma(a, b, -p);
}

// Exact sign of a sum of doubles; grows a non-overlapping expansion.
template <std::size_t N>
int exact_sum_sign(const double (&terms)[N])
{
    double expansion[N];
    std::size_t len = 0;
    for (double t : terms) {
        double q = t;
        for (std::size_t i = 0; i < len; ++i) {
            double s, e;
            two_sum(q, expansion[i], s, e);
            expansion[i] = e;
            q = s;
        }
        expansion[len++] = q;
    }
    for (std::size_t i = len; i-- > 0;) {
        if (expansion[i] > 0.0) return 1;
        if (expansion[i] < 0.0) return -1;
    }
    return 0;
}

inline int exact_orient(Point p, Point q, Point r)
{
    // (qx-px)(ry-py) - (qy-py)(rx-px) with every difference split exactly.
    double ax, axe, ay, aye, bx, bxe, by, bye;
    two_sum(q.x, -p.x, ax, axe);
    two_sum(r.y, -p.y, by, bye);
    two_sum(q.y, -p.y, ay, aye);
    two_sum(r.x, -p.x, bx, bxe);
    const double lhs[4][2] = {{ax, by}, {ax, bye}, {axe, by}, {axe, bye}};
    const double rhs[4][2] = {{ay, bx}, {ay, bxe}, {aye, bx}, {aye, bxe}};
    double terms[16];
    for (int i = 0; i < 4; ++i) {
        double pr, er;
        two_product(lhs[i][0], lhs[i][1], pr, er);
        terms[2 * i] = pr;
        terms[2 * i + 1] = er;
        two_product(rhs[i][0], rhs[i][1], pr, er);
        terms[8 + 2 * i] = -pr;
        terms[8 + 2 * i + 1] = -er;
    }
    return exact_sum_sign(terms);
}

} // namespace detail

/// Exact orientation of (p, q, r): +1 counter-clockwise, -1 clockwise, 0 collinear.
inline int orient(Point p, Point q, Point r)
{
    const double l = (q.x - p.x) * (r.y - p.y);
    const double rr = (q.y - p.y) * (r.x - p.x);
    const double det = l - rr;
    const double bound = 3.3306690738754716e-16 * (std::abs(l) + std::abs(rr));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return detail::exact_orient(p, q, r);
}

/// Orientation with a collinearity band: 0 when r lies within `eps` of line pq.
inline int orient(Point p, Point q, Point r, double eps)
{
    const double len = dist(p, q);
    if (len == 0.0) return 0;
    const double d = cross(q - p, r - p) / len;
    if (std::abs(d) <= eps) return 0;
    return d > 0 ? 1 : -1;
}

inline double signed_area2(Point p, Point q, Point r) { return cross(q - p, r - p); }

/// Parameter of the orthogonal projection of p onto line ab (0 at a, 1 at b).
inline double project_param(Point a, Point b, Point p)
{
    const Point d = b - a;
    const double l2 = norm2(d);
    return l2 > 0.0 ? dot(p - a, d) / l2 : 0.0;
}

inline Point closest_on_segment(Point a, Point b, Point p)
{
    const double t = std::clamp(project_param(a, b, p), 0.0, 1.0);
    return a + t * (b - a);
}

inline double dist_to_segment(Point a, Point b, Point p) { return dist(p, closest_on_segment(a, b, p)); }

/// Intersection of two closed segments under exact predicates.
/// Returns false when disjoint; for a transversal hit stores the parameters on both.
struct SegmentHit {
    enum class Kind { None, Proper, Touch, Overlap } kind = Kind::None;
    double t = 0.0;  // parameter along the first segment
    double u = 0.0;  // parameter along the second segment
};

inline SegmentHit intersect_segments(Point p, Point q, Point a, Point b)
{
    const int o1 = orient(p, q, a);
    const int o2 = orient(p, q, b);
    const int o3 = orient(a, b, p);
    const int o4 = orient(a, b, q);
    SegmentHit hit;
    if (o1 == 0 && o2 == 0) {
        // Collinear: overlap iff projections intersect.
        const double ta = project_param(p, q, a);
        const double tb = project_param(p, q, b);
        if (std::max(ta, tb) < 0.0 || std::min(ta, tb) > 1.0) return hit;
        hit.kind = SegmentHit::Kind::Overlap;
        hit.t = std::clamp(std::min(ta, tb), 0.0, 1.0);
        hit.u = std::clamp(std::max(ta, tb), 0.0, 1.0);
        return hit;
    }
    if (o1 * o2 > 0 || o3 * o4 > 0) return hit;
    const Point r = q - p;
    const Point s = b - a;
    const double den = cross(r, s);
    if (den == 0.0) return hit;
    hit.t = std::clamp(cross(a - p, s) / den, 0.0, 1.0);
    hit.u = std::clamp(cross(a - p, r) / den, 0.0, 1.0);
    hit.kind = (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) ? SegmentHit::Kind::Proper : SegmentHit::Kind::Touch;
    return hit;
}

} // namespace geodiam
