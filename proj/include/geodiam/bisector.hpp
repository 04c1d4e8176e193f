#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "geodiam/errors.hpp"
#include "geodiam/geometry.hpp"
#include "geodiam/polynomial.hpp"

namespace geodiam {

struct WeightedSite {
    Point site;
    double weight = 0.0;
};

enum class CurveKind { Line, HyperbolaBranch, Ray, Empty };

inline const char* to_string(CurveKind k)
{
    switch (k) {
    case CurveKind::Line: return "line";
    case CurveKind::HyperbolaBranch: return "hyperbola";
    case CurveKind::Ray: return "ray";
    case CurveKind::Empty: return "empty";
    }
    return "?";
}

/// Tie locus {x : w_a + |x-a| = w_b + |x-b|} of two additively weighted sites.
///
/// Parameterisation by kind:
///   Line       x(t) = center + t v                        t in R
///   Hyperbola  x(t) = center + s A cosh(t) u + B sinh(t) v  t in R
///   Ray        x(t) = origin + t u                        t >= 0
/// where u is the unit vector from the lighter towards the heavier site, v = perp(u)
/// and s = +1. The hyperbola branch is the one nearer to the heavier site.
struct BisectorCurve {
    WeightedSite site_a;
    WeightedSite site_b;
    CurveKind kind = CurveKind::Empty;

    Point center;        // ray: the heavier site
    Point u;             // lighter -> heavier (line: a -> b)
    Point v;
    double semi_major = 0.0;
    double semi_minor = 0.0;

    double tie(Point x) const
    {
        return site_a.weight + dist(x, site_a.site) - site_b.weight - dist(x, site_b.site);
    }

    Point at(double t) const
    {
        switch (kind) {
        case CurveKind::Line: return center + t * v;
        case CurveKind::Ray: return center + t * u;
        case CurveKind::HyperbolaBranch:
            return center + (semi_major * std::cosh(t)) * u + (semi_minor * std::sinh(t)) * v;
        case CurveKind::Empty: break;
        }
        return center;
    }

    /// Parameter of the curve point nearest to x (exact for points on the curve).
    double param_of(Point x) const
    {
        switch (kind) {
        case CurveKind::Line: return dot(x - center, v);
        case CurveKind::Ray: return dot(x - center, u);
        case CurveKind::HyperbolaBranch: return std::asinh(dot(x - center, v) / semi_minor);
        case CurveKind::Empty: break;
        }
        return 0.0;
    }

    double t_lower() const { return kind == CurveKind::Ray ? 0.0 : -std::numeric_limits<double>::infinity(); }

    /// Implicit function with non-vanishing gradient along the curve.
    /// Equals tie() except for rays, whose tie function is flat across the ray.
    double implicit(Point x) const
    {
        if (kind == CurveKind::Ray) return cross(u, x - center);
        return tie(x);
    }

    Point implicit_gradient(Point x) const
    {
        if (kind == CurveKind::Ray) return perp(u);
        return unit(x - site_a.site) - unit(x - site_b.site);
    }

    /// Residual used for on-curve acceptance; for rays also penalises the wrong half-line.
    double residual(Point x) const
    {
        if (kind == CurveKind::Ray) {
            const double behind = std::max(0.0, -dot(x - center, u));
            return std::max(std::abs(cross(u, x - center)), behind);
        }
        return std::abs(tie(x));
    }

    /// Parameter interval of the part of the curve within distance `radius` of `focus`.
    std::pair<double, double> window(Point focus, double radius) const
    {
        const double r = dist(focus, center) + radius;
        switch (kind) {
        case CurveKind::Line: return {-r, r};
        case CurveKind::Ray: return {0.0, r};
        case CurveKind::HyperbolaBranch: {
            double tmax = std::asinh(r / semi_minor);
            if (r > semi_major) tmax = std::min(tmax, std::acosh(r / semi_major));
            else tmax = 0.0;
            return {-tmax, tmax};
        }
        case CurveKind::Empty: break;
        }
        return {0.0, -1.0};
    }
};

/// Builds the bisector of two weighted sites, classified with tolerance `tol.tie()`.
inline BisectorCurve make_bisector(const WeightedSite& a, const WeightedSite& b, const Tolerance& tol = {})
{
    BisectorCurve c;
    c.site_a = a;
    c.site_b = b;
    const double eps = tol.tie();
    const double d = dist(a.site, b.site);
    const double delta = b.weight - a.weight;
    if (a.site == b.site) {
        if (std::abs(delta) <= eps) throw DegenerateEverywhere("bisector of identical weighted sites");
        c.kind = CurveKind::Empty;
        return c;
    }
    if (std::abs(delta) < eps) {
        c.kind = CurveKind::Line;
        c.center = 0.5 * (a.site + b.site);
        c.u = unit(b.site - a.site);
        c.v = perp(c.u);
        return c;
    }
    const bool b_heavier = delta > 0.0;
    const Point light = b_heavier ? a.site : b.site;
    const Point heavy = b_heavier ? b.site : a.site;
    c.u = unit(heavy - light);
    c.v = perp(c.u);
    if (std::abs(std::abs(delta) - d) <= eps) {
        c.kind = CurveKind::Ray;
        c.center = heavy;
        return c;
    }
    if (std::abs(delta) > d) {
        c.kind = CurveKind::Empty;
        return c;
    }
    c.kind = CurveKind::HyperbolaBranch;
    c.center = 0.5 * (a.site + b.site);
    const double focal = 0.5 * d;
    c.semi_major = 0.5 * std::abs(delta);
    c.semi_minor = std::sqrt(std::max(0.0, focal * focal - c.semi_major * c.semi_major));
    return c;
}

namespace detail {

// A curve parameterised as x(s) = origin + P(s) / D(s) with polynomial P, D.
struct RationalCurve {
    Point origin;
    Poly px, py, den;
    bool exponential = false;  // s = e^t (hyperbola) rather than s = t
};

inline RationalCurve rational_form(const BisectorCurve& c)
{
    RationalCurve r;
    r.origin = c.center;
    if (c.kind == CurveKind::HyperbolaBranch) {
        // 2s x = 2s center + A (s^2 + 1) u + B (s^2 - 1) v
        const double A = c.semi_major, B = c.semi_minor;
        auto comp = [&](double uu, double vv) {
            Poly p;
            p.degree = 2;
            p.c[0] = A * uu - B * vv;
            p.c[1] = 0.0;
            p.c[2] = A * uu + B * vv;
            return p;
        };
        r.px = comp(c.u.x, c.v.x);
        r.py = comp(c.u.y, c.v.y);
        r.den = Poly::linear(0.0, 2.0);
        r.exponential = true;
    } else {
        const Point dir = c.kind == CurveKind::Line ? c.v : c.u;
        r.px = Poly::linear(0.0, dir.x);
        r.py = Poly::linear(0.0, dir.y);
        r.den = Poly::constant(1.0);
    }
    return r;
}

inline RationalCurve rational_form(const Segment& s)
{
    RationalCurve r;
    r.origin = s.a;
    r.px = Poly::linear(0.0, s.b.x - s.a.x);
    r.py = Poly::linear(0.0, s.b.y - s.a.y);
    r.den = Poly::constant(1.0);
    return r;
}

// Substitutes a rational curve into the implicit (squared) equation of c.
inline Poly substitute(const RationalCurve& r, const BisectorCurve& c)
{
    const Point a = c.site_a.site - r.origin;
    const Point b = c.site_b.site - r.origin;
    switch (c.kind) {
    case CurveKind::Line:
    case CurveKind::HyperbolaBranch: {
        const double delta = c.site_b.weight - c.site_a.weight;
        // |y-a|^2 - |y-b|^2 = 2 (b-a).y + |a|^2 - |b|^2
        const Point g = 2.0 * (b - a);
        const double h = norm2(a) - norm2(b);
        if (c.kind == CurveKind::Line) return g.x * r.px + g.y * r.py + h * r.den;
        const Poly m = g.x * r.px + g.y * r.py + (h - delta * delta) * r.den;
        const Poly ex = r.px - b.x * r.den;
        const Poly ey = r.py - b.y * r.den;
        return m * m - (4.0 * delta * delta) * (ex * ex + ey * ey);
    }
    case CurveKind::Ray: {
        const Point o = c.center - r.origin;
        return c.u.x * r.py - c.u.y * r.px - cross(c.u, o) * r.den;
    }
    case CurveKind::Empty: break;
    }
    return Poly{};
}

// Newton refinement of a common zero of two implicit functions.
template <class F1, class G1, class F2, class G2>
Point polish(Point x, F1 f1, G1 g1, F2 f2, G2 g2, double scale)
{
    for (int it = 0; it < 30; ++it) {
        const double a = f1(x), b = f2(x);
        if (std::abs(a) + std::abs(b) <= 1e-15 * scale) break;
        const Point ga = g1(x), gb = g2(x);
        const double det = cross(ga, gb);
        Point step;
        if (std::abs(det) > 1e-10 * norm(ga) * norm(gb)) {
            step = Point{(-a * gb.y + b * ga.y) / det, (a * gb.x - b * ga.x) / det};
        } else {
            // Near-tangent: alternate projections.
            const double na = norm2(ga);
            if (na == 0.0) break;
            step = (-a / na) * ga;
        }
        if (!is_finite(step)) break;
        x = x + step;
        if (norm(step) <= 1e-16 * (scale + norm(x))) break;
    }
    return x;
}

inline void dedupe(std::vector<Point>& pts, double eps)
{
    std::vector<Point> out;
    for (Point p : pts) {
        bool dup = false;
        for (Point q : out)
            if (dist(p, q) <= eps) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    pts.swap(out);
}

inline double residual_bound(const Tolerance& tol, Point x) { return tol.eval() * (1.0 + norm(x) / tol.scale); }

// Distinct conics share at most four points, so c2 passing through five spread
// points of a non-degenerate stretch of c1 means the curves coincide there.
inline bool coincident(const BisectorCurve& c1, double t_lo, double t_hi, const BisectorCurve& c2, const Tolerance& tol)
{
    const double cap = c1.kind == CurveKind::HyperbolaBranch ? 30.0 : 1e3 * tol.scale;
    const double lo = std::max(t_lo, -cap), hi = std::min(t_hi, cap);
    if (!(lo < hi) || dist(c1.at(lo), c1.at(hi)) <= 1e-6 * tol.scale) return false;
    for (int k = 0; k <= 4; ++k) {
        const Point x = c1.at(lo + (hi - lo) * k / 4.0);
        if (c2.residual(x) > residual_bound(tol, x)) return false;
    }
    return true;
}

} // namespace detail

/// Points common to c1 (restricted to parameters [t_lo, t_hi]) and c2, ordered along c1.
inline std::vector<Point> intersect_curves_in(const BisectorCurve& c1, double t_lo, double t_hi, const BisectorCurve& c2,
                                              const Tolerance& tol = {})
{
    std::vector<Point> out;
    if (c1.kind == CurveKind::Empty || c2.kind == CurveKind::Empty || !(t_lo <= t_hi)) return out;
    const detail::RationalCurve r = detail::rational_form(c1);
    Poly p = detail::substitute(r, c2);
    double lo = t_lo, hi = t_hi;
    if (r.exponential) {
        lo = std::exp(std::max(t_lo, -700.0));
        hi = std::exp(std::min(t_hi, 700.0));
    }
    if (detail::coincident(c1, t_lo, t_hi, c2, tol)) throw OverlappingCurves("curves coincide on a 1-dimensional set");
    const double m = p.max_abs_coeff();
    if (m == 0.0 || !std::isfinite(m)) return out;
    p.trim(1e-14);
    if (p.degree <= 0) return out;
    const double pad = 1e-9 * std::max(1.0, hi - lo);
    std::vector<double> roots = real_roots(p, r.exponential ? lo * (1 - 1e-9) : lo - pad,
                                           r.exponential ? hi * (1 + 1e-9) : hi + pad, 1e-8);
    for (double s : roots) {
        const double t = r.exponential ? std::log(s) : s;
        Point x = c1.at(t);
        x = detail::polish(
            x, [&](Point y) { return c1.implicit(y); }, [&](Point y) { return c1.implicit_gradient(y); },
            [&](Point y) { return c2.implicit(y); }, [&](Point y) { return c2.implicit_gradient(y); }, tol.scale);
        if (!is_finite(x)) continue;
        const double bound = detail::residual_bound(tol, x);
        if (c1.residual(x) > bound || c2.residual(x) > bound) continue;
        const double tx = c1.param_of(x);
        if (tx < t_lo - 1e-9 * (1 + std::abs(t_lo)) || tx > t_hi + 1e-9 * (1 + std::abs(t_hi))) continue;
        out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [&](Point a, Point b) { return c1.param_of(a) < c1.param_of(b); });
    detail::dedupe(out, tol.merge());
    return out;
}

/// All intersection points of two bisector curves (both non-empty). Typically at most
/// four; additional numerically distinct roots are kept rather than dropped.
inline std::vector<Point> intersect_curves(const BisectorCurve& c1, const BisectorCurve& c2, const Tolerance& tol = {})
{
    if (c1.kind == CurveKind::Empty || c2.kind == CurveKind::Empty) return {};
    const double extent = std::max({tol.scale, dist(c1.site_a.site, c1.site_b.site), dist(c2.site_a.site, c2.site_b.site),
                                    dist(c1.center, c2.center)});
    const auto [lo, hi] = c1.window(c2.center, 1e3 * extent);
    return intersect_curves_in(c1, lo, hi, c2, tol);
}

/// Points of segment s on curve c, ordered from s.a to s.b.
inline std::vector<Point> intersect_curve_segment(const BisectorCurve& c, const Segment& s, const Tolerance& tol = {})
{
    std::vector<Point> out;
    if (c.kind == CurveKind::Empty) return out;
    const double len = s.length();
    if (len == 0.0) {
        if (c.residual(s.a) <= detail::residual_bound(tol, s.a)) out.push_back(s.a);
        return out;
    }
    const detail::RationalCurve r = detail::rational_form(s);
    Poly p = detail::substitute(r, c);
    const double m = p.max_abs_coeff();
    if (m == 0.0 || !std::isfinite(m)) return out;
    p.trim(1e-14);
    std::vector<double> ts;
    if (p.degree <= 0) {
        if (std::abs(p.c[0]) > 1e-12 * m) return out;
        // Segment lies on the curve's supporting line (only possible for lines and rays).
        ts = {0.0, 1.0};
    } else {
        const double pad = tol.merge() / len;
        ts = real_roots(p, -pad, 1.0 + pad, 1e-8);
    }
    const Point d = s.b - s.a;
    for (double t : ts) {
        // 1-D Newton on the implicit function along the segment.
        for (int it = 0; it < 30; ++it) {
            const Point x = s.at(t);
            const double f = c.implicit(x);
            const double df = dot(c.implicit_gradient(x), d);
            if (df == 0.0 || !std::isfinite(f / df)) break;
            const double step = f / df;
            t -= step;
            if (std::abs(step) <= 1e-16 * (1 + std::abs(t))) break;
        }
        t = std::clamp(t, 0.0, 1.0);
        const Point x = s.at(t);
        if (c.residual(x) > detail::residual_bound(tol, x)) continue;
        out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [&](Point a, Point b) { return project_param(s.a, s.b, a) < project_param(s.a, s.b, b); });
    detail::dedupe(out, tol.merge());
    return out;
}

} // namespace geodiam
