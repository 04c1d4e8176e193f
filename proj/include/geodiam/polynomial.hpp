#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace geodiam {

/// Dense real polynomial of degree <= 4, coefficients in increasing powers.
struct Poly {
    std::array<double, 5> c{};
    int degree = -1;

    static Poly constant(double v)
    {
        Poly p;
        p.c[0] = v;
        p.degree = 0;
        return p;
    }
    static Poly linear(double c0, double c1)
    {
        Poly p;
        p.c[0] = c0;
        p.c[1] = c1;
        p.degree = 1;
        return p;
    }

    double operator()(double x) const
    {
        double r = 0.0;
        for (int i = degree; i >= 0; --i) r = r * x + c[i];
        return r;
    }

    /// Sum of |c_i| |x|^i; the magnitude against which cancellation is judged.
    double magnitude(double x) const
    {
        double r = 0.0;
        const double ax = std::abs(x);
        for (int i = degree; i >= 0; --i) r = r * ax + std::abs(c[i]);
        return r;
    }

    Poly derivative() const
    {
        Poly d;
        d.degree = std::max(degree - 1, -1);
        for (int i = 1; i <= degree; ++i) d.c[i - 1] = i * c[i];
        return d;
    }

    double max_abs_coeff() const
    {
        double m = 0.0;
        for (int i = 0; i <= degree; ++i) m = std::max(m, std::abs(c[i]));
        return m;
    }

    /// Drops leading coefficients that are negligible relative to the largest one.
    void trim(double rel = 1e-13)
    {
        const double m = max_abs_coeff();
        while (degree >= 0 && std::abs(c[degree]) <= rel * m) c[degree--] = 0.0;
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        Poly r;
        r.degree = std::max(a.degree, b.degree);
        for (int i = 0; i <= r.degree; ++i) r.c[i] = (i <= a.degree ? a.c[i] : 0.0) + (i <= b.degree ? b.c[i] : 0.0);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }
    friend Poly operator*(double s, const Poly& a)
    {
        Poly r = a;
        for (int i = 0; i <= r.degree; ++i) r.c[i] *= s;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly r;
        if (a.degree < 0 || b.degree < 0) return r;
        r.degree = a.degree + b.degree;
        for (int i = 0; i <= a.degree; ++i)
            for (int j = 0; j <= b.degree; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
};

namespace detail {

inline double bisect_root(const Poly& p, double lo, double hi)
{
    double flo = p(lo);
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Real roots of p in [lo, hi], ascending. Isolates roots between the critical
/// points of p (found recursively), so double roots at tangencies are reported
/// when |p| at the critical point is within `near_zero` of cancellation noise.
inline std::vector<double> real_roots(Poly p, double lo, double hi, double near_zero = 1e-9)
{
    std::vector<double> roots;
    p.trim();
    if (p.degree <= 0 || !(lo < hi)) return roots;
    if (p.degree == 1) {
        const double r = -p.c[0] / p.c[1];
        if (r >= lo && r <= hi) roots.push_back(r);
        return roots;
    }
    std::vector<double> knots{lo};
    for (double r : real_roots(p.derivative(), lo, hi, near_zero)) knots.push_back(r);
    knots.push_back(hi);

    auto is_small = [&](double x) { return std::abs(p(x)) <= near_zero * p.magnitude(x); };
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double a = knots[k];
        const double b = knots[k + 1];
        const double fa = p(a);
        const double fb = p(b);
        if (fa == 0.0) {
            roots.push_back(a);
            continue;
        }
        if ((fa < 0) != (fb < 0) && fb != 0.0) roots.push_back(detail::bisect_root(p, a, b));
    }
    if (p(hi) == 0.0) roots.push_back(hi);
    // Tangential contacts: interior critical points where p nearly vanishes.
    for (std::size_t k = 1; k + 1 < knots.size(); ++k)
        if (is_small(knots[k])) roots.push_back(knots[k]);
    std::sort(roots.begin(), roots.end());
    // A double root shows up both as a near-zero critical point and as a noisy sign change.
    roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return b - a <= 1e-7 * (1.0 + std::abs(b)); }), roots.end());
    return roots;
}

} // namespace geodiam
