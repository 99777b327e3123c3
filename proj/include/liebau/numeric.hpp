#pragma once

/**
 * @file numeric.hpp
 * @brief Small scalar numerics shared by the modules: composite Simpson
 * quadrature with breakpoint splitting, 1-D bracketed minimisation and
 * root bracketing.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace liebau::numeric {

/// x^p for x >= 0 and p > 0, with 0^p = 0 and underflow mapped to zero.
inline double spow(double x, double p) {
    if (x <= 0.0) return 0.0;
    if (x < 1e-300) {
        double v = std::exp(p * std::log(x));
        return std::isfinite(v) ? v : 0.0;
    }
    return std::pow(x, p);
}

/// Composite Simpson rule on [lo, hi] with `panels` intervals (rounded up to even).
template <class F>
double simpson(F&& f, double lo, double hi, int panels) {
    if (hi <= lo) return 0.0;
    if (panels < 2) panels = 2;
    if (panels % 2) ++panels;
    const double h = (hi - lo) / panels;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) {
        sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    }
    return sum * h / 3.0;
}

/// Sorted, de-duplicated interior cut points of [lo, hi].
inline std::vector<double> normalize_cuts(std::span<const double> cuts, double lo, double hi) {
    std::vector<double> out;
    out.reserve(cuts.size() + 2);
    out.push_back(lo);
    for (double c : cuts)
        if (c > lo && c < hi) out.push_back(c);
    out.push_back(hi);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/**
 * Integral over [lo, hi] split at `cuts`. The total panel budget is spread
 * over sub-intervals proportionally to their length, each getting at least
 * two panels, so the integrand only needs to be smooth between cuts.
 */
template <class F>
double integrate_split(F&& f, double lo, double hi, std::span<const double> cuts, int panels) {
    const auto nodes = normalize_cuts(cuts, lo, hi);
    const double len = hi - lo;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i], b = nodes[i + 1];
        int p = static_cast<int>(std::ceil(panels * (b - a) / len));
        total += simpson(f, a, b, std::max(p, 2));
    }
    return total;
}

/**
 * Brent's minimiser (parabolic interpolation with golden-section fallback)
 * on [lo, hi]. Returns (argmin, fmin).
 */
template <class F>
std::pair<double, double> brent_minimize(F&& f, double lo, double hi, double tol = 1e-12,
                                         int max_iter = 200) {
    constexpr double golden = 0.3819660112501051;
    double a = lo, b = hi;
    double x = a + golden * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        const double tol1 = tol + 1e-15 * std::abs(x);
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;
        bool parabolic = false;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (m >= x) ? tol1 : -tol1;
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x >= m) ? a - x : b - x;
            d = golden * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            (u >= x ? a : b) = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            (u < x ? a : b) = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx};
}

/// Golden-section search for a minimum on [lo, hi]. Returns (argmin, fmin).
template <class F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi, double tol = 1e-13) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (b - a <= tol * (1.0 + std::abs(a))) break;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

/// Bisection root of f on [lo, hi] given a sign change; exact to `tol` in x.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol = 1e-15) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200 && hi - lo > tol * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
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

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    v.back() = hi;
    return v;
}

/// n log-spaced points from lo to hi inclusive (lo, hi > 0).
inline std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < n; ++i) v[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

}  // namespace liebau::numeric
