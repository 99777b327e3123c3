#pragma once

/**
 * @file funcspec.hpp
 * @brief Continuous T-periodic scalar functions used as forcing and
 * coefficient data: e(t), p(t), r(t), s(t), g0(t), g1(t).
 *
 * A PeriodicFunction is an immutable tree of bodies:
 *   - Constant          v
 *   - TrigPoly          offset + sum_k A_k cos(2 pi n_k t / T + phi_k),  n_k >= 1
 *   - PolyOnPeriod      c0 + c1 t + ... + cn t^n on [0, T), wrapped
 *   - PiecewiseLinear   breakpoints (t_i, v_i), t_0 = 0, t_last = T
 *   - Sum               sum_j w_j * body_j
 *
 * PolyOnPeriod and PiecewiseLinear must close up exactly (value(0) == value(T))
 * so that the periodic extension is continuous.
 *
 * Sums built only from constants and piecewise-linear parts are collapsed to
 * a single piecewise-linear form for the exact operations (extrema, mean,
 * positive part).
 */

#include "liebau/error.hpp"
#include "liebau/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace liebau {

struct Constant {
    double value = 0.0;
};

struct Harmonic {
    double amplitude = 0.0;
    int harmonic = 1;
    double phase = 0.0;
};

struct TrigPoly {
    double offset = 0.0;
    std::vector<Harmonic> terms;
};

struct PolyOnPeriod {
    std::vector<double> coefficients;  // ascending powers of t
};

struct Breakpoint {
    double t = 0.0;
    double v = 0.0;
};

struct PiecewiseLinear {
    std::vector<Breakpoint> points;
};

struct Body;

struct WeightedBody {
    double weight = 1.0;
    std::shared_ptr<const Body> body;
};

struct Sum {
    std::vector<WeightedBody> parts;
};

struct Body {
    std::variant<Constant, TrigPoly, PolyOnPeriod, PiecewiseLinear, Sum> node;
};

/// Global extrema over one period.
struct Extrema {
    double min = 0.0;
    double max = 0.0;
    double argmin = 0.0;
    double argmax = 0.0;
    bool exact = false;
    double refinement_tol = 0.0;  // tolerance in t of the refinement (0 when exact)
};

struct ExtremaOptions {
    int scan_points = 8192;
    double refinement_tol = 1e-12;
    int refine_candidates = 4;
};

namespace detail {

inline double eval_body(const Body& b, double t, double period);

inline double horner(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
}

inline double eval_pl(const PiecewiseLinear& pl, double t) {
    const auto& p = pl.points;
    auto it = std::upper_bound(p.begin(), p.end(), t,
                               [](double x, const Breakpoint& b) { return x < b.t; });
    if (it == p.begin()) return p.front().v;
    if (it == p.end()) return p.back().v;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (t == lo.t) return lo.v;
    const double w = (t - lo.t) / (hi.t - lo.t);
    return lo.v + w * (hi.v - lo.v);
}

// t is already wrapped into [0, period).
inline double eval_body(const Body& b, double t, double period) {
    return std::visit(
        [&](const auto& n) -> double {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Constant>) {
                return n.value;
            } else if constexpr (std::is_same_v<N, TrigPoly>) {
                double v = n.offset;
                const double w = 2.0 * std::numbers::pi / period;
                for (const auto& h : n.terms) v += h.amplitude * std::cos(w * h.harmonic * t + h.phase);
                return v;
            } else if constexpr (std::is_same_v<N, PolyOnPeriod>) {
                return horner(n.coefficients, t);
            } else if constexpr (std::is_same_v<N, PiecewiseLinear>) {
                return eval_pl(n, t);
            } else {
                double v = 0.0;
                for (const auto& part : n.parts) v += part.weight * eval_body(*part.body, t, period);
                return v;
            }
        },
        b.node);
}

inline void collect_breakpoints(const Body& b, std::vector<double>& out) {
    if (const auto* pl = std::get_if<PiecewiseLinear>(&b.node)) {
        for (const auto& p : pl->points) out.push_back(p.t);
    } else if (const auto* s = std::get_if<Sum>(&b.node)) {
        for (const auto& part : s->parts) collect_breakpoints(*part.body, out);
    }
}

// True when the body is built from Constant and PiecewiseLinear nodes only.
inline bool is_piecewise_linear_family(const Body& b) {
    return std::visit(
        [](const auto& n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Constant> || std::is_same_v<N, PiecewiseLinear>) {
                return true;
            } else if constexpr (std::is_same_v<N, Sum>) {
                return std::all_of(n.parts.begin(), n.parts.end(),
                                   [](const WeightedBody& p) { return is_piecewise_linear_family(*p.body); });
            } else {
                return false;
            }
        },
        b.node);
}

inline double mean_body(const Body& b, double period) {
    return std::visit(
        [&](const auto& n) -> double {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Constant>) {
                return n.value;
            } else if constexpr (std::is_same_v<N, TrigPoly>) {
                return n.offset;
            } else if constexpr (std::is_same_v<N, PolyOnPeriod>) {
                // (1/T) * sum c_k T^{k+1}/(k+1)
                double v = 0.0, tk = 1.0;
                for (std::size_t k = 0; k < n.coefficients.size(); ++k) {
                    v += n.coefficients[k] * tk / static_cast<double>(k + 1);
                    tk *= period;
                }
                return v;
            } else if constexpr (std::is_same_v<N, PiecewiseLinear>) {
                double area = 0.0;
                for (std::size_t i = 0; i + 1 < n.points.size(); ++i) {
                    const auto& p = n.points[i];
                    const auto& q = n.points[i + 1];
                    area += 0.5 * (p.v + q.v) * (q.t - p.t);
                }
                return area / period;
            } else {
                double v = 0.0;
                for (const auto& part : n.parts) v += part.weight * mean_body(*part.body, period);
                return v;
            }
        },
        b.node);
}

}  // namespace detail

class PeriodicFunction {
public:
    PeriodicFunction() : PeriodicFunction(Constant{0.0}, 1.0) {}

    static PeriodicFunction constant(double value, double period) { return {Constant{value}, period}; }

    static PeriodicFunction trig(double offset, std::vector<Harmonic> terms, double period) {
        for (const auto& h : terms) {
            if (h.harmonic < 1) fail(ErrorKind::InvalidArgument, "trig harmonic must be >= 1");
            if (!std::isfinite(h.amplitude) || !std::isfinite(h.phase))
                fail(ErrorKind::InvalidArgument, "trig term must be finite");
        }
        return {TrigPoly{offset, std::move(terms)}, period};
    }

    static PeriodicFunction poly(std::vector<double> coefficients, double period) {
        if (coefficients.empty()) fail(ErrorKind::InvalidArgument, "polynomial needs coefficients");
        check_period(period);
        const double v0 = detail::horner(coefficients, 0.0);
        const double vT = detail::horner(coefficients, period);
        if (v0 != vT)
            fail(ErrorKind::InvalidArgument,
                 "polynomial must satisfy p(0) == p(T) exactly for a continuous periodic extension");
        return {PolyOnPeriod{std::move(coefficients)}, period};
    }

    static PeriodicFunction piecewise_linear(std::vector<Breakpoint> points, double period) {
        check_period(period);
        if (points.size() < 2) fail(ErrorKind::InvalidArgument, "piecewise-linear needs at least two points");
        if (points.front().t != 0.0) fail(ErrorKind::InvalidArgument, "first breakpoint must be at t = 0");
        if (points.back().t != period) fail(ErrorKind::InvalidArgument, "last breakpoint must be at t = T");
        for (std::size_t i = 0; i + 1 < points.size(); ++i)
            if (!(points[i].t < points[i + 1].t))
                fail(ErrorKind::InvalidArgument, "breakpoints must be strictly increasing");
        for (const auto& p : points)
            if (!std::isfinite(p.v)) fail(ErrorKind::InvalidArgument, "breakpoint value must be finite");
        if (points.front().v != points.back().v)
            fail(ErrorKind::InvalidArgument, "piecewise-linear must satisfy v(0) == v(T) exactly");
        return {PiecewiseLinear{std::move(points)}, period};
    }

    /// Weighted sum of functions sharing one period.
    static PeriodicFunction sum(const std::vector<std::pair<double, PeriodicFunction>>& parts) {
        if (parts.empty()) fail(ErrorKind::InvalidArgument, "sum needs at least one part");
        const double period = parts.front().second.period();
        Sum s;
        for (const auto& [w, f] : parts) {
            if (f.period() != period) fail(ErrorKind::InvalidArgument, "sum parts must share the period");
            s.parts.push_back({w, f.root_});
        }
        return {std::move(s), period};
    }

    PeriodicFunction scaled(double factor) const { return sum({{factor, *this}}); }

    friend PeriodicFunction operator+(const PeriodicFunction& a, const PeriodicFunction& b) {
        return sum({{1.0, a}, {1.0, b}});
    }

    double period() const noexcept { return period_; }
    const Body& body() const noexcept { return *root_; }

    double wrap(double t) const noexcept {
        double tw = std::fmod(t, period_);
        if (tw < 0.0) tw += period_;
        if (tw >= period_) tw = 0.0;
        return tw;
    }

    double operator()(double t) const { return detail::eval_body(*root_, wrap(t), period_); }

    /// Kinks of the function inside (0, T), sorted and unique.
    std::vector<double> breakpoints() const {
        std::vector<double> out;
        detail::collect_breakpoints(*root_, out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        std::erase_if(out, [&](double t) { return t <= 0.0 || t >= period_; });
        return out;
    }

    std::optional<double> constant_value() const {
        if (const auto* c = std::get_if<Constant>(&root_->node)) return c->value;
        if (const auto* s = std::get_if<Sum>(&root_->node)) {
            double v = 0.0;
            for (const auto& p : s->parts) {
                const auto* c = std::get_if<Constant>(&p.body->node);
                if (!c) return std::nullopt;
                v += p.weight * c->value;
            }
            return v;
        }
        return std::nullopt;
    }

    /// Exact piecewise-linear form if the function is built from constants and
    /// piecewise-linear parts only.
    std::optional<PiecewiseLinear> as_piecewise_linear() const {
        if (!detail::is_piecewise_linear_family(*root_)) return std::nullopt;
        if (const auto* pl = std::get_if<PiecewiseLinear>(&root_->node)) return *pl;
        std::vector<double> ts{0.0, period_};
        detail::collect_breakpoints(*root_, ts);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        PiecewiseLinear out;
        out.points.reserve(ts.size());
        for (double t : ts) out.points.push_back({t, detail::eval_body(*root_, t, period_)});
        // the endpoint evaluation at T goes through the same bodies, so it closes up
        out.points.back().v = out.points.front().v;
        return out;
    }

private:
    template <class Node>
    PeriodicFunction(Node node, double period)
        : root_(std::make_shared<const Body>(Body{std::move(node)})), period_(period) {
        check_period(period);
    }

    static void check_period(double period) {
        if (!(period > 0.0) || !std::isfinite(period)) fail(ErrorKind::BadPeriod, "period must be positive");
    }

    std::shared_ptr<const Body> root_;
    double period_;
};

inline double eval(const PeriodicFunction& f, double t) { return f(t); }

inline double mean(const PeriodicFunction& f) { return detail::mean_body(f.body(), f.period()); }

namespace detail {

inline Extrema extrema_pl(const PiecewiseLinear& pl) {
    Extrema e;
    e.exact = true;
    e.min = e.max = pl.points.front().v;
    for (const auto& p : pl.points) {
        if (p.v < e.min) { e.min = p.v; e.argmin = p.t; }
        if (p.v > e.max) { e.max = p.v; e.argmax = p.t; }
    }
    return e;
}

// Minimum of sign*f over one period: uniform scan plus breakpoints, then Brent
// refinement around the best local winners.
inline std::pair<double, double> scan_refine_min(const PeriodicFunction& f, double sign,
                                                 const ExtremaOptions& opt) {
    const double T = f.period();
    const int n = std::max(opt.scan_points, 8);
    const double h = T / n;
    auto g = [&](double t) { return sign * f(t); };

    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[i] = g(i * h);

    struct Cand { double t; double v; };
    std::vector<Cand> locals;
    for (int i = 0; i < n; ++i) {
        const double prev = vals[(i + n - 1) % n], next = vals[(i + 1) % n];
        if (vals[i] <= prev && vals[i] <= next) locals.push_back({i * h, vals[i]});
    }
    std::sort(locals.begin(), locals.end(), [](const Cand& a, const Cand& b) { return a.v < b.v; });

    Cand best{0.0, vals[0]};
    for (int i = 0; i < n; ++i)
        if (vals[i] < best.v) best = {i * h, vals[i]};
    for (double t : f.breakpoints()) {
        const double v = g(t);
        if (v < best.v) best = {t, v};
    }

    const int nref = std::min<int>(opt.refine_candidates, static_cast<int>(locals.size()));
    for (int k = 0; k < nref; ++k) {
        const double c = locals[k].t;
        auto [tm, vm] = numeric::brent_minimize(g, c - h, c + h, opt.refinement_tol);
        if (vm < best.v) best = {f.wrap(tm), vm};
    }
    return {best.t, best.v};
}

}  // namespace detail

/// Global min/max over one period: exact for constant and piecewise-linear
/// forms; scan plus parabolic (Brent) refinement otherwise.
inline Extrema extrema(const PeriodicFunction& f, const ExtremaOptions& opt = {}) {
    if (auto c = f.constant_value()) return Extrema{*c, *c, 0.0, 0.0, true, 0.0};
    if (auto pl = f.as_piecewise_linear()) return detail::extrema_pl(*pl);
    Extrema e;
    auto [tmin, vmin] = detail::scan_refine_min(f, 1.0, opt);
    auto [tmax, vmax] = detail::scan_refine_min(f, -1.0, opt);
    e.min = vmin;
    e.argmin = tmin;
    e.max = -vmax;
    e.argmax = tmax;
    e.exact = false;
    e.refinement_tol = opt.refinement_tol;
    return e;
}

/**
 * max(f(t), 0) with its kinks exposed as breakpoints. For piecewise-linear
 * inputs the zero crossings are inserted exactly (linear interpolation on the
 * crossing segment), so integrals of the result are exact.
 */
class PositivePart {
public:
    explicit PositivePart(PeriodicFunction f, int scan_points = 8192) : f_(std::move(f)) {
        if (auto pl = f_.as_piecewise_linear()) {
            PiecewiseLinear out;
            const auto& p = pl->points;
            for (std::size_t i = 0; i < p.size(); ++i) {
                out.points.push_back({p[i].t, std::max(p[i].v, 0.0)});
                if (i + 1 < p.size()) {
                    const auto& a = p[i];
                    const auto& b = p[i + 1];
                    if ((a.v < 0.0 && b.v > 0.0) || (a.v > 0.0 && b.v < 0.0)) {
                        const double tc = a.t + (b.t - a.t) * (-a.v) / (b.v - a.v);
                        if (tc > a.t && tc < b.t) {
                            out.points.push_back({tc, 0.0});
                            crossings_.push_back(tc);
                        }
                    }
                }
            }
            exact_ = PeriodicFunction::piecewise_linear(std::move(out.points), f_.period());
            cuts_ = exact_->breakpoints();
            return;
        }
        const double T = f_.period();
        const int n = std::max(scan_points, 8);
        const double h = T / n;
        double prev = f_(0.0);
        for (int i = 1; i <= n; ++i) {
            const double t = (i == n) ? T : i * h;
            const double cur = f_(t);
            if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
                crossings_.push_back(numeric::bisect_root([&](double s) { return f_(s); }, t - h, t));
            } else if (cur == 0.0 && i < n) {
                crossings_.push_back(t);
            }
            prev = cur;
        }
        cuts_ = f_.breakpoints();
        cuts_.insert(cuts_.end(), crossings_.begin(), crossings_.end());
        std::sort(cuts_.begin(), cuts_.end());
        cuts_.erase(std::unique(cuts_.begin(), cuts_.end()), cuts_.end());
    }

    double operator()(double t) const { return exact_ ? (*exact_)(t) : std::max(f_(t), 0.0); }
    double period() const noexcept { return f_.period(); }
    const std::vector<double>& breakpoints() const noexcept { return cuts_; }
    const std::vector<double>& crossings() const noexcept { return crossings_; }
    bool is_exact() const noexcept { return exact_.has_value(); }
    const std::optional<PeriodicFunction>& exact_form() const noexcept { return exact_; }

    /// (1/T) * integral of the positive part over one period.
    double mean(int panels = 8192) const {
        if (exact_) return liebau::mean(*exact_);
        const double T = f_.period();
        auto g = [&](double t) { return std::max(f_(t), 0.0); };
        return numeric::integrate_split(g, 0.0, T, cuts_, panels) / T;
    }

private:
    PeriodicFunction f_;
    std::optional<PeriodicFunction> exact_;
    std::vector<double> crossings_;
    std::vector<double> cuts_;
};

inline PositivePart positive_part(const PeriodicFunction& f) { return PositivePart(f); }

}  // namespace liebau
