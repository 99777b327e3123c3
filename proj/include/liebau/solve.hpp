#pragma once

/**
 * @file solve.hpp
 * @brief Periodic solutions of x'' + a x' = F(t, x) on [0, T].
 *
 * Stage 1: damped Newton on second-order central differences over a cyclic
 * grid (cyclic tridiagonal Jacobian, bordered Thomas elimination).
 * Stage 2 (smooth data only): Newton on a Chebyshev-Lobatto collocation of
 * the same problem with periodicity rows x(0) = x(T), x'(0) = x'(T). The grid
 * trace is then the collocation interpolant sampled at the grid nodes.
 */

#include "liebau/certify.hpp"
#include "liebau/error.hpp"
#include "liebau/funcspec.hpp"
#include "liebau/greens.hpp"
#include "liebau/problem.hpp"
#include "liebau/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace liebau {

enum class Polish { Auto, Always, Never };

/// Truncation band for the Picard fallback.
struct Band {
    double m = 0.0;
    double R1 = 0.0;
    double R2 = 0.0;
};

struct SolveOptions {
    int N = 512;
    double tol = 1e-12;
    int max_iter = 50;
    std::optional<double> initial_guess;               // constant start
    std::optional<std::vector<double>> initial_values; // N values on the grid
    std::optional<std::pair<double, double>> bracket;  // start at sqrt(lo * hi)
    Polish polish = Polish::Auto;
    int cheb_degree = 32;
    int refine_factor = 4;
    std::optional<Band> band;  // enables the Picard fallback
    int picard_steps = 20;
};

struct GridSolution {
    double T = 0.0;
    std::vector<double> nodes;
    std::vector<double> values;
    double sup_residual = 0.0;
    double bc_mismatch = 0.0;
    int iterations = 0;
    bool converged = false;
    bool polished = false;
    std::string quantity = "x";  // "u" after x_to_u
    std::vector<double> cheb_coefficients;  // interpolant of x - cheb_shift on [0, T] when polished
    double cheb_shift = 0.0;

    /// Collocation interpolant (or its derivatives) at t in [0, T]; polished solutions only.
    double interpolant(double t, int d = 0) const {
        if (cheb_coefficients.empty()) fail(ErrorKind::InvalidArgument, "solution carries no interpolant");
        const spectral::Chebyshev ch(static_cast<int>(cheb_coefficients.size()) - 1, T);
        auto c = cheb_coefficients;
        for (int j = 0; j < d; ++j) c = ch.derivative_coefficients(c);
        return ch.evaluate(c, t) + (d == 0 ? cheb_shift : 0.0);
    }

    std::size_t size() const noexcept { return values.size(); }
    double min() const { return *std::min_element(values.begin(), values.end()); }
    double max() const { return *std::max_element(values.begin(), values.end()); }
    double mean() const { return spectral::periodic_integral(values, T) / T; }
};

/// Right-hand side F(t, x) of x'' + a x' = F together with dF/dx.
struct PeriodicRhs {
    std::function<double(double, double)> F;
    std::function<double(double, double)> dF;
    bool smooth = true;          // allows the collocation stage under Polish::Auto
    bool needs_positive = true;  // iterates must stay > 0
};

inline PeriodicRhs make_rhs(const GeneralProblem& gp) {
    PeriodicRhs out;
    out.F = [gp](double t, double x) { return rhs(gp, t, x); };
    out.dF = [gp](double t, double x) { return rhs_dx(gp, t, x); };
    out.smooth = gp.breakpoints().empty();
    return out;
}

inline std::vector<double> uniform_nodes(int N, double T) {
    std::vector<double> t(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) t[j] = T * j / N;
    return t;
}

namespace detail {

/**
 * Solves the cyclic tridiagonal system
 *   lo_j y_{j-1} + di_j y_j + up_j y_{j+1} = b_j  (indices mod n)
 * by a rank-one corner correction of the plain tridiagonal solve.
 */
inline std::vector<double> solve_cyclic(std::vector<double> lo, std::vector<double> di, std::vector<double> up,
                                        std::vector<double> b) {
    const std::size_t n = di.size();
    const double alpha = up[n - 1];  // A(n-1, 0)
    const double beta = lo[0];       // A(0, n-1)
    const double gamma = -di[0];
    di[0] -= gamma;
    di[n - 1] -= alpha * beta / gamma;
    auto thomas = [&](std::vector<double> rhs) {
        std::vector<double> c(n), d(n);
        c[0] = up[0] / di[0];
        d[0] = rhs[0] / di[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double den = di[i] - lo[i] * c[i - 1];
            c[i] = up[i] / den;
            d[i] = (rhs[i] - lo[i] * d[i - 1]) / den;
        }
        for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
        return d;
    };
    const auto x = thomas(std::move(b));
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    const auto z = thomas(std::move(u));
    const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
    return out;
}

inline double sup_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

inline std::vector<double> fd_residual(const PeriodicRhs& f, double a, double T, const std::vector<double>& x) {
    const int N = static_cast<int>(x.size());
    const double dt = T / N;
    std::vector<double> r(x.size());
    for (int j = 0; j < N; ++j) {
        const double xm = x[(j + N - 1) % N], x0 = x[j], xp = x[(j + 1) % N];
        r[j] = (xp - 2.0 * x0 + xm) / (dt * dt) + a * (xp - xm) / (2.0 * dt) - f.F(T * j / N, x0);
    }
    return r;
}

inline bool all_positive(const std::vector<double>& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
}

struct NewtonOutcome {
    std::vector<double> x;
    int iterations = 0;
    bool converged = false;
    bool stalled = false;        // damping floor reached
    bool lost_positivity = false;
};

inline NewtonOutcome fd_newton(const PeriodicRhs& f, double a, double T, std::vector<double> x,
                               const SolveOptions& opt) {
    const int N = static_cast<int>(x.size());
    const double dt = T / N;
    const double off_lo = 1.0 / (dt * dt) - a / (2.0 * dt);
    const double off_up = 1.0 / (dt * dt) + a / (2.0 * dt);
    NewtonOutcome out;
    auto r = fd_residual(f, a, T, x);
    double rn = sup_norm(r);
    for (int it = 0; it < opt.max_iter; ++it) {
        std::vector<double> lo(N, off_lo), di(N), up(N, off_up), b(N);
        for (int j = 0; j < N; ++j) {
            di[j] = -2.0 / (dt * dt) - f.dF(T * j / N, x[j]);
            b[j] = -r[j];
        }
        const auto dx = solve_cyclic(lo, di, up, b);
        const double scale = std::max(1.0, sup_norm(x));
        const double step = sup_norm(dx);
        double lambda = 1.0;
        bool accepted = false;
        std::vector<double> trial(x.size());
        for (; lambda >= 0x1p-20; lambda *= 0.5) {
            for (int j = 0; j < N; ++j) trial[j] = x[j] + lambda * dx[j];
            if (f.needs_positive && !all_positive(trial)) {
                out.lost_positivity = true;
                continue;
            }
            auto rt = fd_residual(f, a, T, trial);
            const double rtn = sup_norm(rt);
            if (rtn <= rn || lambda * step <= opt.tol * scale) {
                x.swap(trial);
                r = std::move(rt);
                rn = rtn;
                accepted = true;
                break;
            }
        }
        out.iterations = it + 1;
        if (!accepted) {
            out.stalled = true;
            break;
        }
        out.lost_positivity = false;
        if (lambda == 1.0 && step <= opt.tol * scale) {
            out.converged = true;
            break;
        }
    }
    out.x = std::move(x);
    return out;
}

struct ChebOutcome {
    std::vector<double> values;  // at the Chebyshev nodes
    double shift = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Newton on the collocation system in the mean-shifted unknown y = x - shift,
// which keeps the differentiation matrices away from the large constant part.
inline ChebOutcome cheb_newton(const PeriodicRhs& f, double a, const spectral::Chebyshev& ch,
                               std::vector<double> x, const SolveOptions& opt) {
    const int n = ch.degree();
    const auto& t = ch.nodes();
    double shift = 0.0;
    for (double v : x) shift += v;
    shift /= static_cast<double>(x.size());
    Eigen::VectorXd y(n + 1);
    for (int k = 0; k <= n; ++k) y[k] = x[k] - shift;
    const Eigen::MatrixXd L = ch.D2() + a * ch.D1();
    ChebOutcome out;
    for (int it = 0; it < opt.max_iter; ++it) {
        Eigen::VectorXd res = L * y;
        Eigen::MatrixXd J = L;
        for (int k = 1; k < n; ++k) {
            const double xk = shift + y[k];
            if (f.needs_positive && !(xk > 0.0)) return out;
            res[k] -= f.F(t[k], xk);
            J(k, k) -= f.dF(t[k], xk);
        }
        res[0] = y[0] - y[n];
        J.row(0).setZero();
        J(0, 0) = 1.0;
        J(0, n) = -1.0;
        res[n] = (ch.D1().row(0) - ch.D1().row(n)).dot(y);
        J.row(n) = ch.D1().row(0) - ch.D1().row(n);
        const Eigen::VectorXd dy = J.partialPivLu().solve(-res);
        y += dy;
        out.iterations = it + 1;
        const double scale = std::max(1.0, std::abs(shift) + y.cwiseAbs().maxCoeff());
        if (dy.cwiseAbs().maxCoeff() <= opt.tol * scale) {
            out.converged = true;
            break;
        }
    }
    out.shift = shift;
    out.values.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out.values[k] = shift + y[k];
    if (f.needs_positive && !all_positive(out.values)) out.converged = false;
    return out;
}

inline double default_guess(const GeneralProblem& gp, const SolveOptions& opt) {
    if (opt.initial_guess) return *opt.initial_guess;
    if (gp.origin()) {
        const auto& lp = *gp.origin();
        const double eb = mean(lp.e());
        if (eb > 0.0) return std::max(std::pow(eb / lp.c(), 1.0 / lp.mu()), std::numeric_limits<double>::min());
    }
    if (opt.bracket) return std::sqrt(opt.bracket->first * opt.bracket->second);
    fail(ErrorKind::InvalidArgument, "no initial guess: supply a constant, grid values or a bracket");
}

}  // namespace detail

/**
 * FD residual of x'' + a x' = F at the nodes with cyclic stencils.
 * Returns (sup residual, bc mismatch); the cyclic grid has no separate x(T),
 * so the mismatch is zero.
 */
inline std::pair<double, double> residual(const PeriodicRhs& f, double a, const GridSolution& x) {
    if (f.needs_positive && !detail::all_positive(x.values))
        fail(ErrorKind::NegativeState, "residual needs a positive trace");
    return {detail::sup_norm(detail::fd_residual(f, a, x.T, x.values)), 0.0};
}

inline std::pair<double, double> residual(const GeneralProblem& gp, const GridSolution& x) {
    return residual(make_rhs(gp), gp.a(), x);
}

/// ODE residual on a grid refine_factor times finer: from the collocation
/// interpolant when polished, else from the trigonometric interpolant.
inline double refined_residual(const PeriodicRhs& f, double a, const GridSolution& x, int factor = 4) {
    const int M = static_cast<int>(x.size()) * factor;
    double sup = 0.0;
    if (x.polished && !x.cheb_coefficients.empty()) {
        const spectral::Chebyshev ch(static_cast<int>(x.cheb_coefficients.size()) - 1, x.T);
        const auto d1 = ch.derivative_coefficients(x.cheb_coefficients);
        const auto d2 = ch.derivative_coefficients(d1);
        for (int j = 0; j < M; ++j) {
            const double t = x.T * j / M;
            const double v = x.cheb_shift + ch.evaluate(x.cheb_coefficients, t);
            sup = std::max(sup, std::abs(ch.evaluate(d2, t) + a * ch.evaluate(d1, t) - f.F(t, v)));
        }
        return sup;
    }
    const spectral::TrigInterpolant ti(x.values, x.T);
    const auto v = ti.resample(M), v1 = ti.resample(M, 1), v2 = ti.resample(M, 2);
    for (int j = 0; j < M; ++j) {
        const double t = x.T * j / M;
        if (f.needs_positive && !(v[j] > 0.0)) return std::numeric_limits<double>::infinity();
        sup = std::max(sup, std::abs(v2[j] + a * v1[j] - f.F(t, v[j])));
    }
    return sup;
}

/// Generic periodic solve of x'' + a x' = F(t, x).
inline GridSolution solve_periodic(const PeriodicRhs& f, double a, double T, const std::vector<double>& x0,
                                   const SolveOptions& opt) {
    const int N = opt.N;
    if (N < 8) fail(ErrorKind::InvalidArgument, "grid needs at least 8 nodes");
    if (static_cast<int>(x0.size()) != N) fail(ErrorKind::InvalidArgument, "initial values must have N entries");
    if (f.needs_positive && !detail::all_positive(x0))
        fail(ErrorKind::LeftPositiveCone, "initial guess must be positive");

    GridSolution sol;
    sol.T = T;
    sol.nodes = uniform_nodes(N, T);
    auto nw = detail::fd_newton(f, a, T, x0, opt);
    sol.iterations = nw.iterations;
    if (!nw.converged) {
        if (nw.lost_positivity) fail(ErrorKind::LeftPositiveCone, "Newton iterate left the positive cone");
        fail(ErrorKind::NoConvergence, "Newton did not converge within the iteration budget");
    }
    sol.values = std::move(nw.x);
    sol.converged = true;

    const bool polish = opt.polish == Polish::Always || (opt.polish == Polish::Auto && f.smooth);
    if (polish) {
        const spectral::Chebyshev ch(opt.cheb_degree, T);
        const spectral::TrigInterpolant ti(sol.values, T);
        std::vector<double> start;
        for (double t : ch.nodes()) start.push_back(ti(t));
        auto cn = detail::cheb_newton(f, a, ch, start, opt);
        sol.iterations += cn.iterations;
        if (cn.converged) {
            sol.polished = true;
            sol.cheb_shift = cn.shift;
            std::vector<double> y(cn.values);
            for (double& v : y) v -= cn.shift;
            sol.cheb_coefficients = ch.coefficients(y);
            for (int j = 0; j < N; ++j) sol.values[j] = cn.shift + ch.evaluate(sol.cheb_coefficients, sol.nodes[j]);
            const auto d1 = ch.derivative_coefficients(sol.cheb_coefficients);
            sol.bc_mismatch = std::max(std::abs(cn.values.front() - cn.values.back()),
                                       std::abs(ch.evaluate(d1, 0.0) - ch.evaluate(d1, T)));
        }
    }
    sol.sup_residual = refined_residual(f, a, sol, opt.refine_factor);
    return sol;
}

struct PicardTrace {
    std::vector<std::vector<double>> iterates;  // iterates[0] is the start
    std::vector<double> sup_differences;        // |x_{k+1} - x_k|_inf
    double final_difference = 0.0;
};

/**
 * x_{k+1}(t_i) = int G_m(t_i, s) f~_m(s, x_k(s)) ds with f~_m the truncated
 * nonlinearity of the band [c_m R1, R2]. The integral runs over the grid from
 * s = t_i to t_i + T with composite Simpson, so the kernel kink sits at the ends.
 */
inline PicardTrace picard_iterate(const GeneralProblem& gp, double m, double R1, double R2,
                                  const std::vector<double>& x0, int n_steps) {
    if (!(R1 > 0.0) || !(R1 < R2)) fail(ErrorKind::BadRadii, "radii must satisfy 0 < R1 < R2");
    const auto K = GreensKernel::build(gp.a(), m, gp.period());
    const int N = static_cast<int>(x0.size());
    if (N < 4 || N % 2) fail(ErrorKind::InvalidArgument, "Picard grid needs an even number of nodes");
    const double T = gp.period(), dt = T / N, cm = K.cone_constant();
    std::vector<double> kern(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) kern[j] = K(j == 0 || j == N ? 0.0 : T - j * dt);
    std::vector<double> w(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) w[j] = (j == 0 || j == N) ? 1.0 : (j % 2 ? 4.0 : 2.0);

    PicardTrace trace;
    trace.iterates.push_back(x0);
    std::vector<double> fx(static_cast<std::size_t>(N));
    for (int step = 0; step < n_steps; ++step) {
        const auto& x = trace.iterates.back();
        for (int j = 0; j < N; ++j) fx[j] = f_m_truncated(gp, m, cm, R1, R2, T * j / N, std::max(x[j], 0.0));
        std::vector<double> next(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
            double s = 0.0;
            for (int j = 0; j <= N; ++j) s += w[j] * kern[j] * fx[(i + j) % N];
            next[i] = s * dt / 3.0;
        }
        double diff = 0.0;
        for (int i = 0; i < N; ++i) diff = std::max(diff, std::abs(next[i] - x[i]));
        trace.sup_differences.push_back(diff);
        trace.iterates.push_back(std::move(next));
    }
    trace.final_difference = trace.sup_differences.empty() ? 0.0 : trace.sup_differences.back();
    return trace;
}

/// Periodic solution of the general problem.
inline GridSolution solve_periodic(const GeneralProblem& gp, const SolveOptions& opt = {}) {
    const auto f = make_rhs(gp);
    std::vector<double> x0;
    if (opt.initial_values) x0 = *opt.initial_values;
    else x0.assign(static_cast<std::size_t>(opt.N), detail::default_guess(gp, opt));
    try {
        return solve_periodic(f, gp.a(), gp.period(), x0, opt);
    } catch (const Error& err) {
        if (!opt.band || (err.kind() != ErrorKind::LeftPositiveCone && err.kind() != ErrorKind::NoConvergence))
            throw;
        // restart Newton from the Picard iterate of the truncated operator
        const auto& b = *opt.band;
        const int N = opt.N % 2 ? opt.N + 1 : opt.N;
        std::vector<double> start(static_cast<std::size_t>(N), std::sqrt(b.R1 * b.R2));
        const auto tr = picard_iterate(gp, b.m, b.R1, b.R2, start, opt.picard_steps);
        auto retry = opt;
        retry.band.reset();
        retry.N = N;
        retry.initial_values = tr.iterates.back();
        return solve_periodic(gp, retry);
    }
}

struct ConeFlags {
    bool in_cone = false;      // min x >= c_m max x
    bool above_lower = false;  // min x >= c_m R1
    bool below_upper = false;  // max x <= R2
    bool not_in_b_prime = false;
};

inline ConeFlags cone_and_localization(const GridSolution& x, double c_m, double R1, double R2) {
    const double lo = x.min(), hi = x.max();
    ConeFlags f;
    f.in_cone = lo >= c_m * hi;
    f.above_lower = lo >= c_m * R1;
    f.not_in_b_prime = f.above_lower;
    f.below_upper = hi <= R2;
    return f;
}

inline ConeFlags cone_and_localization(const GridSolution& x, const Certificate& cert) {
    return cone_and_localization(x, cert.c_m, cert.params.R1, cert.params.R2);
}

}  // namespace liebau
