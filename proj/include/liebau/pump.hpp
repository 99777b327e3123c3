#pragma once

/**
 * @file pump.hpp
 * @brief Pipe-level quantities of the singular model
 *   u'' + a u' = (e - b (u')^2) / u - c,
 * and the pumping gain ebar/c - ubar.
 *
 * Multiplying the equation by u and integrating over a period gives
 *   c T ubar = T ebar - (b - 1) int_0^T (u')^2 dt,
 * so a nonconstant periodic solution sits below the constant level ebar/c.
 */

#include "liebau/error.hpp"
#include "liebau/funcspec.hpp"
#include "liebau/problem.hpp"
#include "liebau/solve.hpp"
#include "liebau/spectral.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace liebau {

struct PumpReport {
    double u_mean = 0.0;
    double e_mean = 0.0;
    double e_mean_over_c = 0.0;
    double delta = 0.0;  // ebar/c - ubar
    double uprime_l2sq = 0.0;
    double identity_residual = 0.0;
    bool pumping_detected = false;
};

/// Analytic trace u with its first two derivatives.
struct AnalyticTrace {
    std::function<double(double)> u, du, d2u;
};

namespace detail {

inline void check_level(const std::vector<double>& u) {
    for (double v : u)
        if (!(v > 0.0)) fail(ErrorKind::NonpositiveLevel, "pipe level u must stay positive");
}

inline double singular_defect(const LiebauProblem& lp, double t, double u, double du, double d2u) {
    return d2u + lp.a() * du - (lp.e()(t) - lp.b() * du * du) / u + lp.c();
}

inline PumpReport assemble_report(const LiebauProblem& lp, double u_int, double up2_int, double tol) {
    const double T = lp.period();
    PumpReport r;
    r.u_mean = u_int / T;
    r.e_mean = mean(lp.e());
    r.e_mean_over_c = r.e_mean / lp.c();
    r.delta = r.e_mean_over_c - r.u_mean;
    r.uprime_l2sq = up2_int;
    r.identity_residual = std::abs(lp.c() * T * r.u_mean - (T * r.e_mean - (lp.b() - 1.0) * up2_int));
    r.pumping_detected = r.delta > tol;
    return r;
}

}  // namespace detail

/// sup over the nodes of |u'' + a u' - (e - b u'^2)/u + c| with cyclic FD derivatives.
inline double singular_residual(const LiebauProblem& lp, const GridSolution& u) {
    detail::check_level(u.values);
    const int N = static_cast<int>(u.size());
    const double dt = u.T / N;
    const auto& v = u.values;
    double sup = 0.0;
    for (int j = 0; j < N; ++j) {
        const double um = v[(j + N - 1) % N], u0 = v[j], up = v[(j + 1) % N];
        const double du = (up - um) / (2.0 * dt);
        const double d2u = (up - 2.0 * u0 + um) / (dt * dt);
        sup = std::max(sup, std::abs(detail::singular_defect(lp, u.T * j / N, u0, du, d2u)));
    }
    return sup;
}

/// Same residual with analytic derivatives at N equispaced nodes.
inline double singular_residual(const LiebauProblem& lp, const AnalyticTrace& u, int N = 1024) {
    const double T = lp.period();
    double sup = 0.0;
    for (int j = 0; j < N; ++j) {
        const double t = T * j / N;
        const double v = u.u(t);
        if (!(v > 0.0)) fail(ErrorKind::NonpositiveLevel, "pipe level u must stay positive");
        sup = std::max(sup, std::abs(detail::singular_defect(lp, t, v, u.du(t), u.d2u(t))));
    }
    return sup;
}

/// u = x^mu pointwise; the trace is marked as pipe-level.
inline GridSolution x_to_u(const GridSolution& x, double mu) {
    for (double v : x.values)
        if (!(v > 0.0)) fail(ErrorKind::NegativeState, "x must be positive");
    GridSolution u = x;
    for (double& v : u.values) v = std::pow(v, mu);
    u.quantity = "u";
    u.cheb_coefficients.clear();
    u.cheb_shift = 0.0;
    return u;
}

/// x = u^{1/mu}, inverse of x_to_u.
inline GridSolution u_to_x(const GridSolution& u, double mu) {
    detail::check_level(u.values);
    GridSolution x = u;
    for (double& v : x.values) v = std::pow(v, 1.0 / mu);
    x.quantity = "x";
    return x;
}

/// Pumping report from a grid trace; u' by spectral differentiation, integrals by the periodic trapezoid rule.
inline PumpReport pump_report(const LiebauProblem& lp, const GridSolution& u, double tol = 1e-9) {
    detail::check_level(u.values);
    const auto du = spectral::derivative(u.values, u.T, 1);
    std::vector<double> sq(du.size());
    for (std::size_t j = 0; j < du.size(); ++j) sq[j] = du[j] * du[j];
    return detail::assemble_report(lp, spectral::periodic_integral(u.values, u.T),
                                   spectral::periodic_integral(sq, u.T), tol);
}

/// Pumping report with analytic u and u', sampled at N nodes.
inline PumpReport pump_report(const LiebauProblem& lp, const AnalyticTrace& u, int N = 1024, double tol = 1e-9) {
    const double T = lp.period();
    std::vector<double> uv(static_cast<std::size_t>(N)), sq(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double t = T * j / N;
        uv[j] = u.u(t);
        const double d = u.du(t);
        sq[j] = d * d;
    }
    detail::check_level(uv);
    return detail::assemble_report(lp, spectral::periodic_integral(uv, T), spectral::periodic_integral(sq, T), tol);
}

}  // namespace liebau
