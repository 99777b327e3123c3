#pragma once

/**
 * @file problem.hpp
 * @brief The pipe-tank model and its regular forms.
 *
 *   singular:  u'' + a u' = (e(t) - b (u')^2) / u - c,           periodic BCs
 *   regular:   x'' + a x' = (e/mu) x^{1-2mu} - (c/mu) x^{1-mu},    u = x^mu, mu = 1/(b+1)
 *   general:   x'' + a x' = r(t) x^alpha - s(t) x^beta,            0 < alpha < beta < 1
 *
 * Shifting by m^2 x gives the right-hand side f_m(t, x) = r x^alpha - s x^beta + m^2 x.
 */

#include "liebau/error.hpp"
#include "liebau/funcspec.hpp"
#include "liebau/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace liebau {

/// Physical constants of the one-pipe one-tank configuration.
struct PhysicalConfig {
    double r0 = 0.0;     // friction coefficient
    double rho = 1.0;    // fluid density
    double zeta = 1.0;   // junction coefficient, >= 1
    double g = 9.81;     // gravity
    double A_tau = 1.0;  // tank cross-section
    double A_pi = 0.01;  // pipe cross-section
    double V0 = 1.0;     // total fluid volume
    PeriodicFunction p;  // external force
};

class LiebauProblem {
public:
    /// a >= 0, 0 < mu < 1/2, c > 0; the period is taken from e.
    static LiebauProblem from_mu(double a, double mu, double c, PeriodicFunction e) {
        if (!(a >= 0.0) || !std::isfinite(a)) fail(ErrorKind::InvalidArgument, "a must be >= 0");
        if (!(mu > 0.0 && mu < 0.5)) fail(ErrorKind::InvalidArgument, "mu must lie in (0, 1/2)");
        if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidArgument, "c must be > 0");
        LiebauProblem lp;
        lp.a_ = a;
        lp.mu_ = mu;
        lp.c_ = c;
        lp.e_ = std::move(e);
        return lp;
    }

    /// b > 1, mu = 1 / (b + 1).
    static LiebauProblem from_b(double a, double b, double c, PeriodicFunction e) {
        if (!(b > 1.0) || !std::isfinite(b)) fail(ErrorKind::InvalidArgument, "b must be > 1");
        return from_mu(a, 1.0 / (b + 1.0), c, std::move(e));
    }

    double a() const noexcept { return a_; }
    double mu() const noexcept { return mu_; }
    double b() const noexcept { return 1.0 / mu_ - 1.0; }
    double c() const noexcept { return c_; }
    double period() const noexcept { return e_.period(); }
    const PeriodicFunction& e() const noexcept { return e_; }

private:
    LiebauProblem() = default;
    double a_ = 0.0, mu_ = 0.25, c_ = 1.0;
    PeriodicFunction e_;
};

class GeneralProblem {
public:
    GeneralProblem(double a, PeriodicFunction r, PeriodicFunction s, double alpha, double beta,
                   std::optional<LiebauProblem> origin = std::nullopt)
        : a_(a), r_(std::move(r)), s_(std::move(s)), alpha_(alpha), beta_(beta), origin_(std::move(origin)) {
        if (!(a >= 0.0) || !std::isfinite(a)) fail(ErrorKind::InvalidArgument, "a must be >= 0");
        if (!(0.0 < alpha && alpha < beta && beta < 1.0))
            fail(ErrorKind::InvalidArgument, "exponents must satisfy 0 < alpha < beta < 1");
        if (r_.period() != s_.period()) fail(ErrorKind::InvalidArgument, "r and s must share the period");
    }

    double a() const noexcept { return a_; }
    double period() const noexcept { return r_.period(); }
    const PeriodicFunction& r() const noexcept { return r_; }
    const PeriodicFunction& s() const noexcept { return s_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    /// Set when the problem was obtained by regularizing a Liebau problem.
    const std::optional<LiebauProblem>& origin() const noexcept { return origin_; }

    /// Union of the kinks of r and s inside (0, T).
    std::vector<double> breakpoints() const {
        auto out = r_.breakpoints();
        const auto bs = s_.breakpoints();
        out.insert(out.end(), bs.begin(), bs.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    double a_;
    PeriodicFunction r_, s_;
    double alpha_, beta_;
    std::optional<LiebauProblem> origin_;
};

/**
 * a = r0/rho, b = 1 + zeta/2, c = g A_pi / A_tau, e = g V0 / A_tau - p / rho.
 * `warnings` (optional) receives soft-invariant notes such as A_pi >= A_tau.
 */
inline LiebauProblem from_physical(const PhysicalConfig& cfg, std::vector<std::string>* warnings = nullptr) {
    if (!(cfg.zeta >= 1.0)) fail(ErrorKind::InvalidArgument, "junction coefficient zeta must be >= 1");
    if (!(cfg.r0 >= 0.0)) fail(ErrorKind::InvalidArgument, "friction r0 must be >= 0");
    if (!(cfg.rho > 0.0)) fail(ErrorKind::InvalidArgument, "density rho must be > 0");
    if (!(cfg.g > 0.0)) fail(ErrorKind::InvalidArgument, "gravity g must be > 0");
    if (!(cfg.A_tau > 0.0) || !(cfg.A_pi > 0.0)) fail(ErrorKind::InvalidArgument, "cross-sections must be > 0");
    if (!(cfg.V0 > 0.0)) fail(ErrorKind::InvalidArgument, "volume V0 must be > 0");
    if (warnings && !(cfg.A_pi < cfg.A_tau)) warnings->push_back("pipe cross-section A_pi is not smaller than A_tau");
    const double a = cfg.r0 / cfg.rho;
    const double b = 1.0 + 0.5 * cfg.zeta;
    const double c = cfg.g * cfg.A_pi / cfg.A_tau;
    const double T = cfg.p.period();
    auto e = PeriodicFunction::sum({{1.0, PeriodicFunction::constant(cfg.g * cfg.V0 / cfg.A_tau, T)},
                                    {-1.0 / cfg.rho, cfg.p}});
    return LiebauProblem::from_b(a, b, c, std::move(e));
}

/// r = e/mu, s = c/mu, alpha = 1 - 2 mu, beta = 1 - mu.
inline GeneralProblem regularize(const LiebauProblem& lp) {
    const double mu = lp.mu();
    return GeneralProblem(lp.a(), lp.e().scaled(1.0 / mu), PeriodicFunction::constant(lp.c() / mu, lp.period()),
                          1.0 - 2.0 * mu, 1.0 - mu, lp);
}

/// Inverse of regularize for problems with constant s and beta = 1 - mu, alpha = 1 - 2 mu.
inline LiebauProblem deregularize(const GeneralProblem& gp) {
    const auto s = gp.s().constant_value();
    if (!s) fail(ErrorKind::InvalidArgument, "deregularize needs a constant s");
    const double mu = 1.0 - gp.beta();
    return LiebauProblem::from_mu(gp.a(), mu, *s * mu, gp.r().scaled(mu));
}

/// f_m(t, x) = r(t) x^alpha - s(t) x^beta + m^2 x, with f_m(t, 0) = 0.
inline double f_m(const GeneralProblem& gp, double m, double t, double x) {
    if (x < 0.0 || std::isnan(x)) fail(ErrorKind::NegativeState, "f_m evaluated at negative state");
    if (x == 0.0) return 0.0;
    return gp.r()(t) * numeric::spow(x, gp.alpha()) - gp.s()(t) * numeric::spow(x, gp.beta()) + m * m * x;
}

/// Unshifted right-hand side r x^alpha - s x^beta.
inline double rhs(const GeneralProblem& gp, double t, double x) { return f_m(gp, 0.0, t, x); }

/// d/dx (r x^alpha - s x^beta) for x > 0.
inline double rhs_dx(const GeneralProblem& gp, double t, double x) {
    if (!(x > 0.0)) fail(ErrorKind::NegativeState, "derivative of the nonlinearity needs x > 0");
    return gp.alpha() * gp.r()(t) * std::pow(x, gp.alpha() - 1.0) -
           gp.beta() * gp.s()(t) * std::pow(x, gp.beta() - 1.0);
}

/// max(f_m(t, clamp(x, c_m R1, R2)), 0): continuous, nonnegative on [0, R2] and
/// equal to f_m on [c_m R1, R2] wherever f_m >= 0 there.
inline double f_m_truncated(const GeneralProblem& gp, double m, double c_m, double R1, double R2, double t,
                            double x) {
    if (!(R1 > 0.0) || !(R1 < R2)) fail(ErrorKind::BadRadii, "radii must satisfy 0 < R1 < R2");
    const double xc = std::clamp(x, c_m * R1, R2);
    return std::max(f_m(gp, m, t, xc), 0.0);
}

}  // namespace liebau
