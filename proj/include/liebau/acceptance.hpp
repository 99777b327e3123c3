#pragma once

/**
 * @file acceptance.hpp
 * @brief Regression suite over the worked examples. Each criterion returns a
 * pass flag and a one-line account of the numbers it compared.
 */

#include "liebau/certify.hpp"
#include "liebau/config.hpp"
#include "liebau/greens.hpp"
#include "liebau/pump.hpp"
#include "liebau/solve.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace liebau::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Tally {
    bool ok = true;
    std::string detail;
    void check(bool cond, const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what + (cond ? "" : " [FAIL]");
        ok = ok && cond;
    }
};

inline double sup_error(const GridSolution& s, const std::function<double(double)>& exact) {
    double e = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) e = std::max(e, std::abs(s.values[j] - exact(s.nodes[j])));
    return e;
}

inline GridSolution solve_propst(double V0, int N, Polish polish) {
    SolveOptions o;
    o.N = N;
    o.polish = polish;
    o.initial_guess = presets::propst_guess(V0);
    return solve_periodic(regularize(presets::propst_problem(V0)), o);
}

inline AnalyticTrace propst_u(double V0) {
    return {[V0](double t) { return V0 - 2.0 + std::cos(t); }, [](double t) { return -std::sin(t); },
            [](double t) { return -std::cos(t); }};
}

struct KernelCase3 {
    double a, m, T;
};

inline const std::vector<KernelCase3>& kernels() {
    static const std::vector<KernelCase3> k{{1.6, 0.7, 1.0}, {0.0, 0.25, 2.0 * std::numbers::pi}, {2.0, 1.0, 1.0}};
    return k;
}

/// Forcing with e_* = 1.54 and e^* = 1.54215 used for the C6 comparison value.
inline LiebauProblem positive_forcing_problem() {
    return presets::example_48_problem(PeriodicFunction::trig(1.541075, {{-0.001075, 1, 0.0}}, 1.0));
}

}  // namespace detail

inline CriterionResult greens_constants() {
    detail::Tally t;
    const auto k = GreensKernel::build(1.6, 0.7, 1.0);
    const auto rep = verify_properties(k);
    t.check(std::abs(k.cone_constant() - 0.94144) <= 1e-4, detail::fmt("c_m=%.8f", k.cone_constant()));
    t.check(std::abs(k.K0() - 1.96026) <= 1e-4, detail::fmt("K0=%.8f", k.K0()));
    t.check(rep.diagonal_spread <= 1e-10, detail::fmt("diagonal spread=%.2e", rep.diagonal_spread));
    return {1, "Green's constants for (1.6, 0.7, 1)", t.ok, t.detail};
}

inline CriterionResult integral_identity() {
    detail::Tally t;
    for (const auto& c : detail::kernels()) {
        const auto rep = verify_properties(GreensKernel::build(c.a, c.m, c.T));
        t.check(rep.g3_max_error < 1e-8, detail::fmt("(%g,%g,%.4g) err=%.2e", c.a, c.m, c.T, rep.g3_max_error));
    }
    t.check(std::abs(1.0 / (0.7 * 0.7) - 2.040816) < 1e-6, "1/m^2=2.040816");
    return {2, "Integral of G equals 1/m^2", t.ok, t.detail};
}

inline CriterionResult cone_chain() {
    detail::Tally t;
    for (const auto& c : detail::kernels()) {
        const auto rep = verify_properties(GreensKernel::build(c.a, c.m, c.T));
        t.check(rep.g4_worst_violation <= 1e-12,
                detail::fmt("(%g,%g,%.4g) slack=%.2e", c.a, c.m, c.T, rep.g4_worst_violation));
    }
    return {3, "G >= K(0) >= c_m G on a 256x256 grid", t.ok, t.detail};
}

inline CriterionResult example_46_certificate() {
    detail::Tally t;
    const auto cert = check_thm44(presets::example_46_problem(), 0.7, 2200.0, 25.0, 10000.0);
    t.check(cert.passed(), std::string("verdict=") + std::string(to_string(cert.verdict)));
    const auto* c4 = cert.find("C4");
    const double rel = c4 ? c4->relative_margin() : -1.0;
    t.check(rel > 0.0 && rel < 1e-5, detail::fmt("C4 relative margin=%.3e", rel));
    const double lo = cert.values.at("kappa_lower"), hi = cert.values.at("kappa_upper");
    t.check(lo <= 2200.0 && 2200.0 <= hi, detail::fmt("kappa interval=[%.2f, %.2f]", lo, hi));
    return {4, "example-4.6 certificate", t.ok, t.detail};
}

inline CriterionResult example_48_numbers() {
    detail::Tally t;
    const auto lp = detail::positive_forcing_problem();
    const auto cpt = check_cpt_criterion(lp);
    t.check(std::abs(cpt.lhs - 36.0406) <= 1e-3 && std::abs(cpt.rhs - 10.5096) <= 1e-3 && !cpt.satisfied,
            detail::fmt("earlier criterion %.4f > %.4f", cpt.lhs, cpt.rhs));
    const auto cert = check_thm47(lp, 0.7);
    const auto* c6 = cert.find("C6");
    t.check(cert.passed() && c6 && std::abs(c6->lhs - 0.2884) <= 1e-3 && c6->lhs <= 0.49,
            detail::fmt("C6 %.4f <= %.2f", c6 ? c6->lhs : NAN, c6 ? c6->rhs : NAN));
    const double thr = cert.values.at("e_max_threshold");
    t.check(std::abs(thr - 1.5443) <= 1e-3, detail::fmt("e^* threshold=%.7f", thr));
    const double bound = std::pow(thr / lp.c(), 1.0 / lp.mu()) / cert.c_m;
    t.check(std::abs(bound - 38.0844) <= 1e-2, detail::fmt("bound at threshold=%.4f", bound));
    return {5, "Positive-forcing comparison numbers", t.ok, t.detail};
}

inline CriterionResult constant_anchor() {
    detail::Tally t;
    const auto lp = presets::example_48_problem(PeriodicFunction::constant(1.54, 1.0));
    const auto s = solve_periodic(regularize(lp));
    t.check(s.converged, detail::fmt("converged in %d iterations", s.iterations));
    const double err = std::max(std::abs(s.min() - 27.1297), std::abs(s.max() - 27.1297));
    t.check(err <= 1e-3, detail::fmt("x in [%.6f, %.6f]", s.min(), s.max()));
    return {6, "Constant solution 27.1297", t.ok, t.detail};
}

inline CriterionResult propst_exact() {
    detail::Tally t;
    const double V0 = 4.0;
    const auto lp = presets::propst_problem(V0);
    const double ra = singular_residual(lp, detail::propst_u(V0));
    t.check(ra < 1e-12, detail::fmt("analytic residual=%.2e", ra));
    GridSolution u;
    u.T = lp.period();
    u.nodes = uniform_nodes(1024, u.T);
    for (double x : u.nodes) u.values.push_back(V0 - 2.0 + std::cos(x));
    const double rf = singular_residual(lp, u);
    t.check(rf < 1e-4, detail::fmt("FD residual N=1024 %.2e", rf));
    const auto s = detail::solve_propst(V0, 512, Polish::Auto);
    const double err = detail::sup_error(s, [](double x) { return std::pow(2.0 + std::cos(x), 3); });
    t.check(err < 1e-6, detail::fmt("|x-(2+cos t)^3|=%.2e", err));
    return {7, "Propst exact solution", t.ok, t.detail};
}

inline CriterionResult figure_solutions() {
    detail::Tally t;
    for (const auto& name : {"example-4.8-cosine", "example-4.8-cubic"}) {
        const auto cfg = presets::get(name);
        const auto lp = *cfg.liebau();
        const auto s = solve_periodic(cfg.general(), cfg.solve);
        const auto cert = check_thm47(lp, 0.7);
        const auto flags = cone_and_localization(s, 0.94144, cert.params.R1, cert.params.R2);
        const bool ok = s.converged && s.min() > 0.0 && s.max() < 38.0844 && flags.in_cone && flags.above_lower &&
                        flags.below_upper && s.sup_residual < 1e-8 && s.bc_mismatch <= 1e-9 * s.max();
        t.check(ok, detail::fmt("%s x in [%.4f, %.4f] residual=%.2e bc=%.1e", name, s.min(), s.max(),
                                s.sup_residual, s.bc_mismatch));
    }
    return {8, "example-4.8 preset solutions", t.ok, t.detail};
}

inline CriterionResult pumping_identity() {
    detail::Tally t;
    for (double V0 : {3.5, 4.0, 10.0}) {
        const auto lp = presets::propst_problem(V0);
        const auto r = pump_report(lp, detail::propst_u(V0));
        t.check(r.identity_residual < 1e-10 && std::abs(r.delta - 5.0) < 1e-10,
                detail::fmt("V0=%g delta=%.12f identity=%.1e", V0, r.delta, r.identity_residual));
    }
    for (const auto& name : {"example-4.8-cosine", "example-4.8-cubic"}) {
        const auto cfg = presets::get(name);
        const auto lp = *cfg.liebau();
        const auto u = x_to_u(solve_periodic(cfg.general(), cfg.solve), lp.mu());
        const auto r = pump_report(lp, u);
        t.check(r.delta > 0.0 && r.identity_residual < 1e-6,
                detail::fmt("%s delta=%.3e identity=%.1e", name, r.delta, r.identity_residual));
    }
    return {9, "Pumping identity", t.ok, t.detail};
}

inline CriterionResult soundness_link() {
    detail::Tally t;
    for (const auto& name : {"example-4.6", "example-4.8-cosine", "example-4.8-cubic"}) {
        const auto cfg = presets::get(name);
        const auto lp = *cfg.liebau();
        const auto cert = search_certificate(lp);
        if (!cert) {
            t.check(false, std::string(name) + " search found nothing");
            continue;
        }
        const auto h = check_H_for(lp, *cert);
        auto opts = cfg.solve;
        opts.band = Band{cert->params.m, cert->params.R1, cert->params.R2};
        const auto s = solve_periodic(cfg.general(), opts);
        const auto flags = cone_and_localization(s, *cert);
        t.check(h.passed() && flags.above_lower && flags.below_upper,
                detail::fmt("%s %s m=%.4g H=%s band [%.4g, %.4g] x in [%.4g, %.4g]", name,
                            std::string(to_string(cert->theorem)).c_str(), cert->params.m,
                            std::string(to_string(h.verdict)).c_str(), cert->lower, cert->upper, s.min(), s.max()));
    }
    return {10, "Searched certificates imply the cone hypotheses", t.ok, t.detail};
}

inline CriterionResult scheme_order() {
    detail::Tally t;
    auto exact = [](double x) { return std::pow(2.0 + std::cos(x), 3); };
    const double e1 = detail::sup_error(detail::solve_propst(4.0, 256, Polish::Never), exact);
    const double e2 = detail::sup_error(detail::solve_propst(4.0, 512, Polish::Never), exact);
    const double ratio = e1 / e2;
    t.check(ratio >= 3.5 && ratio <= 4.5, detail::fmt("error %.3e / %.3e = %.4f", e1, e2, ratio));
    return {11, "Second-order finite-difference scheme", t.ok, t.detail};
}

inline std::vector<std::function<CriterionResult()>> all() {
    return {greens_constants, integral_identity, cone_chain,       example_46_certificate,
            example_48_numbers, constant_anchor, propst_exact,     figure_solutions,
            pumping_identity,  soundness_link,   scheme_order};
}

/// Runs every criterion; exceptions count as failures.
inline std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    int id = 1;
    for (const auto& c : all()) {
        try {
            out.push_back(c());
        } catch (const std::exception& e) {
            out.push_back({id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()});
        }
        ++id;
    }
    return out;
}

}  // namespace liebau::acceptance
