#pragma once

/**
 * @file certify.hpp
 * @brief Existence certificates for positive periodic solutions.
 *
 * Three hypothesis systems are checked numerically:
 *   - Thm41: the general cone hypotheses (H0)-(H7) for x'' + a x' = r x^alpha - s x^beta,
 *     with user-supplied bounds g0 (from below, on [c_m R1, R1]) and g1 (from above,
 *     on [c_m R2, R2]);
 *   - Thm44: the explicit conditions (C0)-(C4) for the regularized Liebau problem,
 *     allowing e to change sign;
 *   - Thm47: the conditions (C5)-(C6) for strictly positive e.
 *
 * Every inequality is recorded with both sides and an oriented margin
 * (margin >= 0 means the inequality holds). Conditions whose sides come from
 * quadrature (H3, H4, H6, H7) accept a margin down to -quadrature_tol * |rhs|.
 */

#include "liebau/error.hpp"
#include "liebau/funcspec.hpp"
#include "liebau/greens.hpp"
#include "liebau/numeric.hpp"
#include "liebau/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace liebau {

enum class Theorem { Thm41, Thm44, Thm47 };
enum class Verdict { Pass, Fail, Inapplicable };
enum class Relation { LessEq, GreaterEq, Less, Greater };

constexpr std::string_view to_string(Theorem t) {
    switch (t) {
        case Theorem::Thm41: return "Thm41";
        case Theorem::Thm44: return "Thm44";
        case Theorem::Thm47: return "Thm47";
    }
    return "?";
}

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Inapplicable: return "Inapplicable";
    }
    return "?";
}

constexpr std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::LessEq: return "<=";
        case Relation::GreaterEq: return ">=";
        case Relation::Less: return "<";
        case Relation::Greater: return ">";
    }
    return "?";
}

struct Condition {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    Relation relation = Relation::GreaterEq;
    bool satisfied = false;
    double margin = 0.0;        // oriented: >= 0 means the inequality holds
    bool required = true;       // counts towards the verdict
    bool inapplicable = false;  // recorded as a pass outside its regime
    bool ranked = true;         // counts towards min_relative_margin
    std::string note;

    double relative_margin() const {
        const double scale = rhs != 0.0 ? std::abs(rhs) : std::max(1.0, std::abs(lhs));
        return margin / scale;
    }
};

struct CertificateParams {
    double m = 0.0;
    std::optional<double> kappa;
    double R1 = 0.0;
    double R2 = 0.0;
};

struct Certificate {
    Theorem theorem = Theorem::Thm41;
    CertificateParams params;
    std::vector<Condition> conditions;
    Verdict verdict = Verdict::Fail;
    double lower = 0.0;  // c_m R1
    double upper = 0.0;  // R2
    double c_m = 0.0;
    double K0 = 0.0;
    double m_max = 0.0;
    double extrema_tol = 0.0;  // refinement tolerance of e_*, e^* (0 when exact)
    std::map<std::string, double> values;  // derived numbers (e_*, kappa interval, thresholds, ...)
    std::vector<std::string> flags;        // informational notes

    const Condition* find(std::string_view name) const {
        for (const auto& c : conditions)
            if (c.name == name) return &c;
        return nullptr;
    }

    /// Smallest relative margin over required, applicable, ranked conditions.
    double min_relative_margin() const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : conditions)
            if (c.required && !c.inapplicable && c.ranked) best = std::min(best, c.relative_margin());
        return best;
    }

    bool passed() const noexcept { return verdict == Verdict::Pass; }
};

struct CheckOptions {
    int t_grid = 512;
    int x_grid = 512;
    int panels = 1024;
    double strict_eps = 0.0;
    double quadrature_tol = 1e-9;
    ExtremaOptions extrema;
    KernelOptions kernel;
};

namespace detail {

inline Condition make_condition(std::string name, double lhs, Relation rel, double rhs, double eps,
                                double allowance = 0.0) {
    Condition c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.relation = rel;
    const bool ge = rel == Relation::GreaterEq || rel == Relation::Greater;
    c.margin = ge ? lhs - rhs : rhs - lhs;
    const bool strict = rel == Relation::Greater || rel == Relation::Less;
    const double threshold = eps - allowance;
    c.satisfied = std::isfinite(c.margin) && (strict ? c.margin > threshold : c.margin >= threshold);
    return c;
}

inline Condition either(std::string name, const Condition& a, const Condition& b) {
    Condition c = a.margin >= b.margin ? a : b;
    c.name = std::move(name);
    c.satisfied = a.satisfied || b.satisfied;
    c.note = "holds if " + a.name + " or " + b.name + " holds; sides are those of the better one";
    return c;
}

inline void finish_verdict(Certificate& cert) {
    bool ok = true;
    for (const auto& c : cert.conditions)
        if (c.required && !c.satisfied) ok = false;
    cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
}

}  // namespace detail

/// A T-periodic source term g(t) for the comparison functions g0, g1.
struct SourceTerm {
    std::function<double(double)> eval;
    std::vector<double> cuts;

    static SourceTerm from(const PeriodicFunction& f) {
        return {[f](double t) { return f(t); }, f.breakpoints()};
    }
    static SourceTerm constant(double v) {
        return {[v](double) { return v; }, {}};
    }
    static SourceTerm scaled(const PositivePart& p, double k) {
        return {[p, k](double t) { return k * p(t); }, p.breakpoints()};
    }
    double operator()(double t) const { return eval(t); }
};

/**
 * Checks (H0)-(H7) of the general problem for given (m, R1, R2, g0, g1).
 * Passes when H0, H1, H2, H5 hold together with (H3 or H4) and (H6 or H7).
 */
inline Certificate check_H(const GeneralProblem& gp, double m, double R1, double R2, const SourceTerm& g0,
                           const SourceTerm& g1, const CheckOptions& opt = {}) {
    using detail::make_condition;
    if (!(R1 > 0.0) || !(R1 < R2)) fail(ErrorKind::BadRadii, "radii must satisfy 0 < R1 < R2");
    const auto K = GreensKernel::build(gp.a(), m, gp.period(), opt.kernel);
    const double cm = K.cone_constant();
    const double T = gp.period();
    const double eps = opt.strict_eps;

    Certificate cert;
    cert.theorem = Theorem::Thm41;
    cert.params = {m, std::nullopt, R1, R2};
    cert.c_m = cm;
    cert.K0 = K.K0();
    cert.m_max = K.m_max();
    cert.lower = cm * R1;
    cert.upper = R2;

    std::vector<double> ts = numeric::linspace(0.0, T, opt.t_grid + 1);
    ts.pop_back();
    for (const auto& cuts : {gp.breakpoints(), g0.cuts, g1.cuts}) ts.insert(ts.end(), cuts.begin(), cuts.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<double> rt(ts.size()), st(ts.size()), g0t(ts.size()), g1t(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        rt[i] = gp.r()(ts[i]);
        st[i] = gp.s()(ts[i]);
        g0t[i] = g0(ts[i]);
        g1t[i] = g1(ts[i]);
    }
    const double m2 = m * m;
    auto fm = [&](std::size_t i, double x) {
        return rt[i] * numeric::spow(x, gp.alpha()) - st[i] * numeric::spow(x, gp.beta()) + m2 * x;
    };
    // min over the grid of f_m(t, x) - shift(t) on [lo, hi]; sign = -1 gives max of f_m - shift
    auto extreme = [&](double lo, double hi, const std::vector<double>& shift, double sign) {
        const auto xs = numeric::logspace(lo, hi, opt.x_grid);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (double x : xs) best = std::min(best, sign * (fm(i, x) - shift[i]));
        return sign * best;
    };
    const std::vector<double> zero(ts.size(), 0.0);

    {
        auto c = make_condition("H0", std::min({gp.alpha(), gp.beta() - gp.alpha(), 1.0 - gp.beta()}),
                                Relation::Greater, 0.0, 0.0);
        c.ranked = false;
        c.note = "0 < alpha < beta < 1 and a >= 0";
        c.satisfied = c.satisfied && gp.a() >= 0.0;
        cert.conditions.push_back(c);
    }
    cert.conditions.push_back(make_condition("H1", extreme(cm * R1, R2, zero, 1.0), Relation::GreaterEq, 0.0, eps));
    cert.conditions.back().note = "min f_m over [0,T] x [c_m R1, R2]";
    cert.conditions.push_back(make_condition("H2", extreme(cm * R2, R2, g1t, -1.0), Relation::LessEq, 0.0, eps));
    cert.conditions.back().note = "max (f_m - g1) over [0,T] x [c_m R2, R2]";
    cert.conditions.push_back(make_condition("H5", extreme(cm * R1, R1, g0t, 1.0), Relation::GreaterEq, 0.0, eps));
    cert.conditions.back().note = "min (f_m - g0) over [0,T] x [c_m R1, R1]";
    cert.conditions.push_back(
        make_condition("H5:g0>=0", *std::min_element(g0t.begin(), g0t.end()), Relation::GreaterEq, 0.0, eps));

    double dmin = std::numeric_limits<double>::infinity(), dmax = -dmin;
    double gmin = dmin, gmax = -dmin;
    for (double t : ts) {
        const double d = convolve(K, g1.eval, t, g1.cuts, opt.panels);
        const double g = convolve(K, g0.eval, t, g0.cuts, opt.panels);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        gmin = std::min(gmin, g);
        gmax = std::max(gmax, g);
    }
    cert.values["delta_min"] = dmin;
    cert.values["delta_max"] = dmax;
    cert.values["gamma_min"] = gmin;
    cert.values["gamma_max"] = gmax;

    const double q = opt.quadrature_tol;
    auto h3 = make_condition("H3", dmin, Relation::LessEq, cm * R2, eps, q * cm * R2);
    auto h4 = make_condition("H4", dmax, Relation::LessEq, R2, eps, q * R2);
    auto h6 = make_condition("H6", gmin, Relation::GreaterEq, cm * R1, eps, q * cm * R1);
    auto h7 = make_condition("H7", gmax, Relation::GreaterEq, R1, eps, q * R1);
    auto h7p = h7;
    h7p.name = "H7'";
    h7p.note = "exists grid t0 with gamma(t0) >= R1";
    for (auto* c : {&h3, &h4, &h6, &h7, &h7p}) c->required = false;
    cert.conditions.push_back(h3);
    cert.conditions.push_back(h4);
    cert.conditions.push_back(detail::either("H3|H4", h3, h4));
    cert.conditions.push_back(h6);
    cert.conditions.push_back(h7);
    cert.conditions.push_back(h7p);
    cert.conditions.push_back(detail::either("H6|H7", h6, h7));
    detail::finish_verdict(cert);
    if (cert.passed() && h7.satisfied) cert.flags.push_back("localization also satisfies max x >= R1 (H7 holds)");
    return cert;
}

inline Certificate check_H(const GeneralProblem& gp, double m, double R1, double R2, const PeriodicFunction& g0,
                           const PeriodicFunction& g1, const CheckOptions& opt = {}) {
    return check_H(gp, m, R1, R2, SourceTerm::from(g0), SourceTerm::from(g1), opt);
}

/// Data of e shared by the Liebau checkers.
struct ForcingSummary {
    Extrema ext;
    double mean = 0.0;
    double positive_integral = 0.0;  // integral over one period of e_+
};

inline ForcingSummary summarize(const LiebauProblem& lp, const ExtremaOptions& opt = {}) {
    ForcingSummary s;
    s.ext = extrema(lp.e(), opt);
    s.mean = mean(lp.e());
    s.positive_integral = positive_part(lp.e()).mean() * lp.period();
    return s;
}

namespace detail {

inline Certificate thm44_from(const LiebauProblem& lp, const GreensKernel& K, const ForcingSummary& fs, double m,
                              double kappa, double R1, double R2, const CheckOptions& opt) {
    using detail::make_condition;
    const double mu = lp.mu(), c = lp.c(), eps = opt.strict_eps;
    const double cm = K.cone_constant(), K0 = K.K0();
    const double e_lo = fs.ext.min, e_hi = fs.ext.max;
    const double m2 = m * m;

    Certificate cert;
    cert.theorem = Theorem::Thm44;
    cert.params = {m, kappa, R1, R2};
    cert.c_m = cm;
    cert.K0 = K0;
    cert.m_max = K.m_max();
    cert.lower = cm * R1;
    cert.upper = R2;
    cert.extrema_tol = fs.ext.refinement_tol;
    cert.values["e_min"] = e_lo;
    cert.values["e_max"] = e_hi;
    cert.values["e_plus_integral"] = fs.positive_integral;
    cert.values["kappa_lower"] = cm * R1 / (K0 * fs.positive_integral);
    cert.values["kappa_upper"] = std::pow(cm * R1, 1.0 - 2.0 * mu) / mu;

    {
        auto c0 = make_condition("C0", std::min({mu, 0.5 - mu, c, lp.period()}), Relation::Greater, 0.0, 0.0);
        c0.ranked = false;
        c0.note = "a >= 0, 0 < mu < 1/2, c > 0, T > 0";
        cert.conditions.push_back(c0);
    }
    if (e_lo <= 0.0) {
        const double rhs = (c + std::sqrt(c * c - 4.0 * mu * m2 * e_lo)) / (2.0 * mu * m2);
        cert.conditions.push_back(make_condition("C1", std::pow(cm * R1, mu), Relation::GreaterEq, rhs, eps));
    } else {
        Condition c1;
        c1.name = "C1";
        c1.lhs = e_lo;
        c1.rhs = 0.0;
        c1.relation = Relation::LessEq;
        c1.inapplicable = true;
        c1.satisfied = true;
        c1.margin = 0.0;
        c1.note = "e_* > 0: condition stated for e_* <= 0 only, recorded as inapplicable";
        cert.conditions.push_back(c1);
        cert.flags.push_back("C1 inapplicable (e_* > 0); Thm47 covers positive forcing");
    }
    cert.conditions.push_back(
        make_condition("C2", std::pow(cm * R1, 1.0 - 2.0 * mu), Relation::GreaterEq, kappa * mu, eps));
    cert.conditions.push_back(
        make_condition("C3", K0 * fs.positive_integral, Relation::GreaterEq, cm * R1 / kappa, eps));
    cert.conditions.push_back(make_condition("C4", e_hi, Relation::LessEq, c * std::pow(R2, mu), eps));
    finish_verdict(cert);
    return cert;
}

inline void check_radii(double R1, double R2) {
    if (!(R1 > 0.0) || !(R1 < R2) || !std::isfinite(R2)) fail(ErrorKind::BadRadii, "radii must satisfy 0 < R1 < R2");
}

}  // namespace detail

/// Conditions (C0)-(C4) at the tuple (m, kappa, R1, R2).
inline Certificate check_thm44(const LiebauProblem& lp, double m, double kappa, double R1, double R2,
                               const CheckOptions& opt = {}) {
    detail::check_radii(R1, R2);
    if (!(kappa > 0.0)) fail(ErrorKind::KappaNonpositive, "kappa must be positive");
    const auto K = GreensKernel::build(lp.a(), m, lp.period(), opt.kernel);
    return detail::thm44_from(lp, K, summarize(lp, opt.extrema), m, kappa, R1, R2, opt);
}

namespace detail {

inline Certificate thm47_from(const LiebauProblem& lp, const GreensKernel& K, const ForcingSummary& fs, double m,
                              const CheckOptions& opt) {
    using detail::make_condition;
    const double mu = lp.mu(), c = lp.c();
    const double cm = K.cone_constant();
    const double e_lo = fs.ext.min, e_hi = fs.ext.max;
    const double m2 = m * m;

    Certificate cert;
    cert.theorem = Theorem::Thm47;
    cert.c_m = cm;
    cert.K0 = K.K0();
    cert.m_max = K.m_max();
    cert.extrema_tol = fs.ext.refinement_tol;
    cert.params.m = m;
    cert.values["e_min"] = e_lo;
    cert.values["e_max"] = e_hi;

    auto c5 = make_condition("C5", e_lo, Relation::Greater, 0.0, 0.0);
    c5.ranked = false;
    cert.conditions.push_back(c5);
    if (!c5.satisfied) {
        cert.verdict = Verdict::Inapplicable;
        cert.flags.push_back("e_* <= 0: use Thm44");
        return cert;
    }
    const double lhs = c * c / (mu * e_lo * e_lo) * (e_hi / std::pow(cm, mu) - e_lo);
    cert.conditions.push_back(make_condition("C6", lhs, Relation::LessEq, m2, opt.strict_eps));
    cert.values["e_max_threshold"] = std::pow(cm, mu) * (e_lo + m2 * mu * e_lo * e_lo / (c * c));

    // R2 from the solution bound; R1 is the largest radius with
    // (1 - c_m) m^2 mu R1^{2mu} + c R1^mu <= e_* c_m^{1-2mu}  (quadratic in R1^mu).
    const double R2 = std::pow(e_hi / c, 1.0 / mu) / cm;
    const double qa = (1.0 - cm) * m2 * mu, qb = c, qc = -e_lo * std::pow(cm, 1.0 - 2.0 * mu);
    const double y = qa > 0.0 ? (2.0 * -qc) / (qb + std::sqrt(qb * qb - 4.0 * qa * qc)) : -qc / qb;
    const double R1 = std::pow(y, 1.0 / mu);
    cert.params.R1 = R1;
    cert.params.R2 = R2;
    cert.lower = cm * R1;
    cert.upper = R2;
    cert.values["solution_bound"] = R2;

    auto r1c = make_condition("R1-choice", qa * y * y + qb * y, Relation::LessEq, -qc, 0.0);
    r1c.required = false;
    r1c.note = "R1 chosen at equality; informational";
    cert.conditions.push_back(r1c);
    finish_verdict(cert);
    return cert;
}

}  // namespace detail

/// Conditions (C5)-(C6) at m; on pass the certificate carries the band [c_m R1, R2].
inline Certificate check_thm47(const LiebauProblem& lp, double m, const CheckOptions& opt = {}) {
    const auto K = GreensKernel::build(lp.a(), m, lp.period(), opt.kernel);
    return detail::thm47_from(lp, K, summarize(lp, opt.extrema), m, opt);
}

struct CptCriterion {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

/// Earlier sufficient condition c^2 / (4 mu e_*) <= (pi/T)^2 + a^2/4, defined for e_* > 0.
inline CptCriterion check_cpt_criterion(const LiebauProblem& lp, const ExtremaOptions& opt = {}) {
    const double e_lo = extrema(lp.e(), opt).min;
    if (!(e_lo > 0.0)) fail(ErrorKind::Inapplicable, "criterion needs e_* > 0");
    const double pT = std::numbers::pi / lp.period();
    CptCriterion out;
    out.lhs = lp.c() * lp.c() / (4.0 * lp.mu() * e_lo);
    out.rhs = pT * pT + 0.25 * lp.a() * lp.a();
    out.satisfied = out.lhs <= out.rhs;
    return out;
}

struct NecessaryCondition {
    double ebar = 0.0;
    bool satisfied = false;
};

/// Positive solutions require a positive mean of e.
inline NecessaryCondition check_necessary(const LiebauProblem& lp) {
    const double eb = mean(lp.e());
    return {eb, eb > 0.0};
}

/// Hypotheses (H0)-(H7) implied by a Thm44 or Thm47 certificate, checked directly
/// on the regularized problem: g1 = m^2 R2 and g0 = kappa e_+ (Thm44) or m^2 R1 (Thm47).
inline Certificate check_H_for(const LiebauProblem& lp, const Certificate& cert, const CheckOptions& opt = {}) {
    const auto gp = regularize(lp);
    const double m = cert.params.m, R1 = cert.params.R1, R2 = cert.params.R2;
    const auto g1 = SourceTerm::constant(m * m * R2);
    if (cert.theorem == Theorem::Thm44) {
        if (!cert.params.kappa) fail(ErrorKind::InvalidArgument, "Thm44 certificate without kappa");
        return check_H(gp, m, R1, R2, SourceTerm::scaled(positive_part(lp.e()), *cert.params.kappa), g1, opt);
    }
    if (cert.theorem == Theorem::Thm47) return check_H(gp, m, R1, R2, SourceTerm::constant(m * m * R1), g1, opt);
    fail(ErrorKind::InvalidArgument, "certificate is already a Thm41 certificate");
}

struct SearchOptions {
    int m_points = 64;
    int r_points = 48;
    double r_lo = 1e-6;
    double r_hi = 1e8;
    unsigned threads = 0;  // 0: LIEBAU_THREADS or hardware concurrency
    std::optional<Theorem> theorem;  // default: Thm47 when e_* > 0, Thm44 otherwise
    CheckOptions check;
};

inline unsigned search_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LIEBAU_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Best Thm44 tuple at a fixed m; kappa is the geometric mean of its feasible
// interval, which balances the relative margins of C2 and C3.
inline std::optional<Certificate> best_thm44_at(const LiebauProblem& lp, const GreensKernel& K,
                                                const ForcingSummary& fs, const std::vector<double>& radii,
                                                const CheckOptions& opt) {
    const double mu = lp.mu(), c = lp.c(), m = K.m(), m2 = m * m;
    const double cm = K.cone_constant(), K0 = K.K0();
    const double e_lo = fs.ext.min, e_hi = fs.ext.max;
    if (!(fs.positive_integral > 0.0)) return std::nullopt;

    double best = -std::numeric_limits<double>::infinity();
    std::optional<std::tuple<double, double, double>> arg;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double R1 = radii[i];
        double rel1 = std::numeric_limits<double>::infinity();
        if (e_lo <= 0.0) {
            const double rhs = (c + std::sqrt(c * c - 4.0 * mu * m2 * e_lo)) / (2.0 * mu * m2);
            rel1 = (std::pow(cm * R1, mu) - rhs) / rhs;
        }
        if (rel1 < opt.strict_eps) continue;
        const double k_lo = cm * R1 / (K0 * fs.positive_integral);
        const double k_hi = std::pow(cm * R1, 1.0 - 2.0 * mu) / mu;
        if (!(k_lo <= k_hi)) continue;
        const double rel23 = std::sqrt(k_hi / k_lo) - 1.0;
        for (std::size_t j = i + 1; j < radii.size(); ++j) {
            const double R2 = radii[j];
            const double rhs4 = c * std::pow(R2, mu);
            const double rel4 = (rhs4 - e_hi) / rhs4;
            if (rel4 < 0.0) continue;
            const double score = std::min({rel1, rel23, rel4});
            if (score > best) {
                best = score;
                arg = std::tuple{R1, R2, std::sqrt(k_lo * k_hi)};
            }
        }
    }
    if (!arg) return std::nullopt;
    auto [R1, R2, kappa] = *arg;
    auto cert = thm44_from(lp, K, fs, m, kappa, R1, R2, opt);
    if (!cert.passed()) return std::nullopt;
    return cert;
}

}  // namespace detail

/**
 * Scans m over (0, m_max) and, for Thm44, log-grids of R1 and R2 with kappa
 * eliminated through its C2/C3 interval. Returns the passing certificate with
 * the largest minimum relative margin (ties: earliest grid point).
 */
inline std::optional<Certificate> search_certificate(const LiebauProblem& lp, const SearchOptions& opt = {}) {
    if (!check_necessary(lp).satisfied) return std::nullopt;
    const auto fs = summarize(lp, opt.check.extrema);
    const Theorem thm = opt.theorem.value_or(fs.ext.min > 0.0 ? Theorem::Thm47 : Theorem::Thm44);
    if (thm == Theorem::Thm41) fail(ErrorKind::InvalidArgument, "search covers Thm44 and Thm47 only");

    const double mmax = m_max(lp.a(), lp.period());
    const int n = std::max(opt.m_points, 1);
    const auto radii = numeric::logspace(opt.r_lo, opt.r_hi, opt.r_points);
    std::vector<std::optional<Certificate>> found(static_cast<std::size_t>(n));

    auto work = [&](int k) {
        const double m = mmax * (k + 1) / (n + 1);
        try {
            const auto K = GreensKernel::build(lp.a(), m, lp.period(), opt.check.kernel);
            if (thm == Theorem::Thm47) {
                auto cert = detail::thm47_from(lp, K, fs, m, opt.check);
                if (cert.passed()) found[k] = std::move(cert);
            } else {
                found[k] = detail::best_thm44_at(lp, K, fs, radii, opt.check);
            }
        } catch (const Error&) {
            // kernel rejected at this m (degenerate); skip the grid point
        }
    };

    const unsigned nthreads = std::min<unsigned>(search_threads(opt.threads), static_cast<unsigned>(n));
    if (nthreads <= 1) {
        for (int k = 0; k < n; ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w] {
                for (int k = static_cast<int>(w); k < n; k += static_cast<int>(nthreads)) work(k);
            });
        for (auto& th : pool) th.join();
    }

    std::optional<Certificate> best;
    for (auto& c : found) {
        if (!c) continue;
        if (!best || c->min_relative_margin() > best->min_relative_margin()) best = std::move(c);
    }
    return best;
}

}  // namespace liebau
