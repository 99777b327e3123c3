#pragma once

/**
 * @file config.hpp
 * @brief Run configuration: problem records, tagged function records and
 * command options, read from JSON text. Built-in presets carry the constants
 * of the worked examples.
 *
 * Function records:
 *   {"type": "constant", "value": v}
 *   {"type": "trig", "offset": c, "terms": [{"amplitude": A, "harmonic": n, "phase": p}, ...]}
 *   {"type": "poly", "coefficients": [c0, c1, ...]}            ascending powers of t
 *   {"type": "piecewise_linear", "points": [[t, v], ...]}
 *   {"type": "sum", "parts": [{"weight": w, "function": {...}}, ...]}
 * Any record may carry "period"; it must equal the problem period.
 *
 * Problem records ("problem"):
 *   {"kind": "liebau", "a", "mu" | "b", "c", "T", "e"}
 *   {"kind": "physical", "r0", "rho", "zeta", "g", "A_tau", "A_pi", "V0", "T", "p"}
 *   {"kind": "general", "a", "T", "r", "s", "alpha", "beta"}
 */

#include "liebau/certify.hpp"
#include "liebau/error.hpp"
#include "liebau/funcspec.hpp"
#include "liebau/problem.hpp"
#include "liebau/solve.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace liebau {

struct CertificateRequest {
    Theorem theorem = Theorem::Thm44;
    double m = 0.0;
    std::optional<double> kappa;
    double R1 = 0.0;
    double R2 = 0.0;
};

struct RunConfig {
    std::string name;
    std::variant<PhysicalConfig, LiebauProblem, GeneralProblem> problem;
    std::optional<CertificateRequest> certificate;
    SolveOptions solve;
    SearchOptions search;
    CheckOptions check;
    std::vector<std::string> warnings;

    /// The Liebau form, when the problem has one.
    std::optional<LiebauProblem> liebau() const {
        if (const auto* p = std::get_if<PhysicalConfig>(&problem)) return from_physical(*p);
        if (const auto* l = std::get_if<LiebauProblem>(&problem)) return *l;
        return std::get<GeneralProblem>(problem).origin();
    }

    GeneralProblem general() const {
        if (const auto* g = std::get_if<GeneralProblem>(&problem)) return *g;
        return regularize(*liebau());
    }

    double period() const { return general().period(); }
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void config_error(const std::string& path, const std::string& msg) {
    fail(ErrorKind::Config, path + ": " + msg);
}

inline const json& member(const json& j, const std::string& path, const char* name) {
    if (!j.is_object()) config_error(path, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) config_error(path + "." + name, "missing field");
    return *it;
}

inline double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) config_error(path, "expected a number");
    return j.get<double>();
}

inline double number_field(const json& j, const std::string& path, const char* name) {
    return number_at(member(j, path, name), path + "." + name);
}

inline std::optional<double> optional_number(const json& j, const std::string& path, const char* name) {
    if (!j.contains(name)) return std::nullopt;
    return number_at(j.at(name), path + "." + name);
}

inline int int_field(const json& j, const std::string& path, const char* name, int fallback) {
    if (!j.contains(name)) return fallback;
    const auto& v = j.at(name);
    if (!v.is_number_integer()) config_error(path + "." + name, "expected an integer");
    return v.get<int>();
}

inline std::string string_field(const json& j, const std::string& path, const char* name) {
    const auto& v = member(j, path, name);
    if (!v.is_string()) config_error(path + "." + name, "expected a string");
    return v.get<std::string>();
}

inline PeriodicFunction parse_function(const json& j, const std::string& path, double T) {
    if (auto p = optional_number(j, path, "period"); p && *p != T)
        config_error(path + ".period", "period differs from the problem period T");
    const auto type = string_field(j, path, "type");
    try {
        if (type == "constant") return PeriodicFunction::constant(number_field(j, path, "value"), T);
        if (type == "trig") {
            const double offset = j.contains("offset") ? number_at(j.at("offset"), path + ".offset") : 0.0;
            std::vector<Harmonic> terms;
            const auto& arr = member(j, path, "terms");
            if (!arr.is_array()) config_error(path + ".terms", "expected an array");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const auto p = path + ".terms[" + std::to_string(i) + "]";
                Harmonic h;
                h.amplitude = number_field(arr[i], p, "amplitude");
                h.harmonic = int_field(arr[i], p, "harmonic", 1);
                h.phase = arr[i].contains("phase") ? number_at(arr[i].at("phase"), p + ".phase") : 0.0;
                terms.push_back(h);
            }
            return PeriodicFunction::trig(offset, std::move(terms), T);
        }
        if (type == "poly") {
            const auto& arr = member(j, path, "coefficients");
            if (!arr.is_array()) config_error(path + ".coefficients", "expected an array");
            std::vector<double> c;
            for (std::size_t i = 0; i < arr.size(); ++i)
                c.push_back(number_at(arr[i], path + ".coefficients[" + std::to_string(i) + "]"));
            return PeriodicFunction::poly(std::move(c), T);
        }
        if (type == "piecewise_linear") {
            const auto& arr = member(j, path, "points");
            if (!arr.is_array()) config_error(path + ".points", "expected an array");
            std::vector<Breakpoint> pts;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const auto p = path + ".points[" + std::to_string(i) + "]";
                if (!arr[i].is_array() || arr[i].size() != 2) config_error(p, "expected [t, v]");
                pts.push_back({number_at(arr[i][0], p + "[0]"), number_at(arr[i][1], p + "[1]")});
            }
            return PeriodicFunction::piecewise_linear(std::move(pts), T);
        }
        if (type == "sum") {
            const auto& arr = member(j, path, "parts");
            if (!arr.is_array() || arr.empty()) config_error(path + ".parts", "expected a non-empty array");
            std::vector<std::pair<double, PeriodicFunction>> parts;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const auto p = path + ".parts[" + std::to_string(i) + "]";
                const double w = arr[i].contains("weight") ? number_at(arr[i].at("weight"), p + ".weight") : 1.0;
                parts.emplace_back(w, parse_function(member(arr[i], p, "function"), p + ".function", T));
            }
            return PeriodicFunction::sum(parts);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        config_error(path, e.what());
    }
    config_error(path + ".type", "unknown function type '" + type + "'");
}

inline double period_field(const json& j, const std::string& path) {
    const double T = number_field(j, path, "T");
    if (!(T > 0.0) || !std::isfinite(T)) config_error(path + ".T", "period must be positive");
    return T;
}

inline void parse_problem(const json& j, RunConfig& cfg) {
    const std::string path = "problem";
    const auto kind = string_field(j, path, "kind");
    const double T = period_field(j, path);
    try {
        if (kind == "liebau") {
            const double a = j.contains("a") ? number_at(j.at("a"), path + ".a") : 0.0;
            const double c = number_field(j, path, "c");
            auto e = parse_function(member(j, path, "e"), path + ".e", T);
            if (j.contains("mu")) cfg.problem = LiebauProblem::from_mu(a, number_field(j, path, "mu"), c, e);
            else cfg.problem = LiebauProblem::from_b(a, number_field(j, path, "b"), c, e);
            return;
        }
        if (kind == "physical") {
            PhysicalConfig p;
            p.r0 = number_field(j, path, "r0");
            p.rho = number_field(j, path, "rho");
            p.zeta = number_field(j, path, "zeta");
            if (j.contains("g")) p.g = number_field(j, path, "g");
            p.A_tau = number_field(j, path, "A_tau");
            p.A_pi = number_field(j, path, "A_pi");
            p.V0 = number_field(j, path, "V0");
            p.p = parse_function(member(j, path, "p"), path + ".p", T);
            from_physical(p, &cfg.warnings);
            cfg.problem = p;
            return;
        }
        if (kind == "general") {
            const double a = j.contains("a") ? number_at(j.at("a"), path + ".a") : 0.0;
            cfg.problem = GeneralProblem(a, parse_function(member(j, path, "r"), path + ".r", T),
                                         parse_function(member(j, path, "s"), path + ".s", T),
                                         number_field(j, path, "alpha"), number_field(j, path, "beta"));
            return;
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        config_error(path, e.what());
    }
    config_error(path + ".kind", "unknown problem kind '" + kind + "'");
}

inline Theorem parse_theorem(const std::string& s, const std::string& path) {
    if (s == "Thm41") return Theorem::Thm41;
    if (s == "Thm44") return Theorem::Thm44;
    if (s == "Thm47") return Theorem::Thm47;
    config_error(path, "unknown theorem '" + s + "' (Thm41, Thm44, Thm47)");
}

inline void parse_certificate(const json& j, RunConfig& cfg) {
    const std::string path = "certificate";
    CertificateRequest r;
    r.theorem = parse_theorem(string_field(j, path, "theorem"), path + ".theorem");
    r.m = number_field(j, path, "m");
    r.kappa = optional_number(j, path, "kappa");
    if (r.theorem != Theorem::Thm47) {
        r.R1 = number_field(j, path, "R1");
        r.R2 = number_field(j, path, "R2");
        if (!(r.R1 > 0.0) || !(r.R1 < r.R2)) config_error(path, "radii must satisfy 0 < R1 < R2");
    }
    if (r.theorem == Theorem::Thm44 && !r.kappa) config_error(path + ".kappa", "missing field");
    if (r.kappa && !(*r.kappa > 0.0)) config_error(path + ".kappa", "kappa must be positive");
    if (!(r.m > 0.0)) config_error(path + ".m", "m must be positive");
    cfg.certificate = r;
}

inline void parse_solve(const json& j, RunConfig& cfg) {
    const std::string path = "solve";
    auto& s = cfg.solve;
    s.N = int_field(j, path, "N", s.N);
    if (s.N < 8) config_error(path + ".N", "grid needs at least 8 nodes");
    if (auto v = optional_number(j, path, "tol")) s.tol = *v;
    if (!(s.tol > 0.0)) config_error(path + ".tol", "tolerance must be positive");
    s.max_iter = int_field(j, path, "max_iter", s.max_iter);
    if (s.max_iter < 1) config_error(path + ".max_iter", "must be at least 1");
    if (auto v = optional_number(j, path, "initial_guess")) {
        if (!(*v > 0.0)) config_error(path + ".initial_guess", "must be positive");
        s.initial_guess = *v;
    }
    if (j.contains("bracket")) {
        const auto& b = j.at("bracket");
        if (!b.is_array() || b.size() != 2) config_error(path + ".bracket", "expected [lo, hi]");
        const double lo = number_at(b[0], path + ".bracket[0]"), hi = number_at(b[1], path + ".bracket[1]");
        if (!(lo > 0.0 && lo < hi)) config_error(path + ".bracket", "expected 0 < lo < hi");
        s.bracket = std::pair{lo, hi};
    }
    if (j.contains("polish")) {
        const auto p = string_field(j, path, "polish");
        if (p == "auto") s.polish = Polish::Auto;
        else if (p == "always") s.polish = Polish::Always;
        else if (p == "never") s.polish = Polish::Never;
        else config_error(path + ".polish", "expected auto, always or never");
    }
    s.cheb_degree = int_field(j, path, "cheb_degree", s.cheb_degree);
    if (s.cheb_degree < 4) config_error(path + ".cheb_degree", "must be at least 4");
}

inline void parse_search(const json& j, RunConfig& cfg) {
    const std::string path = "search";
    auto& s = cfg.search;
    s.m_points = int_field(j, path, "m_points", s.m_points);
    s.r_points = int_field(j, path, "r_points", s.r_points);
    if (s.m_points < 1 || s.r_points < 2) config_error(path, "grid sizes too small");
    if (auto v = optional_number(j, path, "r_lo")) s.r_lo = *v;
    if (auto v = optional_number(j, path, "r_hi")) s.r_hi = *v;
    if (!(s.r_lo > 0.0 && s.r_lo < s.r_hi)) config_error(path, "expected 0 < r_lo < r_hi");
    if (j.contains("theorem")) s.theorem = parse_theorem(string_field(j, path, "theorem"), path + ".theorem");
}

inline void parse_check(const json& j, RunConfig& cfg) {
    const std::string path = "check";
    auto& c = cfg.check;
    c.t_grid = int_field(j, path, "t_grid", c.t_grid);
    c.x_grid = int_field(j, path, "x_grid", c.x_grid);
    c.panels = int_field(j, path, "panels", c.panels);
    if (c.t_grid < 2 || c.x_grid < 2 || c.panels < 2) config_error(path, "grid sizes too small");
    if (auto v = optional_number(j, path, "strict_eps")) c.strict_eps = *v;
    if (auto v = optional_number(j, path, "quadrature_tol")) c.quadrature_tol = *v;
    if (c.strict_eps < 0.0 || c.quadrature_tol < 0.0) config_error(path, "tolerances must be >= 0");
    cfg.search.check = c;
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace detail

/// Parses and validates a configuration document.
inline RunConfig parse_config(const std::string& text, const std::string& origin = "<config>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::Config, origin + ":" + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
    }
    RunConfig cfg;
    cfg.name = j.value("name", origin);
    detail::parse_problem(detail::member(j, "", "problem"), cfg);
    if (j.contains("check")) detail::parse_check(j.at("check"), cfg);
    if (j.contains("certificate")) detail::parse_certificate(j.at("certificate"), cfg);
    if (j.contains("solve")) detail::parse_solve(j.at("solve"), cfg);
    if (j.contains("search")) detail::parse_search(j.at("search"), cfg);
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Config, path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

namespace presets {

inline LiebauProblem example_46_problem() {
    const auto e = PeriodicFunction::piecewise_linear(
        {{0.0, -0.00005}, {0.0005, 0.00548239}, {0.9995, 0.00548239}, {1.0, -0.00005}}, 1.0);
    return LiebauProblem::from_mu(1.6, 0.01, 0.005, e);
}

inline LiebauProblem example_48_problem(PeriodicFunction e) { return LiebauProblem::from_mu(1.6, 0.01, 1.49, std::move(e)); }

inline PeriodicFunction example_48_cosine() {
    return PeriodicFunction::trig(1.54215, {{0.002097, 1, 0.0}}, 1.0);
}

/// 1.54215 - 0.02 (t - 3 t^2 + 2 t^3), stored as a single polynomial so p(0) == p(1) exactly.
inline PeriodicFunction example_48_cubic() {
    return PeriodicFunction::poly({1.54215, -0.02, 0.06, -0.04}, 1.0);
}

/// e(t) = 0.1 V0 + 1.8 + (2.1 - V0) cos t - 3 cos^2 t, written with cos^2 = (1 + cos 2t)/2.
inline LiebauProblem propst_problem(double V0 = 4.0) {
    const double T = 2.0 * std::numbers::pi;
    const auto e = PeriodicFunction::trig(0.1 * V0 + 1.8 - 1.5, {{2.1 - V0, 1, 0.0}, {-1.5, 2, 0.0}}, T);
    return LiebauProblem::from_b(0.0, 2.0, 0.1, e);
}

/// Mean of the exact regular solution (V0 - 2 + cos t)^3; a start inside its basin.
inline double propst_guess(double V0 = 4.0) {
    const double k = V0 - 2.0;
    return k * k * k + 1.5 * k;
}

inline std::vector<std::string> names() {
    return {"example-4.6", "example-4.8-cosine", "example-4.8-cubic", "propst"};
}

inline RunConfig get(const std::string& name, double V0 = 4.0) {
    RunConfig cfg;
    cfg.name = name;
    if (name == "example-4.6") {
        cfg.problem = example_46_problem();
        cfg.certificate = CertificateRequest{Theorem::Thm44, 0.7, 2200.0, 25.0, 10000.0};
    } else if (name == "example-4.8-cosine" || name == "example-4.8-cubic") {
        cfg.problem = example_48_problem(name == "example-4.8-cosine" ? example_48_cosine() : example_48_cubic());
        cfg.certificate = CertificateRequest{Theorem::Thm47, 0.7, std::nullopt, 0.0, 0.0};
    } else if (name == "propst") {
        if (!(V0 > 3.0)) fail(ErrorKind::Config, "propst: V0 must exceed 3");
        cfg.problem = propst_problem(V0);
        cfg.solve.initial_guess = propst_guess(V0);
    } else {
        fail(ErrorKind::Config, "unknown preset '" + name + "'");
    }
    return cfg;
}

}  // namespace presets

}  // namespace liebau
