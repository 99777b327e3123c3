// Command-line front end: greens, certify, search, solve, pump, verify.
//
// Exit codes: 0 success/pass, 2 configuration or validation error, 3 certificate
// fails, 4 certificate inapplicable, 5 search found nothing, 6 solve did not converge.

#include "liebau/acceptance.hpp"
#include "liebau/liebau.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace liebau;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kFail = 3;
constexpr int kInapplicable = 4;
constexpr int kNone = 5;
constexpr int kNotConverged = 6;

struct Source {
    std::string preset;
    std::string config;
    double V0 = 4.0;
};

RunConfig load(const Source& src) {
    if (!src.preset.empty() && !src.config.empty()) fail(ErrorKind::Config, "use either --preset or --config");
    if (!src.preset.empty()) return presets::get(src.preset, src.V0);
    if (!src.config.empty()) return load_config(src.config);
    fail(ErrorKind::Config, "a problem is required: --preset NAME or --config FILE");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Config, path + ": cannot write");
    out << text;
}

void add_source(CLI::App* app, Source& src) {
    app->add_option("--preset", src.preset, "built-in problem")
        ->check(CLI::IsMember({"example-4.6", "example-4.8-cosine", "example-4.8-cubic", "propst"}));
    app->add_option("--config", src.config, "JSON configuration file")->check(CLI::ExistingFile);
    app->add_option("--V0", src.V0, "volume for the propst preset");
}

void print_warnings(const RunConfig& cfg) {
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
}

int verdict_code(const Certificate& c) {
    switch (c.verdict) {
        case Verdict::Pass: return kOk;
        case Verdict::Fail: return kFail;
        case Verdict::Inapplicable: return kInapplicable;
    }
    return kFail;
}

Certificate run_certificate(const RunConfig& cfg) {
    if (!cfg.certificate) fail(ErrorKind::Config, "certificate: missing section (theorem, m, kappa, R1, R2)");
    const auto& r = *cfg.certificate;
    switch (r.theorem) {
        case Theorem::Thm41: {
            // comparison functions of the constant form g0 = m^2 R1, g1 = m^2 R2
            const double m2 = r.m * r.m;
            return check_H(cfg.general(), r.m, r.R1, r.R2, SourceTerm::constant(m2 * r.R1),
                           SourceTerm::constant(m2 * r.R2), cfg.check);
        }
        case Theorem::Thm44: {
            const auto lp = cfg.liebau();
            if (!lp) fail(ErrorKind::Config, "certificate.theorem: Thm44 needs a liebau or physical problem");
            return check_thm44(*lp, r.m, *r.kappa, r.R1, r.R2, cfg.check);
        }
        case Theorem::Thm47: {
            const auto lp = cfg.liebau();
            if (!lp) fail(ErrorKind::Config, "certificate.theorem: Thm47 needs a liebau or physical problem");
            return check_thm47(*lp, r.m, cfg.check);
        }
    }
    fail(ErrorKind::Config, "certificate.theorem: unknown");
}

GridSolution read_solution_csv(const std::string& path, double T, std::optional<double> mu) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Config, path + ": cannot open");
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    int col_u = -1, col_x = -1;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        if (header[i] == "u") col_u = i;
        if (header[i] == "x") col_x = i;
    }
    if (header.empty() || header[0] != "t" || (col_u < 0 && col_x < 0))
        fail(ErrorKind::Config, path + ":1: expected header t,x[,u]");
    if (col_u < 0 && !mu) fail(ErrorKind::Config, path + ": column u missing and the problem has no mu");
    GridSolution u;
    u.T = T;
    u.quantity = "u";
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                cells.push_back(std::stod(cell));
            } catch (const std::exception&) {
                fail(ErrorKind::Config, path + ":" + std::to_string(lineno) + ": not a number '" + cell + "'");
            }
        }
        if (cells.size() != header.size())
            fail(ErrorKind::Config, path + ":" + std::to_string(lineno) + ": wrong number of columns");
        u.nodes.push_back(cells[0]);
        u.values.push_back(col_u >= 0 ? cells[col_u] : std::pow(cells[col_x], *mu));
    }
    if (u.values.size() < 8) fail(ErrorKind::Config, path + ": need at least 8 rows");
    return u;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive periodic solutions of the pipe-tank (Liebau) model"};
    app.require_subcommand(1);

    std::string out_path, csv_path;

    double ga = 0.0, gm = 0.0, gT = 1.0;
    int g_points = 256;
    auto* greens = app.add_subcommand("greens", "periodic Green's function constants and kernel table");
    greens->add_option("-a", ga, "damping a >= 0")->required();
    greens->add_option("-m", gm, "shift m in (0, m_max)")->required();
    greens->add_option("-T", gT, "period")->required();
    greens->add_option("--points", g_points, "kernel table resolution")->check(CLI::PositiveNumber);
    greens->add_option("--out", out_path, "JSON output file (default stdout)");
    greens->add_option("--csv", csv_path, "kernel table CSV file");

    Source cert_src;
    auto* certify = app.add_subcommand("certify", "check the certificate named in the configuration");
    add_source(certify, cert_src);
    certify->add_option("--out", out_path, "JSON output file");

    Source search_src;
    unsigned threads = 0;
    auto* search = app.add_subcommand("search", "scan parameters for an existence certificate");
    add_source(search, search_src);
    search->add_option("--threads", threads, "worker threads (default LIEBAU_THREADS or all cores)");
    search->add_option("--out", out_path, "JSON output file");

    Source solve_src;
    int solve_N = 0;
    auto* solve = app.add_subcommand("solve", "periodic solution on a uniform grid");
    add_source(solve, solve_src);
    solve->add_option("-N", solve_N, "grid size")->check(CLI::Range(8, 1 << 22));
    solve->add_option("--out", out_path, "JSON summary file");
    solve->add_option("--csv", csv_path, "solution CSV file (t,x[,u])");

    Source pump_src;
    std::string pump_input;
    auto* pump = app.add_subcommand("pump", "pumping report of a solution");
    add_source(pump, pump_src);
    pump->add_option("--input", pump_input, "solution CSV (default: solve internally)")->check(CLI::ExistingFile);
    pump->add_option("--out", out_path, "JSON output file");

    auto* verify = app.add_subcommand("verify", "run the regression suite over the worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*greens) {
            const auto k = GreensKernel::build(ga, gm, gT);
            emit(io::to_json(k), out_path);
            if (!csv_path.empty()) emit(io::kernel_csv(k, g_points), csv_path);
            return kOk;
        }
        if (*certify) {
            const auto cfg = load(cert_src);
            print_warnings(cfg);
            const auto cert = run_certificate(cfg);
            emit(io::to_json(cert), out_path);
            return verdict_code(cert);
        }
        if (*search) {
            const auto cfg = load(search_src);
            print_warnings(cfg);
            const auto lp = cfg.liebau();
            if (!lp) fail(ErrorKind::Config, "problem: search needs a liebau or physical problem");
            auto opt = cfg.search;
            opt.threads = threads;
            const auto cert = search_certificate(*lp, opt);
            if (!cert) {
                emit("\"none\"\n", out_path);
                return kNone;
            }
            emit(io::to_json(*cert), out_path);
            return kOk;
        }
        if (*solve || *pump) {
            const auto& src = *solve ? solve_src : pump_src;
            const auto cfg = load(src);
            print_warnings(cfg);
            const auto lp = cfg.liebau();
            std::optional<double> mu;
            if (lp) mu = lp->mu();
            if (*pump) {
                if (!lp) fail(ErrorKind::Config, "problem: pump needs a liebau or physical problem");
                GridSolution u;
                if (!pump_input.empty()) {
                    u = read_solution_csv(pump_input, lp->period(), mu);
                } else {
                    try {
                        u = x_to_u(solve_periodic(cfg.general(), cfg.solve), lp->mu());
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::NoConvergence && e.kind() != ErrorKind::LeftPositiveCone) throw;
                        std::cerr << "error: " << e.what() << "\n";
                        return kNotConverged;
                    }
                }
                emit(io::to_json(pump_report(*lp, u)), out_path);
                return kOk;
            }
            auto opt = cfg.solve;
            if (solve_N > 0) opt.N = solve_N;
            GridSolution s;
            try {
                s = solve_periodic(cfg.general(), opt);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NoConvergence && e.kind() != ErrorKind::LeftPositiveCone) throw;
                std::cerr << "error: " << e.what() << "\n";
                return kNotConverged;
            }
            emit(io::to_json(s), out_path);
            if (!csv_path.empty()) emit(io::solution_csv(s, mu), csv_path);
            return s.converged ? kOk : kNotConverged;
        }
        if (*verify) {
            bool all = true;
            for (const auto& r : acceptance::run_all()) {
                std::printf("%-4s %2d  %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str());
                all = all && r.passed;
            }
            return all ? kOk : kFail;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}
