#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(LIEBAU_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string config(const char* name) { return std::string(LIEBAU_CONFIG_DIR) + "/" + name; }

std::string tmp(const char* name) { return (std::filesystem::temp_directory_path() / (std::string("liebau_cli_") + name)).string(); }

}  // namespace

TEST_CASE("greens subcommand", "[cli]") {
    const auto r = run("greens -a 1.6 -m 0.7 -T 1");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("\"c_m\""));
    CHECK_THAT(r.out, ContainsSubstring("0.9414"));
    CHECK(run("greens -a 1.6 -m 3.3 -T 1").code == 2);
    CHECK(run("greens -a 1.6").code == 2);
}

TEST_CASE("certify exit codes", "[cli]") {
    CHECK(run("certify --preset example-4.6").code == 0);
    CHECK(run("certify --preset example-4.8-cosine").code == 0);
    CHECK(run("certify --config " + config("trapezoid.json")).code == 0);
    CHECK(run("certify --config " + config("general.json")).code == 0);
    CHECK(run("certify --preset propst").code == 2);  // no certificate section
    CHECK(run("certify --preset nothing").code == 2);
    CHECK(run("certify").code == 2);

    std::ofstream(tmp("fail.json")) << R"({"problem": {"kind": "liebau", "T": 1, "a": 1.6, "mu": 0.01, "c": 0.005,
        "e": {"type": "piecewise_linear", "points": [[0, -0.00005], [0.0005, 0.00548239], [0.9995, 0.00548239], [1, -0.00005]]}},
        "certificate": {"theorem": "Thm44", "m": 0.7, "kappa": 2300, "R1": 25, "R2": 10000}})";
    CHECK(run("certify --config " + tmp("fail.json")).code == 3);
    std::ofstream(tmp("inapplicable.json")) << R"({"problem": {"kind": "liebau", "T": 1, "a": 1.6, "mu": 0.01, "c": 0.005,
        "e": {"type": "trig", "offset": 0.001, "terms": [{"amplitude": 0.01}]}},
        "certificate": {"theorem": "Thm47", "m": 0.7}})";
    CHECK(run("certify --config " + tmp("inapplicable.json")).code == 4);
    std::ofstream(tmp("broken.json")) << "{ \"problem\": ";
    CHECK(run("certify --config " + tmp("broken.json")).code == 2);
}

TEST_CASE("search is deterministic across thread counts", "[cli]") {
    const auto a = run("search --preset example-4.6 --threads 1");
    const auto b = run("search --preset example-4.6 --threads 3");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::ofstream(tmp("none.json")) << R"({"problem": {"kind": "liebau", "T": 1, "mu": 0.2, "c": 1,
        "e": {"type": "constant", "value": -1}}})";
    const auto none = run("search --config " + tmp("none.json"));
    CHECK(none.code == 5);
    CHECK_THAT(none.out, ContainsSubstring("none"));
}

TEST_CASE("solve and pump", "[cli]") {
    const auto s = run("solve --preset propst -N 256 --csv " + tmp("propst.csv"));
    CHECK(s.code == 0);
    CHECK_THAT(s.out, ContainsSubstring("\"converged\": true"));
    std::ifstream in(tmp("propst.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x,u");
    const auto p = run("pump --preset propst --input " + tmp("propst.csv"));
    CHECK(p.code == 0);
    CHECK_THAT(p.out, ContainsSubstring("\"pumping_detected\": true"));
    CHECK(run("pump --preset example-4.8-cosine").code == 0);
    std::ofstream(tmp("bad.csv")) << "t,x\n0,1\n0.1,abc\n";
    CHECK(run("pump --preset propst --input " + tmp("bad.csv")).code == 2);
    CHECK(run("solve --config " + config("general.json")).code == 0);
    CHECK(run("solve --config " + config("physical.json")).code == 0);
}

TEST_CASE("output is reproducible", "[cli]") {
    CHECK(run("certify --preset example-4.6").out == run("certify --preset example-4.6").out);
    CHECK(run("solve --preset example-4.8-cubic").out == run("solve --preset example-4.8-cubic").out);
}
