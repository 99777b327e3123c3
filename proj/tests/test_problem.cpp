#include "liebau/problem.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace liebau;
using Catch::Approx;

namespace {

GeneralProblem constant_problem(double r, double s, double alpha, double beta) {
    return GeneralProblem(0.0, PeriodicFunction::constant(r, 1.0), PeriodicFunction::constant(s, 1.0), alpha, beta);
}

}  // namespace

TEST_CASE("physical parameters map to the scalar equation", "[problem]") {
    PhysicalConfig cfg;
    cfg.r0 = 0.8;
    cfg.rho = 2.0;
    cfg.zeta = 1.0;
    cfg.g = 9.8;
    cfg.A_pi = 0.01;
    cfg.A_tau = 0.98;
    cfg.V0 = 0.5;
    cfg.p = PeriodicFunction::trig(0.0, {{1.0, 1, 0.0}}, 1.0);
    std::vector<std::string> warnings;
    const auto lp = from_physical(cfg, &warnings);
    CHECK(warnings.empty());
    CHECK(lp.a() == Approx(0.4));
    CHECK(lp.b() == Approx(1.5));
    CHECK(lp.mu() == Approx(0.4));
    CHECK(lp.c() == Approx(0.1));
    // e = g V0 / A_tau - p / rho
    CHECK(lp.e()(0.0) == Approx(9.8 * 0.5 / 0.98 - 0.5));
    CHECK(lp.e()(0.5) == Approx(9.8 * 0.5 / 0.98 + 0.5));
}

TEST_CASE("physical validation", "[problem]") {
    PhysicalConfig cfg;
    cfg.p = PeriodicFunction::constant(0.0, 1.0);
    cfg.zeta = 0.5;
    CHECK_THROWS_AS(from_physical(cfg), Error);
    cfg.zeta = 1.0;
    cfg.A_pi = 2.0;
    std::vector<std::string> warnings;
    from_physical(cfg, &warnings);
    CHECK(warnings.size() == 1);
}

TEST_CASE("scalar problem validation", "[problem]") {
    const auto e = PeriodicFunction::constant(1.0, 1.0);
    CHECK_THROWS_AS(LiebauProblem::from_mu(-0.1, 0.2, 1.0, e), Error);
    CHECK_THROWS_AS(LiebauProblem::from_mu(0.0, 0.5, 1.0, e), Error);
    CHECK_THROWS_AS(LiebauProblem::from_mu(0.0, 0.2, 0.0, e), Error);
    CHECK_THROWS_AS(LiebauProblem::from_b(0.0, 1.0, 1.0, e), Error);
    CHECK(LiebauProblem::from_b(0.0, 3.0, 1.0, e).mu() == 0.25);
}

TEST_CASE("regularization", "[problem]") {
    const auto e = PeriodicFunction::trig(1.5, {{0.2, 1, 0.0}}, 1.0);
    const auto lp = LiebauProblem::from_mu(1.6, 0.01, 0.005, e);
    const auto gp = regularize(lp);
    CHECK(gp.alpha() == Approx(0.98));
    CHECK(gp.beta() == Approx(0.99));
    CHECK(gp.s().constant_value().value() == Approx(0.5));
    CHECK(gp.r()(0.0) == Approx(170.0));
    CHECK(gp.origin().has_value());
    GeneralProblem(0.0, e, e, 0.3, 0.6);
    CHECK_THROWS_AS(GeneralProblem(0.0, e, e, 0.6, 0.3), Error);
    CHECK_THROWS_AS(GeneralProblem(0.0, e, e, 0.0, 0.3), Error);
    CHECK_THROWS_AS(GeneralProblem(0.0, e, PeriodicFunction::constant(1.0, 2.0), 0.3, 0.6), Error);
}

TEST_CASE("deregularize inverts regularize", "[problem][property]") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const auto e = PeriodicFunction::trig(u(rng), {{u(rng), 1, u(rng)}}, 0.5 + u(rng));
        const auto lp = LiebauProblem::from_mu(u(rng), 0.01 + 0.48 * u(rng), 0.1 + u(rng), e);
        const auto back = deregularize(regularize(lp));
        CHECK(back.a() == lp.a());
        CHECK(back.mu() == Approx(lp.mu()).epsilon(1e-14));
        CHECK(back.c() == Approx(lp.c()).epsilon(1e-14));
        for (double t : {0.0, 0.2, 0.7}) CHECK(back.e()(t) == Approx(lp.e()(t)).epsilon(1e-14));
    }
}

TEST_CASE("regularized equation matches the transformed singular one", "[problem][property]") {
    // with x = u^{1/mu}: mu x^{1-2mu} (e - c u) / mu == r x^alpha - s x^beta
    const auto e = PeriodicFunction::trig(2.0, {{0.5, 1, 0.0}}, 1.0);
    const auto lp = LiebauProblem::from_mu(0.3, 0.2, 0.7, e);
    const auto gp = regularize(lp);
    for (double x : {0.1, 1.0, 7.0}) {
        const double u = std::pow(x, lp.mu());
        for (double t : {0.0, 0.4}) {
            const double lhs = std::pow(x, 1 - 2 * lp.mu()) * (e(t) - lp.c() * u) / lp.mu();
            CHECK(rhs(gp, t, x) == Approx(lhs).epsilon(1e-13));
        }
    }
}

TEST_CASE("shifted nonlinearity", "[problem]") {
    CHECK(f_m(constant_problem(0.0, 1.0, 0.25, 0.5), 1.0, 0.0, 4.0) == Approx(2.0).epsilon(1e-15));
    CHECK(f_m(constant_problem(2.0, 1.0, 0.5, 0.75), 0.5, 0.0, 16.0) == Approx(4.0).epsilon(1e-15));
    CHECK(f_m(constant_problem(2.0, 1.0, 0.5, 0.75), 0.5, 0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(f_m(constant_problem(2.0, 1.0, 0.5, 0.75), 0.5, 0.0, -1.0), Error);
    try {
        f_m(constant_problem(2.0, 1.0, 0.5, 0.75), 0.5, 0.0, -1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NegativeState);
    }
    // derivative against central difference
    const auto gp = constant_problem(2.0, 1.0, 0.5, 0.75);
    const double x = 3.0, h = 1e-6;
    CHECK(rhs_dx(gp, 0.0, x) == Approx((rhs(gp, 0.0, x + h) - rhs(gp, 0.0, x - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("shift only adds m^2 x", "[problem][property]") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto gp = regularize(LiebauProblem::from_mu(1.0, 0.1, 0.3, PeriodicFunction::constant(0.7, 1.0)));
    for (int i = 0; i < 100; ++i) {
        const double m = 2 * u(rng), x = 50 * u(rng), t = u(rng);
        CHECK(f_m(gp, m, t, x) - m * m * x == Approx(rhs(gp, t, x)).margin(1e-12 * (1 + m * m * x)));
    }
}

TEST_CASE("truncated nonlinearity", "[problem][property]") {
    const auto gp = constant_problem(2.0, 1.0, 0.5, 0.75);
    const double m = 0.5, cm = 0.9, R1 = 1.0, R2 = 20.0;
    double prev = f_m_truncated(gp, m, cm, R1, R2, 0.0, 0.0);
    for (int i = 0; i <= 4000; ++i) {
        const double x = 25.0 * i / 4000.0;
        const double v = f_m_truncated(gp, m, cm, R1, R2, 0.0, x);
        REQUIRE(v >= 0.0);
        REQUIRE(std::abs(v - prev) < 0.05);
        if (x >= cm * R1 && x <= R2) REQUIRE(v == std::max(f_m(gp, m, 0.0, x), 0.0));
        prev = v;
    }
    CHECK_THROWS_AS(f_m_truncated(gp, m, cm, 2.0, 1.0, 0.0, 1.0), Error);
    try {
        f_m_truncated(gp, m, cm, 0.0, 1.0, 0.0, 1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadRadii);
    }
}

TEST_CASE("breakpoints union", "[problem]") {
    const auto r = PeriodicFunction::piecewise_linear({{0.0, 1.0}, {0.3, 2.0}, {1.0, 1.0}}, 1.0);
    const auto s = PeriodicFunction::piecewise_linear({{0.0, 1.0}, {0.3, 0.5}, {0.6, 2.0}, {1.0, 1.0}}, 1.0);
    const auto bp = GeneralProblem(0.0, r, s, 0.3, 0.6).breakpoints();
    REQUIRE(bp.size() == 2);
    CHECK(bp[0] == 0.3);
    CHECK(bp[1] == 0.6);
}
