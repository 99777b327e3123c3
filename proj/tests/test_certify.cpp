#include "liebau/certify.hpp"
#include "liebau/config.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace liebau;
using Catch::Approx;

namespace {

LiebauProblem c6_problem() {
    return presets::example_48_problem(PeriodicFunction::trig(1.541075, {{-0.001075, 1, 0.0}}, 1.0));
}

}  // namespace

TEST_CASE("constant comparison functions make H4 and H7 tight", "[certify]") {
    // g0 = m^2 R1 and g1 = m^2 R2: the integral conditions hold with equality
    const auto gp = regularize(presets::example_48_problem(PeriodicFunction::constant(1.54, 1.0)));
    const double m = 0.7, R1 = 20.0, R2 = 40.0;
    const auto cert = check_H(gp, m, R1, R2, SourceTerm::constant(m * m * R1), SourceTerm::constant(m * m * R2));
    const auto* h4 = cert.find("H4");
    const auto* h7 = cert.find("H7");
    REQUIRE(h4);
    REQUIRE(h7);
    CHECK(std::abs(h4->relative_margin()) < 1e-9);
    CHECK(std::abs(h7->relative_margin()) < 1e-9);
    CHECK(h4->satisfied);
    CHECK(h7->satisfied);
}

TEST_CASE("check_H rejects bad radii", "[certify]") {
    const auto gp = regularize(presets::example_48_problem(PeriodicFunction::constant(1.54, 1.0)));
    CHECK_THROWS_AS(check_H(gp, 0.7, 2.0, 1.0, SourceTerm::constant(1), SourceTerm::constant(1)), Error);
    CHECK_THROWS_AS(check_H(gp, 0.7, 0.0, 1.0, SourceTerm::constant(1), SourceTerm::constant(1)), Error);
}

TEST_CASE("trapezoid certificate", "[certify]") {
    const auto lp = presets::example_46_problem();
    const auto cert = check_thm44(lp, 0.7, 2200.0, 25.0, 10000.0);
    CHECK(cert.theorem == Theorem::Thm44);
    CHECK(cert.passed());
    CHECK(cert.c_m == Approx(0.94144005).epsilon(1e-7));
    // C2: (c_m R1)^{1-2mu} >= kappa mu
    const auto* c2 = cert.find("C2");
    REQUIRE(c2);
    CHECK(c2->lhs == Approx(std::pow(0.94144005 * 25.0, 0.98)).epsilon(1e-7));
    CHECK(c2->lhs == Approx(22.095).margin(1e-3));
    CHECK(c2->rhs == Approx(22.0));
    const auto* c4 = cert.find("C4");
    REQUIRE(c4);
    CHECK(c4->relative_margin() > 0.0);
    CHECK(c4->relative_margin() < 1e-5);
    CHECK(cert.values.at("kappa_lower") == Approx(2191.13).margin(0.01));
    CHECK(cert.values.at("kappa_upper") == Approx(2209.52).margin(0.01));
    CHECK(cert.lower == Approx(0.94144005 * 25.0));
    CHECK(cert.upper == 10000.0);
}

TEST_CASE("trapezoid certificate fails outside the kappa interval", "[certify]") {
    const auto lp = presets::example_46_problem();
    CHECK_FALSE(check_thm44(lp, 0.7, 2180.0, 25.0, 10000.0).passed());
    CHECK_FALSE(check_thm44(lp, 0.7, 2220.0, 25.0, 10000.0).passed());
    // R2 too small for e^*
    CHECK_FALSE(check_thm44(lp, 0.7, 2200.0, 25.0, 9000.0).passed());
}

TEST_CASE("thm44 argument errors", "[certify]") {
    const auto lp = presets::example_46_problem();
    try {
        check_thm44(lp, 0.7, 0.0, 25.0, 10000.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::KappaNonpositive);
    }
    try {
        check_thm44(lp, 0.7, 2200.0, 25.0, 20.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadRadii);
    }
}

TEST_CASE("positive forcing certificate", "[certify]") {
    const auto lp = c6_problem();
    const auto cert = check_thm47(lp, 0.7);
    CHECK(cert.theorem == Theorem::Thm47);
    CHECK(cert.passed());
    const auto* c6 = cert.find("C6");
    REQUIRE(c6);
    CHECK(c6->lhs == Approx(0.2884).margin(1e-3));
    CHECK(c6->rhs == Approx(0.49));
    CHECK(cert.values.at("e_max_threshold") == Approx(1.5443).margin(1e-3));
    // R2 = (e^*/c)^{1/mu} / c_m
    CHECK(cert.params.R2 == Approx(std::pow(1.54215 / 1.49, 100.0) / cert.c_m).epsilon(1e-9));
    // R1 satisfies its defining quadratic with equality
    const double y = std::pow(cert.params.R1, 0.01);
    const double lhs = (1 - cert.c_m) * 0.49 * 0.01 * y * y + 1.49 * y;
    CHECK(lhs == Approx(1.54 * std::pow(cert.c_m, 0.98)).epsilon(1e-12));
}

TEST_CASE("thm47 is inapplicable for sign-changing forcing", "[certify]") {
    const auto cert = check_thm47(presets::example_46_problem(), 0.7);
    CHECK(cert.verdict == Verdict::Inapplicable);
    CHECK_FALSE(cert.passed());
}

TEST_CASE("C6 is monotone in the maximum of the forcing", "[certify][property]") {
    double prev = -1.0;
    for (double amp = 0.0; amp <= 0.02; amp += 0.001) {
        const auto lp = presets::example_48_problem(PeriodicFunction::trig(1.54 + amp, {{-amp, 1, 0.0}}, 1.0));
        const double lhs = check_thm47(lp, 0.7).find("C6")->lhs;
        CHECK(lhs >= prev);
        prev = lhs;
    }
}

TEST_CASE("earlier criterion", "[certify]") {
    const auto cpt = check_cpt_criterion(c6_problem());
    CHECK(cpt.lhs == Approx(36.0406).margin(1e-3));
    CHECK(cpt.rhs == Approx(10.5096).margin(1e-3));
    CHECK_FALSE(cpt.satisfied);
    // small c satisfies it: c^2/(4 mu e_*) = 0.01 / (4 * 0.25 * 1) = 0.01
    const auto small = LiebauProblem::from_mu(0.0, 0.25, 0.1, PeriodicFunction::constant(1.0, 1.0));
    const auto s = check_cpt_criterion(small);
    CHECK(s.lhs == Approx(0.01));
    CHECK(s.rhs == Approx(std::numbers::pi * std::numbers::pi));
    CHECK(s.satisfied);
    CHECK_THROWS_AS(check_cpt_criterion(presets::example_46_problem()), Error);
}

TEST_CASE("necessary condition", "[certify]") {
    const auto n = check_necessary(presets::example_46_problem());
    CHECK(n.satisfied);
    CHECK(n.ebar == Approx(0.00547963).margin(1e-8));
    const auto neg = LiebauProblem::from_mu(1.0, 0.2, 1.0, PeriodicFunction::constant(-1.0, 1.0));
    CHECK_FALSE(check_necessary(neg).satisfied);
}

TEST_CASE("search", "[certify]") {
    SECTION("trapezoid finds a passing tuple") {
        const auto cert = search_certificate(presets::example_46_problem());
        REQUIRE(cert);
        CHECK(cert->theorem == Theorem::Thm44);
        CHECK(cert->passed());
        CHECK(check_thm44(presets::example_46_problem(), cert->params.m, *cert->params.kappa, cert->params.R1,
                          cert->params.R2)
                  .passed());
    }
    SECTION("negative forcing has none") {
        const auto lp = LiebauProblem::from_mu(1.0, 0.2, 1.0, PeriodicFunction::constant(-1.0, 1.0));
        CHECK_FALSE(search_certificate(lp).has_value());
    }
    SECTION("result does not depend on the thread count") {
        const auto lp = presets::example_46_problem();
        SearchOptions o1, o4;
        o1.threads = 1;
        o4.threads = 4;
        const auto a = search_certificate(lp, o1), b = search_certificate(lp, o4);
        REQUIRE(a);
        REQUIRE(b);
        CHECK(a->params.m == b->params.m);
        CHECK(a->params.R1 == b->params.R1);
        CHECK(a->params.R2 == b->params.R2);
        CHECK(*a->params.kappa == *b->params.kappa);
    }
    SECTION("positive forcing uses thm47") {
        const auto cert = search_certificate(c6_problem());
        REQUIRE(cert);
        CHECK(cert->theorem == Theorem::Thm47);
        CHECK(cert->passed());
    }
}

TEST_CASE("passing certificates imply the cone hypotheses", "[certify][property]") {
    const auto lp46 = presets::example_46_problem();
    const auto h46 = check_H_for(lp46, check_thm44(lp46, 0.7, 2200.0, 25.0, 10000.0));
    CHECK(h46.passed());
    const auto lp48 = c6_problem();
    const auto h48 = check_H_for(lp48, check_thm47(lp48, 0.7));
    CHECK(h48.passed());
    for (const auto* name : {"H0", "H1", "H2", "H5", "H3|H4", "H6|H7"}) {
        REQUIRE(h46.find(name));
        CHECK(h46.find(name)->satisfied);
        REQUIRE(h48.find(name));
        CHECK(h48.find(name)->satisfied);
    }
}

TEST_CASE("enum names", "[certify]") {
    CHECK(to_string(Theorem::Thm44) == "Thm44");
    CHECK(to_string(Verdict::Inapplicable) == "Inapplicable");
}

TEST_CASE("C6 follows the forcing extremes", "[certify]") {
    // e_* = 1.54, e^* = 1.544247
    const auto wide = presets::example_48_problem(PeriodicFunction::trig(1.5421235, {{0.0021235, 1, 0.0}}, 1.0));
    CHECK(check_thm47(wide, 0.7).find("C6")->lhs == Approx(0.4848).margin(1e-3));
    const auto cosine = presets::example_48_problem(presets::example_48_cosine());
    CHECK(check_thm47(cosine, 0.7).find("C6")->lhs == Approx(0.4798).margin(1e-3));
}
