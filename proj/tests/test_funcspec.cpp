#include "liebau/funcspec.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace liebau;
using Catch::Approx;

namespace {

PeriodicFunction trapezoid() {
    return PeriodicFunction::piecewise_linear(
        {{0.0, -0.00005}, {0.0005, 0.00548239}, {0.9995, 0.00548239}, {1.0, -0.00005}}, 1.0);
}

PeriodicFunction cosine_forcing() { return PeriodicFunction::trig(1.54215, {{0.002097, 1, 0.0}}, 1.0); }

PeriodicFunction cubic_forcing() { return PeriodicFunction::poly({1.54215, -0.02, 0.06, -0.04}, 1.0); }

PeriodicFunction propst_e(double V0) {
    const double T = 2.0 * std::numbers::pi;
    return PeriodicFunction::trig(0.1 * V0 + 0.3, {{2.1 - V0, 1, 0.0}, {-1.5, 2, 0.0}}, T);
}

std::vector<PeriodicFunction> samples() {
    return {PeriodicFunction::constant(-0.3, 2.0),
            trapezoid(),
            cosine_forcing(),
            cubic_forcing(),
            propst_e(4.0),
            PeriodicFunction::trig(-0.2, {{1.0, 1, 0.3}, {0.4, 3, -1.0}}, 3.0),
            PeriodicFunction::sum({{1.0, PeriodicFunction::constant(0.1, 1.0)}, {-2.0, trapezoid()}}),
            PeriodicFunction::sum({{0.5, cosine_forcing()}, {1.0, cubic_forcing()}})};
}

}  // namespace

TEST_CASE("eval of the worked forcings", "[funcspec]") {
    CHECK(cosine_forcing()(0.0) == Approx(1.544247).margin(1e-15));
    for (double t : {0.0005, 0.1, 0.5, 0.9, 0.99949})
        CHECK(trapezoid()(t) == Approx(0.00548239).margin(1e-15));
    // the cubic returns to its start value exactly
    CHECK(cubic_forcing()(0.0) == 1.54215);
    CHECK(cubic_forcing()(1.0) == 1.54215);
    // cos^2 written through the second harmonic
    const auto e = propst_e(4.0);
    for (double t : {0.0, 0.7, 2.0, 4.1}) {
        const double c = std::cos(t);
        CHECK(e(t) == Approx(0.1 * 4 + 1.8 + (2.1 - 4) * c - 3 * c * c).margin(1e-13));
    }
}

TEST_CASE("periodic extension is exact", "[funcspec][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& f : samples()) {
        const double T = f.period();
        for (int i = 0; i < 200; ++i) {
            // grid of representable shifts: t and t + T land on the same wrapped point
            const double t = std::ldexp(std::round(std::ldexp(u(rng) * T, 20)), -20);
            CHECK(f(t + T) == f(t));
            CHECK(f(t - T) == f(t));
        }
        CHECK(f(0.0) == f(T));
    }
}

TEST_CASE("construction rejects malformed functions", "[funcspec]") {
    CHECK_THROWS_AS(PeriodicFunction::constant(1.0, 0.0), Error);
    CHECK_THROWS_AS(PeriodicFunction::constant(1.0, -1.0), Error);
    // open endpoint data
    CHECK_THROWS_AS(PeriodicFunction::piecewise_linear({{0.0, 1.0}, {1.0, 1.0 + 1e-16 * 4}}, 1.0), Error);
    CHECK_THROWS_AS(PeriodicFunction::piecewise_linear({{0.0, 1.0}, {0.5, 0.0}, {0.5, 2.0}, {1.0, 1.0}}, 1.0),
                    Error);
    CHECK_THROWS_AS(PeriodicFunction::piecewise_linear({{0.1, 1.0}, {1.0, 1.0}}, 1.0), Error);
    CHECK_THROWS_AS(PeriodicFunction::poly({0.0, 1.0}, 1.0), Error);
    CHECK_THROWS_AS(PeriodicFunction::trig(0.0, {{1.0, 0, 0.0}}, 1.0), Error);
    CHECK_THROWS_AS(PeriodicFunction::sum({{1.0, PeriodicFunction::constant(1.0, 1.0)},
                                           {1.0, PeriodicFunction::constant(1.0, 2.0)}}),
                    Error);
    try {
        PeriodicFunction::constant(1.0, 0.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadPeriod);
    }
}

TEST_CASE("extrema", "[funcspec]") {
    SECTION("trapezoid is exact") {
        const auto ex = extrema(trapezoid());
        CHECK(ex.exact);
        CHECK(ex.min == -0.00005);
        CHECK(ex.max == 0.00548239);
    }
    SECTION("constant") {
        const auto ex = extrema(PeriodicFunction::constant(3.5, 2.0));
        CHECK(ex.min == 3.5);
        CHECK(ex.max == 3.5);
    }
    SECTION("cubic against its stationary points") {
        // p(t) = 1.54215 - 0.02 (t - 3t^2 + 2t^3), stationary at (6 -+ sqrt 12)/12
        auto p = [](double t) { return 1.54215 - 0.02 * (t - 3 * t * t + 2 * t * t * t); };
        const double t1 = (6.0 - std::sqrt(12.0)) / 12.0, t2 = (6.0 + std::sqrt(12.0)) / 12.0;
        const auto ex = extrema(cubic_forcing());
        CHECK_FALSE(ex.exact);
        CHECK(ex.min == Approx(p(t1)).margin(1e-15));
        CHECK(ex.max == Approx(p(t2)).margin(1e-15));
        CHECK(ex.min == Approx(1.540226).margin(1e-6));
        CHECK(ex.max == Approx(1.544074).margin(1e-6));
        CHECK(ex.argmin == Approx(t1).margin(1e-6));
    }
    SECTION("cosine") {
        const auto ex = extrema(cosine_forcing());
        CHECK(ex.max == Approx(1.544247).margin(1e-15));
        CHECK(ex.min == Approx(1.540053).margin(1e-15));
    }
}

TEST_CASE("extrema bracket every sample", "[funcspec][property]") {
    for (const auto& f : samples()) {
        const auto ex = extrema(f);
        const double slack = ex.exact ? 0.0 : 1e-10 * (1.0 + std::abs(ex.max));
        const double T = f.period();
        for (int i = 0; i < 10000; ++i) {
            const double v = f(T * i / 10000.0);
            REQUIRE(v >= ex.min - slack);
            REQUIRE(v <= ex.max + slack);
        }
    }
}

TEST_CASE("mean", "[funcspec]") {
    CHECK(mean(propst_e(4.0)) == Approx(0.7).margin(1e-15));
    CHECK(mean(PeriodicFunction::constant(-2.5, 3.0)) == -2.5);
    // e* (t2 - t1) plus two ramps at their midpoint value
    const double ramp = 0.5 * (0.00548239 - 0.00005);
    const double exact = 0.00548239 * 0.999 + 2 * 0.0005 * ramp;
    CHECK(mean(trapezoid()) == Approx(exact).margin(1e-18));
    CHECK(mean(trapezoid()) == Approx(0.00547963).margin(1e-8));
    // odd part of the cubic integrates to zero
    CHECK(mean(cubic_forcing()) == Approx(1.54215).margin(1e-15));
}

TEST_CASE("mean of a trigonometric polynomial is its offset", "[funcspec][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const double offset = u(rng);
        std::vector<Harmonic> terms;
        for (int k = 1; k <= 4; ++k) terms.push_back({u(rng), k, u(rng)});
        CHECK(mean(PeriodicFunction::trig(offset, terms, 1.0 + std::abs(u(rng)))) == offset);
    }
}

TEST_CASE("mean against quadrature", "[funcspec][property]") {
    for (const auto& f : samples()) {
        const double T = f.period();
        const int n = 1 << 16;
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += f(T * (i + 0.5) / n);
        CHECK(mean(f) == Approx(s / n).margin(1e-9));
    }
}

TEST_CASE("positive part", "[funcspec]") {
    SECTION("trapezoid crossing on the first ramp") {
        const auto p = positive_part(trapezoid());
        REQUIRE(p.is_exact());
        REQUIRE(p.crossings().size() == 2);
        const double expected = 0.0005 * 0.00005 / (0.00548239 + 0.00005);
        CHECK(p.crossings().front() == Approx(expected).epsilon(1e-12));
        CHECK(p.crossings().front() == Approx(4.519e-6).epsilon(1e-3));
        CHECK(p(0.0) == 0.0);
        CHECK(p(0.5) == 0.00548239);
    }
    SECTION("nonnegative function is unchanged") {
        const auto f = cosine_forcing();
        const auto p = positive_part(f);
        for (int i = 0; i <= 100; ++i) CHECK(p(i / 100.0) == f(i / 100.0));
    }
    SECTION("negative constant") {
        const auto p = positive_part(PeriodicFunction::constant(-1.0, 1.0));
        for (int i = 0; i <= 10; ++i) CHECK(p(i / 10.0) == 0.0);
        CHECK(p.mean() == 0.0);
    }
}

TEST_CASE("mean of the positive part dominates", "[funcspec][property]") {
    for (const auto& f : samples()) {
        const auto p = positive_part(f);
        CHECK(p.mean() >= std::max(mean(f), 0.0) - 1e-12);
        for (int i = 0; i < 1000; ++i) {
            const double t = f.period() * i / 1000.0;
            CHECK(p(t) == Approx(std::max(f(t), 0.0)).margin(1e-15));
        }
    }
}

TEST_CASE("positive part of a sign-changing trig polynomial", "[funcspec]") {
    // e+ of cos t over [0, 2 pi] integrates to 2
    const auto p = positive_part(PeriodicFunction::trig(0.0, {{1.0, 1, 0.0}}, 2.0 * std::numbers::pi));
    CHECK_FALSE(p.is_exact());
    CHECK(p.crossings().size() == 2);
    CHECK(p.mean() * 2.0 * std::numbers::pi == Approx(2.0).margin(1e-10));
}

TEST_CASE("constant detection and breakpoints", "[funcspec]") {
    CHECK(PeriodicFunction::constant(2.0, 1.0).constant_value() == 2.0);
    CHECK_FALSE(cosine_forcing().constant_value().has_value());
    const auto bp = trapezoid().breakpoints();
    REQUIRE(bp.size() == 2);
    CHECK(bp[0] == 0.0005);
    CHECK(bp[1] == 0.9995);
    CHECK(trapezoid().scaled(2.0)(0.5) == 2 * 0.00548239);
}
