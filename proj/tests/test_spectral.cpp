#include "liebau/spectral.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <thread>

using namespace liebau;
using Catch::Approx;

namespace {

std::vector<double> sample(int n, double T, double (*f)(double)) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) v[j] = f(T * j / n);
    return v;
}

double smooth(double t) { return std::exp(std::sin(t)); }
double smooth_d1(double t) { return std::cos(t) * std::exp(std::sin(t)); }
double smooth_d2(double t) { return (std::cos(t) * std::cos(t) - std::sin(t)) * std::exp(std::sin(t)); }

}  // namespace

TEST_CASE("spectral derivatives of a smooth periodic function", "[spectral]") {
    const double T = 2 * std::numbers::pi;
    for (int n : {32, 64, 65}) {
        const auto v = sample(n, T, smooth);
        const auto d1 = spectral::derivative(v, T, 1);
        const auto d2 = spectral::derivative(v, T, 2);
        for (int j = 0; j < n; ++j) {
            CHECK(d1[j] == Approx(smooth_d1(T * j / n)).margin(1e-11));
            CHECK(d2[j] == Approx(smooth_d2(T * j / n)).margin(1e-10));
        }
    }
}

TEST_CASE("trigonometric interpolant", "[spectral]") {
    const double T = 2 * std::numbers::pi;
    const auto v = sample(64, T, smooth);
    const spectral::TrigInterpolant ti(v, T);
    for (double t : {0.1, 1.234, 5.9}) {
        CHECK(ti(t) == Approx(smooth(t)).margin(1e-13));
        CHECK(ti(t, 1) == Approx(smooth_d1(t)).margin(1e-11));
    }
    const auto fine = ti.resample(256);
    for (int j = 0; j < 256; ++j) CHECK(fine[j] == Approx(smooth(T * j / 256)).margin(1e-13));
    CHECK_THROWS_AS(ti.resample(32), Error);
}

TEST_CASE("Nyquist mode survives resampling", "[spectral]") {
    // cos(pi j) on 8 points is the Nyquist cosine; interpolant is cos(4 t)
    const double T = 2 * std::numbers::pi;
    std::vector<double> v(8);
    for (int j = 0; j < 8; ++j) v[j] = (j % 2) ? -1.0 : 1.0;
    const spectral::TrigInterpolant ti(v, T);
    const auto same = ti.resample(8);
    for (int j = 0; j < 8; ++j) CHECK(same[j] == Approx(v[j]).margin(1e-14));
    const auto fine = ti.resample(32);
    for (int j = 0; j < 32; ++j) CHECK(fine[j] == Approx(std::cos(4 * T * j / 32)).margin(1e-14));
}

TEST_CASE("periodic trapezoid integral", "[spectral]") {
    const double T = 2 * std::numbers::pi;
    // integral of exp(sin t) over a period is 2 pi I0(1)
    CHECK(spectral::periodic_integral(sample(64, T, smooth), T) ==
          Approx(2 * std::numbers::pi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("Chebyshev collocation", "[spectral]") {
    const double T = 3.0;
    const spectral::Chebyshev ch(24, T);
    const auto& t = ch.nodes();
    CHECK(t.front() == 0.0);
    CHECK(t.back() == Approx(T));
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] > t[k - 1]);
    std::vector<double> v;
    for (double s : t) v.push_back(std::sin(s));
    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    const Eigen::VectorXd d1 = ch.D1() * x, d2 = ch.D2() * x;
    for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK(d1[static_cast<Eigen::Index>(k)] == Approx(std::cos(t[k])).margin(1e-11));
        CHECK(d2[static_cast<Eigen::Index>(k)] == Approx(-std::sin(t[k])).margin(1e-9));
    }
    const auto c = ch.coefficients(v);
    const auto dc = ch.derivative_coefficients(c);
    for (double s : {0.0, 0.37, 1.5, 2.99, 3.0}) {
        CHECK(ch.evaluate(c, s) == Approx(std::sin(s)).margin(1e-14));
        CHECK(ch.evaluate(dc, s) == Approx(std::cos(s)).margin(1e-12));
    }
    CHECK_THROWS_AS(spectral::Chebyshev(2, 1.0), Error);
}

TEST_CASE("concurrent transforms", "[spectral]") {
    const double T = 2 * std::numbers::pi;
    std::vector<double> err(4, 1.0);
    std::vector<std::thread> pool;
    for (int w = 0; w < 4; ++w)
        pool.emplace_back([&, w] {
            const int n = 32 + 2 * w;
            const auto d = spectral::derivative(sample(n, T, smooth), T, 1);
            double e = 0.0;
            for (int j = 0; j < n; ++j) e = std::max(e, std::abs(d[j] - smooth_d1(T * j / n)));
            err[w] = e;
        });
    for (auto& th : pool) th.join();
    for (double e : err) CHECK(e < 1e-9);
}
