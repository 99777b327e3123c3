#pragma once

/**
 * @file spectral.hpp
 * @brief Periodic trigonometric interpolation (FFT based) and Chebyshev
 * collocation utilities on an interval [0, T].
 */

#include "liebau/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace liebau::spectral {

namespace detail {

// FFTW planning is not thread safe; execution with fresh arrays is.
inline std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

inline std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> in(x);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan p;
    {
        std::lock_guard lock(plan_mutex());
        p = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(p);
    {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(p);
    }
    return out;
}

inline std::vector<double> irfft(std::vector<std::complex<double>> c, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    fftw_plan p;
    {
        std::lock_guard lock(plan_mutex());
        p = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(c.data()), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(p);
    {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(p);
    }
    for (double& v : out) v /= n;
    return out;
}

}  // namespace detail

/**
 * Fourier coefficients of a periodic grid trace, normalized so that
 * x(t) = sum_k c_k exp(2 pi i k t / T) with the Nyquist mode split evenly.
 */
class TrigInterpolant {
public:
    TrigInterpolant(const std::vector<double>& values, double period) : n_(static_cast<int>(values.size())), T_(period) {
        if (n_ < 2) fail(ErrorKind::InvalidArgument, "trigonometric interpolation needs at least 2 samples");
        coef_ = detail::rfft(values);
        for (auto& c : coef_) c /= static_cast<double>(n_);
    }

    int size() const noexcept { return n_; }
    double period() const noexcept { return T_; }

    /// d-th derivative at t by direct summation.
    double operator()(double t, int d = 0) const {
        const double w = 2.0 * std::numbers::pi / T_;
        double v = d == 0 ? coef_[0].real() : 0.0;
        const int kmax = n_ / 2;
        for (int k = 1; k <= kmax; ++k) {
            const double weight = (n_ % 2 == 0 && k == kmax) ? 1.0 : 2.0;
            const std::complex<double> ik(0.0, w * k);
            std::complex<double> z = coef_[k] * std::exp(std::complex<double>(0.0, w * k * t));
            for (int j = 0; j < d; ++j) z *= ik;
            v += weight * z.real();
        }
        return v;
    }

    /// Values of the d-th derivative on a uniform grid of m >= n points.
    std::vector<double> resample(int m, int d = 0) const {
        if (m < n_) fail(ErrorKind::InvalidArgument, "resampling must not reduce the grid");
        std::vector<std::complex<double>> c(static_cast<std::size_t>(m / 2 + 1), {0.0, 0.0});
        const double w = 2.0 * std::numbers::pi / T_;
        const int kmax = n_ / 2;
        for (int k = 0; k <= kmax; ++k) {
            std::complex<double> z = coef_[k];
            for (int j = 0; j < d; ++j) z *= std::complex<double>(0.0, w * k);
            if (n_ % 2 == 0 && k == kmax && k > 0) {
                // the Nyquist cosine: kept whole on the same grid, split between +k and -k on a finer one
                if (m == n_) z = {z.real(), 0.0};
                else z *= 0.5;
            }
            c[k] = z * static_cast<double>(m);
        }
        return detail::irfft(std::move(c), m);
    }

private:
    int n_;
    double T_;
    std::vector<std::complex<double>> coef_;
};

/// Spectral d-th derivative of a periodic grid trace.
inline std::vector<double> derivative(const std::vector<double>& values, double period, int d = 1) {
    return TrigInterpolant(values, period).resample(static_cast<int>(values.size()), d);
}

/// Periodic trapezoid rule: (T/N) sum x_j, spectrally accurate for smooth data.
inline double periodic_integral(const std::vector<double>& values, double period) {
    double s = 0.0;
    for (double v : values) s += v;
    return s * period / static_cast<double>(values.size());
}

/**
 * Chebyshev-Lobatto collocation on [0, T] with n + 1 nodes
 * t_k = T (1 - cos(pi k / n)) / 2, increasing from 0 to T.
 */
class Chebyshev {
public:
    Chebyshev(int n, double period) : n_(n), T_(period) {
        if (n < 4) fail(ErrorKind::InvalidArgument, "Chebyshev degree must be at least 4");
        nodes_.resize(static_cast<std::size_t>(n) + 1);
        std::vector<double> xs(nodes_.size());
        for (int k = 0; k <= n; ++k) {
            xs[k] = -std::cos(std::numbers::pi * k / n);
            nodes_[k] = 0.5 * T_ * (1.0 + xs[k]);
        }
        // first-derivative matrix on [-1, 1] with negative-sum diagonal, scaled to [0, T]
        D1_ = Eigen::MatrixXd::Zero(n + 1, n + 1);
        auto cw = [&](int k) { return (k == 0 || k == n) ? 2.0 : 1.0; };
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                if (i == j) continue;
                const double sgn = ((i + j) % 2) ? -1.0 : 1.0;
                D1_(i, j) = cw(i) / cw(j) * sgn / (xs[i] - xs[j]);
            }
            D1_(i, i) = -D1_.row(i).sum();
        }
        D1_ *= 2.0 / T_;
        D2_ = D1_ * D1_;
    }

    int degree() const noexcept { return n_; }
    double period() const noexcept { return T_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const Eigen::MatrixXd& D1() const noexcept { return D1_; }
    const Eigen::MatrixXd& D2() const noexcept { return D2_; }

    /// Chebyshev series coefficients of the interpolant through node values.
    std::vector<double> coefficients(const std::vector<double>& values) const {
        std::vector<double> c(static_cast<std::size_t>(n_) + 1, 0.0);
        for (int j = 0; j <= n_; ++j) {
            double s = 0.0;
            for (int k = 0; k <= n_; ++k) {
                const double w = (k == 0 || k == n_) ? 0.5 : 1.0;
                // node k sits at x = -cos(pi k/n) = cos(pi (n-k)/n)
                s += w * values[k] * std::cos(std::numbers::pi * j * (n_ - k) / n_);
            }
            c[j] = s * 2.0 / n_ * ((j == 0 || j == n_) ? 0.5 : 1.0);
        }
        return c;
    }

    /// Coefficients of the derivative series (with respect to t).
    std::vector<double> derivative_coefficients(const std::vector<double>& c) const {
        const int n = static_cast<int>(c.size()) - 1;
        std::vector<double> d(c.size(), 0.0);
        if (n >= 1) {
            for (int k = n - 1; k >= 0; --k) {
                const double next = (k + 2 <= n) ? d[k + 2] : 0.0;
                d[k] = next + 2.0 * (k + 1) * c[k + 1];
            }
            d[0] *= 0.5;
        }
        for (double& v : d) v *= 2.0 / T_;
        return d;
    }

    /// Clenshaw evaluation of a Chebyshev series at t in [0, T].
    double evaluate(const std::vector<double>& c, double t) const {
        const double x = 2.0 * t / T_ - 1.0;
        double b1 = 0.0, b2 = 0.0;
        for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
            const double b0 = 2.0 * x * b1 - b2 + c[k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + c[0];
    }

private:
    int n_;
    double T_;
    std::vector<double> nodes_;
    Eigen::MatrixXd D1_, D2_;
};

}  // namespace liebau::spectral
