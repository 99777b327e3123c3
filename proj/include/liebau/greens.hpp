#pragma once

/**
 * @file greens.hpp
 * @brief Periodic Green's function of  x'' + a x' + m^2 x = h(t),
 *        x(0) = x(T), x'(0) = x'(T).
 *
 * The coefficients are constant, so G_m(t, s) = K((t - s) mod T) with
 *
 *   K(tau) = [ g(l1, tau) - g(l2, tau) ] / (l1 - l2),   g(l, tau) = e^{l tau} / (1 - e^{l T}),
 *
 * for tau in [0, T), where l1, l2 are the roots of l^2 + a l + m^2 = 0.
 * Complex-conjugate roots use the real form Im g(l, tau) / Im l and a double
 * root uses the derivative dg/dl.
 *
 * The kernel is positive exactly inside the antimaximum window
 * 0 < m < sqrt((pi/T)^2 + (a/2)^2).
 */

#include "liebau/error.hpp"
#include "liebau/funcspec.hpp"
#include "liebau/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace liebau {

enum class KernelCase { RealDistinct, DoubleRoot, ComplexPair };

constexpr std::string_view to_string(KernelCase c) {
    switch (c) {
        case KernelCase::RealDistinct: return "RealDistinct";
        case KernelCase::DoubleRoot: return "DoubleRoot";
        case KernelCase::ComplexPair: return "ComplexPair";
    }
    return "?";
}

/// Upper end of the antimaximum window for m.
inline double m_max(double a, double T) {
    const double p = std::numbers::pi / T;
    return std::sqrt(p * p + 0.25 * a * a);
}

struct KernelOptions {
    int scan_points = 4096;
    double refine_tol = 1e-13;
    double diagonal_rel_tol = 1e-10;
};

/// Roots of l^2 + a l + m^2. For real cases `im` is zero and (re1, re2) hold
/// the two roots; for the complex pair re1 == re2 is the real part.
struct CharacteristicRoots {
    double re1 = 0.0;
    double re2 = 0.0;
    double im = 0.0;
};

class GreensKernel {
public:
    static GreensKernel build(double a, double m, double T, const KernelOptions& opt = {}) {
        if (!(T > 0.0) || !std::isfinite(T)) fail(ErrorKind::BadPeriod, "period T must be positive");
        if (!(a >= 0.0) || !std::isfinite(a)) fail(ErrorKind::InvalidArgument, "friction a must be >= 0");
        const double mmax = liebau::m_max(a, T);
        if (!(m > 0.0) || !(m < mmax))
            fail(ErrorKind::MOutOfRange, "m = " + std::to_string(m) + " outside the antimaximum window (0, " +
                                             std::to_string(mmax) + ")");
        GreensKernel k;
        k.a_ = a;
        k.m_ = m;
        k.T_ = T;
        k.m_max_ = mmax;
        const double disc = a * a - 4.0 * m * m;
        if (std::abs(disc) < 1e-9 * std::max(1.0, 4.0 * m * m)) {
            k.case_ = KernelCase::DoubleRoot;
            k.roots_ = {-0.5 * a, -0.5 * a, 0.0};
        } else if (disc > 0.0) {
            k.case_ = KernelCase::RealDistinct;
            const double sq = std::sqrt(disc);
            const double l2 = -0.5 * (a + sq);  // larger magnitude, no cancellation
            const double l1 = m * m / l2;
            k.roots_ = {l1, l2, 0.0};
        } else {
            k.case_ = KernelCase::ComplexPair;
            k.roots_ = {-0.5 * a, -0.5 * a, 0.5 * std::sqrt(-disc)};
        }
        k.finish(opt);
        return k;
    }

    double a() const noexcept { return a_; }
    double m() const noexcept { return m_; }
    double period() const noexcept { return T_; }
    double m_max() const noexcept { return m_max_; }
    KernelCase kernel_case() const noexcept { return case_; }
    const CharacteristicRoots& roots() const noexcept { return roots_; }
    double K0() const noexcept { return K0_; }
    double Kmin() const noexcept { return Kmin_; }
    double Kmax() const noexcept { return Kmax_; }
    double argmax() const noexcept { return argmax_; }
    double cone_constant() const noexcept { return Kmin_ / Kmax_; }

    /// K(tau); tau is reduced modulo T, so K(T) == K(0) exactly.
    double operator()(double tau) const {
        double t = std::fmod(tau, T_);
        if (t < 0.0) t += T_;
        if (t >= T_) t = 0.0;
        return raw(t);
    }

    /// G_m(t, s) = K((t - s) mod T).
    double green(double t, double s) const { return (*this)(t - s); }

private:
    GreensKernel() = default;

    double raw(double tau) const {
        switch (case_) {
            case KernelCase::RealDistinct: {
                const double l1 = roots_.re1, l2 = roots_.re2;
                const double g1 = std::exp(l1 * tau) / (-std::expm1(l1 * T_));
                const double g2 = std::exp(l2 * tau) / (-std::expm1(l2 * T_));
                return (g1 - g2) / (l1 - l2);
            }
            case KernelCase::DoubleRoot: {
                const double l = roots_.re1;
                const double E = std::exp(l * T_);
                const double d = -std::expm1(l * T_);  // 1 - E
                return std::exp(l * tau) * (tau * d + T_ * E) / (d * d);
            }
            case KernelCase::ComplexPair: {
                const std::complex<double> l(roots_.re1, roots_.im);
                const std::complex<double> g = std::exp(l * tau) / (1.0 - std::exp(l * T_));
                return g.imag() / roots_.im;
            }
        }
        return 0.0;
    }

    void finish(const KernelOptions& opt) {
        K0_ = raw(0.0);
        const int n = std::max(opt.scan_points, 16);
        const double h = T_ / n;
        int imin = 0, imax = 0;
        std::vector<double> vals(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            vals[i] = raw(i * h);
            if (vals[i] < vals[imin]) imin = i;
            if (vals[i] > vals[imax]) imax = i;
        }
        Kmin_ = vals[imin];
        Kmax_ = vals[imax];
        argmax_ = imax * h;
        auto k = [this](double t) { return (*this)(t); };
        auto [tmin, vmin] = numeric::golden_minimize(k, imin * h - h, imin * h + h, opt.refine_tol);
        if (vmin < Kmin_) Kmin_ = vmin;
        auto [tmax, vmax] = numeric::golden_minimize([&](double t) { return -k(t); }, imax * h - h,
                                                     imax * h + h, opt.refine_tol);
        if (-vmax > Kmax_) {
            Kmax_ = -vmax;
            argmax_ = tmax;
        }
        (void)tmin;
        if (!(Kmin_ > 0.0))
            fail(ErrorKind::PropertyViolation, "Green's function is not positive (Kmin = " +
                                                   std::to_string(Kmin_) + ")");
        if (std::abs(K0_ - Kmin_) > opt.diagonal_rel_tol * std::abs(Kmin_))
            fail(ErrorKind::PropertyViolation,
                 "diagonal value K(0) is not the minimum of the kernel; cone constant undefined");
        Kmin_ = std::min(Kmin_, K0_);
    }

    double a_ = 0.0, m_ = 0.0, T_ = 1.0, m_max_ = 0.0;
    KernelCase case_ = KernelCase::ComplexPair;
    CharacteristicRoots roots_;
    double K0_ = 0.0, Kmin_ = 0.0, Kmax_ = 0.0, argmax_ = 0.0;
};

inline GreensKernel build_kernel(double a, double m, double T, const KernelOptions& opt = {}) {
    return GreensKernel::build(a, m, T, opt);
}
inline double kernel_at(const GreensKernel& k, double tau) { return k(tau); }
inline double green_at(const GreensKernel& k, double t, double s) { return k.green(t, s); }
inline double cone_constant(const GreensKernel& k) { return k.cone_constant(); }

/**
 * Integral over s in [0, T] of G_m(t, s) h(s). The range is split at s = t
 * (derivative kink of the kernel) and at `cuts` (kinks of h); composite
 * Simpson with `panels` intervals in total.
 */
template <class H>
double convolve(const GreensKernel& k, H&& h, double t, std::span<const double> cuts, int panels = 1024) {
    const double T = k.period();
    std::vector<double> all(cuts.begin(), cuts.end());
    double tw = std::fmod(t, T);
    if (tw < 0.0) tw += T;
    all.push_back(tw);
    auto integrand = [&](double s) { return k.green(tw, s) * h(s); };
    const auto nodes = numeric::normalize_cuts(all, 0.0, T);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double lo = nodes[i], hi = nodes[i + 1];
        const int p = std::max(2, static_cast<int>(std::ceil(panels * (hi - lo) / T)));
        total += numeric::simpson(integrand, lo, hi, p);
    }
    return total;
}

template <class H>
double convolve(const GreensKernel& k, H&& h, double t, int panels = 1024) {
    return convolve(k, std::forward<H>(h), t, std::span<const double>{}, panels);
}

inline double convolve(const GreensKernel& k, const PeriodicFunction& h, double t, int panels = 1024) {
    const auto cuts = h.breakpoints();
    return convolve(k, [&](double s) { return h(s); }, t, cuts, panels);
}

inline double convolve(const GreensKernel& k, const PositivePart& h, double t, int panels = 1024) {
    return convolve(k, [&](double s) { return h(s); }, t, h.breakpoints(), panels);
}

struct ReproductionCheck {
    std::vector<double> x;       // solution at N + 1 nodes including t = T
    double sup_residual = 0.0;   // fourth-order FD residual of x'' + a x' + m^2 x - h
    double bc_mismatch = 0.0;    // max(|x(0) - x(T)|, |x'(0) - x'(T)|)
};

/// Feeds x = int G h to a finite-difference residual of the linear problem.
inline ReproductionCheck reproduce(const GreensKernel& k, const PeriodicFunction& h, int N = 512,
                                   int panels = 1024) {
    if (N < 8) fail(ErrorKind::InvalidArgument, "reproduction needs at least 8 nodes");
    const double T = k.period();
    const double dt = T / N;
    ReproductionCheck out;
    out.x.resize(static_cast<std::size_t>(N) + 1);
    // x(T) is computed independently from x(0): the split point s = t moves to the end
    for (int j = 0; j <= N; ++j) out.x[j] = convolve(k, h, j == N ? T : j * dt, panels);
    const auto& x = out.x;
    auto at = [&](int j) { return x[static_cast<std::size_t>((j % N + N) % N)]; };
    const double a = k.a(), m2 = k.m() * k.m();
    for (int j = 0; j < N; ++j) {
        const double d2 = (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1) - at(j - 2)) / (12.0 * dt * dt);
        const double d1 = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * dt);
        out.sup_residual = std::max(out.sup_residual, std::abs(d2 + a * d1 + m2 * at(j) - h(j * dt)));
    }
    const double d0 = (-25.0 * x[0] + 48.0 * x[1] - 36.0 * x[2] + 16.0 * x[3] - 3.0 * x[4]) / (12.0 * dt);
    const double dT = (25.0 * x[N] - 48.0 * x[N - 1] + 36.0 * x[N - 2] - 16.0 * x[N - 3] + 3.0 * x[N - 4]) / (12.0 * dt);
    out.bc_mismatch = std::max(std::abs(x[0] - x[N]), std::abs(d0 - dT));
    return out;
}

struct PropertyReport {
    double positivity_min = 0.0;     // min of G over the grid
    double g3_max_error = 0.0;       // max_t |int G(t,s) ds - 1/m^2|
    double g4_worst_violation = 0.0; // worst relative violation of G >= K0 >= c_m G
    double diagonal_spread = 0.0;    // max_s |G(s,s) - K0|
    double reproduction_residual = 0.0;
    double reproduction_bc_mismatch = 0.0;
};

struct PropertyOptions {
    int grid = 256;
    int panels = 1024;
    int reproduction_nodes = 512;
    double tol = 1e-6;
};

/**
 * Numerical check of positivity, the integral identity, the cone chain and
 * reproduction for a built kernel. The reproduction part
 * uses h(t) = cos(2 pi t / T). Throws PropertyViolation when any check
 * exceeds `opt.tol`; the kernel minimum must be strictly positive.
 */
inline PropertyReport verify_properties(const GreensKernel& k, const PropertyOptions& opt = {}) {
    PropertyReport rep;
    const double T = k.period();
    const double K0 = k.K0(), c = k.cone_constant();
    const int n = opt.grid;
    rep.positivity_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double t = T * i / n;
        rep.diagonal_spread = std::max(rep.diagonal_spread, std::abs(k.green(t, t) - K0));
        for (int j = 0; j < n; ++j) {
            const double s = T * j / n;
            const double g = k.green(t, s);
            rep.positivity_min = std::min(rep.positivity_min, g);
            rep.g4_worst_violation = std::max(rep.g4_worst_violation, (K0 - g) / K0);
            rep.g4_worst_violation = std::max(rep.g4_worst_violation, (c * g - K0) / K0);
        }
        const double integral = convolve(k, [](double) { return 1.0; }, t, opt.panels);
        rep.g3_max_error = std::max(rep.g3_max_error, std::abs(integral - 1.0 / (k.m() * k.m())));
    }
    const auto h = PeriodicFunction::trig(0.0, {{1.0, 1, 0.0}}, T);
    const auto rc = reproduce(k, h, opt.reproduction_nodes, opt.panels);
    rep.reproduction_residual = rc.sup_residual;
    rep.reproduction_bc_mismatch = rc.bc_mismatch;

    if (!(rep.positivity_min > 0.0)) fail(ErrorKind::PropertyViolation, "G2: kernel not positive");
    if (rep.g3_max_error > opt.tol) fail(ErrorKind::PropertyViolation, "G3: integral differs from 1/m^2");
    if (rep.g4_worst_violation > opt.tol) fail(ErrorKind::PropertyViolation, "G4: cone chain violated");
    if (rep.diagonal_spread > opt.tol * K0) fail(ErrorKind::PropertyViolation, "diagonal not constant");
    if (rep.reproduction_residual > opt.tol || rep.reproduction_bc_mismatch > opt.tol)
        fail(ErrorKind::PropertyViolation, "G1: kernel does not reproduce the linear problem");
    return rep;
}

}  // namespace liebau
