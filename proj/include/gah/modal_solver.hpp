#pragma once

// Per-mode solvers for the ODEs u' + (i m c(t) + q) u = f on the circle.
//
// The constant-coefficient problem v' + gamma v = g is solved through the
// periodic kernel representations
//     v(t) = (1 - e^{-2 pi gamma})^{-1} int_0^{2pi} e^{-gamma s} g(t-s) ds
//     v(t) = (e^{2 pi gamma} - 1)^{-1} int_0^{2pi} e^{+gamma r} g(t+r) dr
// picking whichever kernel stays bounded by one (Re gamma >= 0: the first).
// The kernel integrals act diagonally on Fourier modes of g; each scalar
// integral is evaluated with Gauss-Legendre panels sized to the mode's
// total frequency.
//
// Variable coefficients reduce to the constant problem by the gauge
// e^{i m script-C(t)} with script-C the detrended antiderivative of c; when
// that gauge would overflow (large |m| times the oscillation of Im C), the
// solver falls back to direct quadrature of the kernel representation.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gah/complex_param.hpp"
#include "gah/grid_fn.hpp"
#include "gah/operator_spec.hpp"
#include "gah/quadrature.hpp"

namespace gah {

struct ResonantGamma : std::runtime_error {
    std::complex<double> gamma;
    explicit ResonantGamma(std::complex<double> g)
        : std::runtime_error("gamma is (numerically) in iZ: resonant mode"), gamma(g) {}
};

struct IncompatibleData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class KernelBranch { Minus, Plus };

inline KernelBranch stable_branch(std::complex<double> gamma) {
    return gamma.real() >= 0 ? KernelBranch::Minus : KernelBranch::Plus;
}

inline constexpr double resonance_tol = 1e-13;

/// Solve v' + gamma v = g for the unique periodic solution, gamma not in iZ.
/// `branch` forces one of the two kernel representations (they agree where
/// both kernels are bounded); by default the stable one is used.
inline PeriodicGridFn solve_constant(std::complex<double> gamma, const PeriodicGridFn& g,
                                     std::optional<KernelBranch> branch = {}) {
    if (dist_to_i_integers(gamma) <= resonance_tol) throw ResonantGamma(gamma);
    const KernelBranch br = branch.value_or(stable_branch(gamma));

    auto gh = g.coefficients();
    const std::size_t n = gh.size();
    double gmax = 0;
    for (const auto& c : gh) gmax = std::max(gmax, std::abs(c));

    const cplx e2pi = std::exp(cplx(-two_pi) * gamma);
    const cplx pref = (br == KernelBranch::Minus)
                          ? 1.0 / (1.0 - e2pi)
                          : 1.0 / (std::exp(cplx(two_pi) * gamma) - 1.0);

    std::vector<cplx> vh(n);
    for (std::size_t j = 0; j < n; ++j) {
        int k = PeriodicGridFn::freq_of_index(j, n);
        if (std::size_t(2) * j == n) k = int(n / 2);
        const cplx z = gamma + cplx(0.0, double(k));
        cplx kernel_int;
        if (std::abs(gh[j]) > 1e-18 * gmax) {
            if (br == KernelBranch::Minus) {
                kernel_int = gauss_panel_integrate(
                    [&](double s) { return std::exp(-z * s); }, 0.0, two_pi,
                    panels_for_frequency(std::abs(z), two_pi));
            } else {
                kernel_int = gauss_panel_integrate(
                    [&](double r) { return std::exp(z * r); }, 0.0, two_pi,
                    panels_for_frequency(std::abs(z), two_pi));
            }
        } else {
            // negligible mode: the closed-form limit of the same integral
            kernel_int = (br == KernelBranch::Minus)
                             ? (1.0 - std::exp(-z * two_pi)) / z
                             : (std::exp(z * two_pi) - 1.0) / z;
        }
        vh[j] = pref * kernel_int * gh[j];
    }
    return PeriodicGridFn::from_coefficients(std::move(vh));
}

/// sup-norm residual of v' + gamma v - g, relative to sup |g|.
inline double residual_constant(std::complex<double> gamma, const PeriodicGridFn& g,
                                const PeriodicGridFn& v) {
    PeriodicGridFn r = v.derivative();
    double worst = 0;
    for (std::size_t j = 0; j < r.size(); ++j)
        worst = std::max(worst, std::abs(r[j] + gamma * v[j] - g[j]));
    double scale = g.max_abs();
    return scale > 0 ? worst / scale : worst;
}

/// Resonant case gamma = i j: one periodic solution of v' + i j v = g with
/// v(0) = 0, requiring the compatibility integral int e^{i j s} g(s) ds ~ 0.
inline PeriodicGridFn solve_resonant(int j, const PeriodicGridFn& g,
                                     double compat_tol = 1e-10) {
    auto gh = g.coefficients();
    const std::size_t n = gh.size();
    // int_0^{2pi} e^{i j s} g(s) ds = 2 pi * (coefficient of e^{-i j t})
    const std::size_t idx_mj =
        std::size_t(((long(-j) % long(n)) + long(n)) % long(n));
    cplx compat = two_pi * gh[idx_mj];
    double scale = g.max_abs();
    if (std::abs(compat) >= compat_tol * std::max(scale, 1e-300))
        throw IncompatibleData("solve_resonant: nonzero compatibility integral");

    // v(t) = e^{-i j t} int_0^t e^{i j s} g(s) ds, assembled per mode:
    // the kappa = 0 frequency of e^{i j s} g is the (projected-out)
    // compatibility direction.
    PeriodicGridFn v(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        double t = v.node(jj);
        cplx acc(0);
        for (std::size_t idx = 0; idx < n; ++idx) {
            int k = PeriodicGridFn::freq_of_index(idx, n);
            if (std::size_t(2) * idx == n) continue;  // Nyquist: zero in resolved data
            if (idx == idx_mj) continue;              // projected compatibility direction
            int kappa = k + j;
            if (kappa == 0) continue;
            // (e^{i kappa t} - 1) / (i kappa) term of the inner antiderivative
            acc += gh[idx] * (std::polar(1.0, kappa * t) - 1.0) / cplx(0.0, double(kappa));
        }
        v[jj] = std::polar(1.0, -double(j) * t) * acc;
    }
    return v;
}

namespace detail {

/// exp(i m script-C(t)) on the grid, where script-C = C(t) - c0 t is the
/// periodic part of the antiderivative of c.
inline std::vector<cplx> gauge_phase(const OperatorSpec& spec, double m, std::size_t n,
                                     bool inverse) {
    const Antiderivative A = spec.a.antiderivative();
    const Antiderivative B = spec.b.antiderivative();
    const TrigPoly& Ap = A.periodic_part();
    const TrigPoly& Bp = B.periodic_part();
    std::vector<cplx> ph(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = two_pi * double(j) / double(n);
        // i m (script-A + i script-B) = -m script-B + i m script-A
        cplx ex(-m * Bp(t), m * Ap(t));
        ph[j] = std::exp(inverse ? -ex : ex);
    }
    return ph;
}

inline double gauge_amplitude(const OperatorSpec& spec, double m) {
    const TrigPoly Bp = spec.b.antiderivative().periodic_part();
    double amp = 0;
    for (int i = 0; i < 256; ++i) amp = std::max(amp, std::abs(Bp(two_pi * i / 256.0)));
    return std::abs(m) * amp;
}

}  // namespace detail

struct SolveOptions {
    double residual_tol = 1e-7;
    std::size_t max_grid = 4096;
    double gauge_overflow_limit = 250.0;  // on |m| * osc(Im C)
};

/// Residual of the full mode equation u' + (i m c(t) + q) u = f, sup norm
/// relative to sup |f|.
inline double residual_mode(const OperatorSpec& spec, int twoM, const PeriodicGridFn& f,
                            const PeriodicGridFn& u) {
    double m = 0.5 * twoM;
    PeriodicGridFn du = u.derivative();
    PeriodicGridFn fr = f.size() == u.size() ? f : f.resampled(u.size());
    double worst = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        double t = u.node(j);
        cplx mult = cplx(0.0, m) * spec.c(t) + spec.q.value();
        worst = std::max(worst, std::abs(du[j] + mult * u[j] - fr[j]));
    }
    double scale = fr.max_abs();
    return scale > 0 ? worst / scale : worst;
}

namespace detail {

/// Direct Gauss quadrature of the kernel representation (fallback when the
/// gauge would overflow).  m >= 0 uses the f(t-s) kernel, m < 0 the f(t+s)
/// one, matching the sign convention that keeps the kernel bounded when
/// m * b <= 0 pointwise.
inline PeriodicGridFn solve_mode_direct(const OperatorSpec& spec, int twoM,
                                        const PeriodicGridFn& f) {
    double m = 0.5 * twoM;
    std::complex<double> gamma = spec.gamma(twoM).value;
    const std::size_t n = f.size();
    const Antiderivative A = spec.a.antiderivative();
    const Antiderivative B = spec.b.antiderivative();
    auto Cval = [&](double t) { return cplx(A(t), B(t)); };
    auto fh = f.coefficients();
    const cplx q = spec.q.value();

    double freq = std::abs(gamma) + double(n) / 2.0 +
                  std::abs(m) * (spec.a.coeff_scale() + spec.b.coeff_scale());
    int panels = panels_for_frequency(freq, two_pi);

    PeriodicGridFn u(n);
    const bool minus_form = twoM >= 0;
    const cplx pref = minus_form ? 1.0 / (1.0 - std::exp(-two_pi * gamma))
                                 : 1.0 / (std::exp(two_pi * gamma) - 1.0);
    for (std::size_t jj = 0; jj < n; ++jj) {
        double t = u.node(jj);
        cplx Ct = Cval(t);
        auto integrand = [&](double s) -> cplx {
            if (minus_form) {
                cplx ex = -q * s - cplx(0.0, m) * (Ct - Cval(t - s));
                return std::exp(ex) * PeriodicGridFn::eval_coeffs(fh, t - s);
            }
            cplx ex = q * s - cplx(0.0, m) * (Cval(t + s) - Ct);
            return std::exp(ex) * PeriodicGridFn::eval_coeffs(fh, t + s);
        };
        u[jj] = pref * gauss_panel_integrate(integrand, 0.0, two_pi, panels);
    }
    return u;
}

}  // namespace detail

/// Aggregated failure for field solves: every offending mode is reported.
struct ResonantModesError : std::runtime_error {
    std::vector<int> twoMs;
    explicit ResonantModesError(std::vector<int> ms)
        : std::runtime_error("resonant gamma_m on some modes"), twoMs(std::move(ms)) {}
};

/// Solve u' + (i m c(t) + q) u = f for the unique periodic solution of the
/// mode twoM = 2m; gamma_m = i m c0 + q must avoid iZ.
inline PeriodicGridFn solve_mode(const OperatorSpec& spec, int twoM,
                                 const PeriodicGridFn& f, const SolveOptions& opt = {}) {
    std::complex<double> gamma = spec.gamma(twoM).value;
    if (dist_to_i_integers(gamma) <= resonance_tol) throw ResonantGamma(gamma);
    double m = 0.5 * twoM;

    const bool use_gauge = detail::gauge_amplitude(spec, m) <= opt.gauge_overflow_limit;
    PeriodicGridFn f_cur = f;
    PeriodicGridFn best(f.size());
    double best_res = std::numeric_limits<double>::infinity();
    for (;;) {
        const std::size_t n = f_cur.size();
        PeriodicGridFn u(n);
        if (use_gauge) {
            auto ph = detail::gauge_phase(spec, m, n, false);
            PeriodicGridFn rhs(n);
            for (std::size_t j = 0; j < n; ++j) rhs[j] = ph[j] * f_cur[j];
            PeriodicGridFn w = solve_constant(gamma, rhs);
            for (std::size_t j = 0; j < n; ++j) u[j] = w[j] / ph[j];
        } else {
            u = detail::solve_mode_direct(spec, twoM, f_cur);
        }
        double res = residual_mode(spec, twoM, f_cur, u);
        if (res < best_res) {
            best = u;
            best_res = res;
        }
        if (best_res <= opt.residual_tol || 2 * n > opt.max_grid) break;
        f_cur = f_cur.resampled(2 * n);
    }
    return best;
}

}  // namespace gah
