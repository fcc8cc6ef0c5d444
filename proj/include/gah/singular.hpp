#pragma once

// Constructive witnesses against global analytic hypoellipticity.
//
// Sign-changing case: after normalizing the crossing to 0 with b0 <= 0, the
// phase psi(t) = M + K(1 - cos t) + i(a(0) sin t - A(t*)) with M = max B and
// a grid-certified K makes f-hat(t, ell) = d_ell e^{-ell psi(t)} the data of
// a real-analytic function whose distributional solution
//     u-hat(t, ell) = int_0^{2pi} e^{-q s} e^{-ell Phi(t, s)} ds,
//     Phi(t, s) = psi(t - s) + i(C(t) - C(t - s)),
// stays bounded but decays only like ell^{-1/2} at t = t* (a Laplace point),
// so u is not analytic.
//
// Resonant case: an exact resonance gamma_m in iZ replicates across all
// ell >= |m| and carries the bounded flat solutions e^{-int (i m c + q)},
// normalized to peak modulus one.

#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "gah/decay_fit.hpp"
#include "gah/diophantine.hpp"
#include "gah/modal_field.hpp"
#include "gah/modal_solver.hpp"
#include "gah/operator_spec.hpp"
#include "gah/trig_poly.hpp"

namespace gah {

struct NotSignChanging : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct KSearchFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct QuadratureUnderResolved : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotResonant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoefficientTransform {
    double shift = 0;      // t -> t + shift applied to the coefficients
    bool reflected = false;  // then t -> -t with c -> -c(-t), q -> -q
};

namespace detail {

inline std::optional<NumberSpec> negate_spec(const std::optional<NumberSpec>& s) {
    if (!s) return std::nullopt;
    if (const auto* r = std::get_if<RationalSpec>(&*s))
        return NumberSpec(RationalSpec{-r->num, r->den});
    if (const auto* f = std::get_if<FloatSpec>(&*s)) return NumberSpec(FloatSpec{-f->value});
    return std::nullopt;  // surd/stream negation not represented; drop
}

}  // namespace detail

/// Translate (and possibly reflect) the coefficients so that b changes sign
/// from minus to plus at t = 0 and b0 <= 0.  The reflection conjugates the
/// operator by t -> -t, which maps P to d/dt + (-c(-t)) D + (-q).
inline std::pair<OperatorSpec, CoefficientTransform> normalize_sign_change(
    const OperatorSpec& spec) {
    SignClass sc = classify_sign(spec.b);
    if (sc.tag != SignTag::ChangesSign || !sc.crossing)
        throw NotSignChanging("normalize_sign_change: b does not change sign");
    CoefficientTransform tr;
    tr.shift = *sc.crossing;

    OperatorSpec out = spec;
    out.a = spec.a.translate(tr.shift);
    out.b = spec.b.translate(tr.shift);
    if (out.b.average() > 0) {
        tr.reflected = true;
        out.a = -(out.a.reflect());
        out.b = -(out.b.reflect());
        ComplexParam nq(-spec.q.re, -spec.q.im);
        nq.re_exact = detail::negate_spec(spec.q.re_exact);
        nq.im_exact = detail::negate_spec(spec.q.im_exact);
        out.q = nq;
        out.a0_exact = detail::negate_spec(spec.a0_exact);
        out.b0_exact = detail::negate_spec(spec.b0_exact);
    }
    return {out, tr};
}

struct KSearchOptions {
    int grid = 2048;          // certification grid per axis
    double phi_tol = 1e-12;   // phi <= phi_tol everywhere
    double margin = 1e-9;     // Re Phi(t*, s) >= margin off the peak
    double cap = double(1 << 20);
};

struct KCertificate {
    double K = 0;
    double M = 0;
    double t_star = 0;
    double phi_grid_max = 0;     // max phi over the grid (should be <= tol)
    double re_phi_min_off = 0;   // min Re Phi(t*, s) off the diagonal node
    double corner_2pi_0 = 0;     // phi(2pi, 0), equals -M
    double corner_0_2pi = 0;     // phi(0, 2pi), equals 2 pi b0 - M
};

/// phi(t,s) = B(t) - B(t-s) - M - K (1 - cos(t-s)) evaluated from cached
/// antiderivative values.
namespace detail {

struct PhiEvaluator {
    const Antiderivative* B;
    double M, K;
    double operator()(double t, double s) const {
        double u = t - s;
        return (*B)(t) - (*B)(u) - M - K * (1.0 - std::cos(u));
    }
};

}  // namespace detail

/// Grid-certified choice of K: the smallest power-of-two multiple of
/// K1 = b'(0) + 1 making phi nonpositive (to tolerance) on the grid and
/// Re Phi(t*, .) strictly positive off the peak.  The underlying lemma
/// guarantees termination; the cap is a hard stop.
inline KCertificate choose_K(const OperatorSpec& normalized, const KSearchOptions& opt = {}) {
    const Antiderivative B = normalized.b.antiderivative();
    auto [M, t_star] = max_on_period(B);
    if (!(M > 0))
        throw NotSignChanging("choose_K: max of B not positive; b does not cross - to + at 0");
    const double K1 = normalized.b.derivative()(0.0) + 1.0;

    const int n = opt.grid;
    std::vector<double> Bt(std::size_t(n) + 1);
    std::vector<double> Bdiff(2 * std::size_t(n) + 1);  // B((i-j) h), offset n
    for (int i = 0; i <= n; ++i) Bt[std::size_t(i)] = B(two_pi * i / n);
    for (int d = -n; d <= n; ++d) Bdiff[std::size_t(d + n)] = B(two_pi * d / n);

    for (double K = std::max(K1, 1.0);; K *= 2) {
        if (K > opt.cap) throw KSearchFailed("choose_K: cap reached");
        double phi_max = -1e300;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                double u = two_pi * (i - j) / n;
                double phi = Bt[std::size_t(i)] - Bdiff[std::size_t(i - j + n)] - M -
                             K * (1.0 - std::cos(u));
                if (phi > phi_max) phi_max = phi;
            }
        if (phi_max > opt.phi_tol) continue;

        double re_min = 1e300;
        for (int j = 0; j <= n; ++j) {
            double s = two_pi * j / n;
            if (std::abs(s - t_star) < two_pi / n) continue;
            double u = t_star - s;
            double re = B(u) + K * (1.0 - std::cos(u));
            re_min = std::min(re_min, re);
        }
        if (re_min < opt.margin) continue;

        KCertificate cert;
        cert.K = K;
        cert.M = M;
        cert.t_star = t_star;
        cert.phi_grid_max = phi_max;
        cert.re_phi_min_off = re_min;
        cert.corner_2pi_0 = B(two_pi) - B(two_pi) - M;
        cert.corner_0_2pi = B(0.0) - B(-two_pi) - M - K * (1.0 - std::cos(-two_pi));
        return cert;
    }
}

/// The holomorphic phase of the Laplace analysis, restricted to the real
/// axis: phi_hol(s) = -i C(s) + K (1 - cos s) + i a(0) sin s.  Its critical
/// structure at 0 (value 0, derivative 0, second derivative K - i c'(0)) is
/// what the finite-difference checks probe.
inline cplx phi_hol(const OperatorSpec& normalized, double K, double s) {
    cplx C(normalized.a.antiderivative()(s), normalized.b.antiderivative()(s));
    return cplx(0, -1) * C + K * (1.0 - std::cos(s)) +
           cplx(0, 1) * normalized.a(0.0) * std::sin(s);
}

struct SingularData {
    OperatorSpec normalized;
    CoefficientTransform transform;
    KCertificate cert;
    PeriodicGridFn psi;                 // psi(t) samples
    std::map<int, cplx> d_ell;          // twoEll -> 1 - e^{-2pi(i ell c0 + q)}
    ModalField f_field;                 // diagonal modes m = n = ell
    ModalField u_field;
    DecayReport decay_f;                // at the minimizer of Re psi (t = 0)
    DecayReport decay_u;                // at t*
    double u_sup = 0;                   // sup over modes and t of |u-hat|
    double max_mode_residual = 0;       // sup relative residual of Pu = f
    double splitting_constant = 0;      // u-hat(t*, lmax) sqrt(2 lmax), recorded
    std::size_t quad_points = 0;
};

struct SingularOptions {
    std::size_t grid_t = 0;     // 0: pick from twoEllMax
    double quad_rel_tol = 1e-6;
    std::size_t quad_cap = 1 << 17;
    int fit_twoEllMin = 16;
};

/// Full sign-change witness pipeline for data truncated at twoEllMax.
inline SingularData build_sign_change_witness(const OperatorSpec& spec, int twoEllMax,
                                              const SingularOptions& opt = {}) {
    SingularData out;
    auto [normalized, tr] = normalize_sign_change(spec);
    out.normalized = normalized;
    out.transform = tr;
    out.cert = choose_K(normalized);

    const double K = out.cert.K, M = out.cert.M, t_star = out.cert.t_star;
    const cplx q = normalized.q.value();
    const std::complex<double> c0 = normalized.c0();
    const Antiderivative A = normalized.a.antiderivative();
    const Antiderivative B = normalized.b.antiderivative();
    const double a0val = normalized.a(0.0);
    const double Atstar = A(t_star);

    // background resonances defeat the construction (and already defeat GAH)
    for (int te = 1; te <= twoEllMax; ++te) {
        cplx gamma = gamma_multiplier(c0, q, te).value;
        if (dist_to_i_integers(gamma) <= resonance_tol) throw ResonantGamma(gamma);
    }

    auto psi_at = [&](double t) -> cplx {
        return cplx(M + K * (1.0 - std::cos(t)), a0val * std::sin(t) - Atstar);
    };
    auto C_at = [&](double t) -> cplx { return cplx(A(t), B(t)); };

    std::size_t n_t = opt.grid_t ? opt.grid_t
                                 : std::max<std::size_t>(512, std::bit_ceil(
                                       std::size_t(4) * std::size_t(twoEllMax)));
    out.psi = PeriodicGridFn::sample(n_t, psi_at);

    // settle the s-quadrature resolution on the hardest integral
    const double ell_max = 0.5 * twoEllMax;
    auto u_at = [&](double t, double ell, std::size_t n_s) -> cplx {
        // trapezoid over [0, 2pi]; the integrand is analytic but not
        // periodic (the kernel restarts), so the endpoints are averaged
        auto integrand = [&](double s) -> cplx {
            cplx Phi = psi_at(t - s) + cplx(0, 1) * (C_at(t) - C_at(t - s));
            return std::exp(-q * s) * std::exp(-ell * Phi);
        };
        const double h = two_pi / double(n_s);
        cplx acc = 0.5 * (integrand(0.0) + integrand(two_pi));
        for (std::size_t j = 1; j < n_s; ++j) acc += integrand(h * double(j));
        return acc * h;
    };

    std::size_t n_s = std::max<std::size_t>(
        1024, std::bit_ceil(std::size_t(64.0 * std::ceil(std::sqrt(2.0 * ell_max * K)))));
    n_s = std::max(n_s, n_t);
    for (;;) {
        cplx u1 = u_at(t_star, ell_max, n_s);
        cplx u2 = u_at(t_star, ell_max, 2 * n_s);
        if (std::abs(u1 - u2) <= opt.quad_rel_tol * std::abs(u2)) break;
        n_s *= 2;
        if (n_s > opt.quad_cap)
            throw QuadratureUnderResolved("build_sign_change_witness: quadrature cap");
    }
    out.quad_points = n_s;

    // The same trapezoid sum, factored: with G(sigma) = e^{-ell psi + i ell C}
    // and sigma = t - s on the s-grid (n_s a multiple of n_t), each u(t_i)
    // is a weighted circular correlation of tabulated values; crossing the
    // period boundary picks up the constant e^{-+ i ell 2 pi c0} from the
    // linear part of C.
    out.f_field = ModalField(n_t, twoEllMax);
    out.u_field = ModalField(n_t, twoEllMax);
    const std::size_t stride = n_s / n_t;
    const double h_s = two_pi / double(n_s);
    std::vector<cplx> qs_w(n_s + 1);
    for (std::size_t j = 0; j <= n_s; ++j) {
        qs_w[j] = std::exp(-q * (h_s * double(j)));
        if (j == 0 || j == n_s) qs_w[j] *= 0.5;
    }
    std::vector<cplx> Gtab(n_s);
    for (int te = 1; te <= twoEllMax; ++te) {
        double ell = 0.5 * te;
        cplx gamma = gamma_multiplier(c0, q, te).value;
        cplx d = 1.0 - std::exp(-two_pi * gamma);
        out.d_ell.emplace(te, d);

        for (std::size_t j = 0; j < n_s; ++j) {
            double sg = h_s * double(j);
            Gtab[j] = std::exp(-ell * psi_at(sg) + cplx(0, ell) * C_at(sg));
        }
        const cplx wplus = std::exp(cplx(0, ell) * (two_pi * c0));
        const cplx wminus = 1.0 / wplus;

        PeriodicGridFn f(n_t), u(n_t);
        for (std::size_t i = 0; i < n_t; ++i) {
            double t = f.node(i);
            cplx e_psi = std::exp(-ell * psi_at(t));
            f[i] = d * e_psi;
            const long I = long(i * stride);
            cplx acc(0);
            for (long j = 0; j <= long(n_s); ++j) {
                long dd = I - j;
                cplx g;
                if (dd >= long(n_s)) g = Gtab[0] * wplus;
                else if (dd >= 0) g = Gtab[std::size_t(dd)];
                else g = Gtab[std::size_t(dd + long(n_s))] * wminus;
                acc += qs_w[std::size_t(j)] * g;
            }
            cplx trap = acc * h_s * std::exp(cplx(0, -ell) * C_at(t));
            // first Euler-Maclaurin endpoint correction (the integrand is
            // analytic but restarts at the period): f'(2pi) - f'(0) has the
            // closed form -(d_ell) [ -q + ell psi'(t) - i ell c(t) ] e^{-ell psi}
            cplx psi_prime(K * std::sin(t), a0val * std::cos(t));
            cplx slope = (-q + ell * psi_prime - cplx(0, ell) * normalized.c(t)) * e_psi;
            u[i] = trap + (h_s * h_s / 12.0) * d * slope;
        }
        ModeIndex idx(te, te, te);
        out.f_field.set(idx, f);
        out.u_field.set(idx, std::move(u));
    }

    // certification numbers; the residual is measured against the mode
    // magnitude max(sup|f|, sup|u|) -- the forcing decays like e^{-M ell}
    // while the solution only decays polynomially, so a residual relative
    // to f alone would demand absolute accuracy e^{-M ell}
    out.u_sup = out.u_field.max_abs();
    double worst = 0;
    for (int te = 1; te <= twoEllMax; ++te) {
        ModeIndex idx(te, te, te);
        const PeriodicGridFn& f = out.f_field.at(idx);
        const PeriodicGridFn& u = out.u_field.at(idx);
        PeriodicGridFn du = u.derivative();
        double abs_res = 0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            double t = u.node(j);
            cplx mult = cplx(0, 0.5 * te) * normalized.c(t) + q;
            abs_res = std::max(abs_res, std::abs(du[j] + mult * u[j] - f[j]));
        }
        worst = std::max(worst, abs_res / std::max({f.max_abs(), u.max_abs(), 1e-300}));
    }
    out.max_mode_residual = worst;

    FitOptions fo;
    fo.twoEllMin = opt.fit_twoEllMin;
    fo.at_node = 0;  // Re psi is minimized at t = 0
    out.decay_f = fit_decay(out.f_field, fo);
    std::size_t star_node =
        std::size_t(std::llround(t_star / two_pi * double(n_t))) % n_t;
    fo.at_node = star_node;
    out.decay_u = fit_decay(out.u_field, fo);

    out.splitting_constant =
        std::abs(out.u_field.at(ModeIndex(twoEllMax, twoEllMax, twoEllMax))[star_node]) *
        std::sqrt(2.0 * ell_max);
    return out;
}

/// Bounded flat solutions over an exactly resonant witness (k, m),
/// replicated across ell = |m|, |m| + 1, ... up to the truncation:
/// u-hat(t, ell)_{mm} = exp(-int_0^t (i m c + q) - M_m), peaking at modulus
/// one where the real part of the exponent is maximal.
inline ModalField build_resonant_witness(const OperatorSpec& spec,
                                         const ResonanceWitness& witness, int twoEllMax,
                                         std::size_t n_t = 256) {
    const int twoM = int(witness.twoM);
    const double m = 0.5 * twoM;
    cplx gamma = spec.gamma(twoM).value;
    if (dist_to_i_integers(gamma) > resonance_tol)
        throw NotResonant("build_resonant_witness: gamma_m not in iZ");

    // exponent -(i m C(t) + q t): real part m B(t) - Re q t
    const Antiderivative A = spec.a.antiderivative();
    const Antiderivative B = spec.b.antiderivative();
    TrigPoly growth = m * spec.b - TrigPoly(spec.q.re);
    auto [Mm, t_peak] = max_on_period(growth.antiderivative());

    ModalField field(n_t, twoEllMax);
    PeriodicGridFn profile = PeriodicGridFn::sample(n_t, [&](double t) {
        cplx expo = -cplx(0, m) * cplx(A(t), B(t)) - spec.q.value() * t - Mm;
        return std::exp(expo);
    });
    (void)t_peak;
    for (int te = std::abs(twoM); te <= twoEllMax; te += 2)
        field.set(ModeIndex(te, twoM, twoM), profile);
    return field;
}

/// Peak location of the resonant witness (where |u-hat| = 1).
inline double resonant_witness_peak(const OperatorSpec& spec, const ResonanceWitness& w) {
    TrigPoly growth = 0.5 * double(w.twoM) * spec.b - TrigPoly(spec.q.re);
    return max_on_period(growth.antiderivative()).second;
}

}  // namespace gah
