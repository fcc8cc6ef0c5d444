#pragma once

// Decay classification of coefficient sequences: the measurable counterpart
// of the function/distribution characterizations.  An exponential fit
// |entry(ell)| <= C e^{-B ell} certifies analytic-type decay; a power-law
// fit (1 + ell)^K separates polynomial decay (K < 0, smooth/distributional
// scale) from growth (K >= 0).

#include <cmath>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "gah/modal_field.hpp"

namespace gah {

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecayReport {
    enum class Model { Exponential, Polynomial, Growth, Indeterminate };
    Model model = Model::Indeterminate;
    double rate = 0;      // B for Exponential
    double order = 0;     // K for Polynomial (< 0) / Growth (>= 0)
    double prefactor = 0; // C, adjusted so the fitted bound holds on samples
    double residual = 0;  // RMS of the winning fit in log space
    double residual_exp = 0, residual_pow = 0;
    int samples = 0;
};

struct DecaySample {
    double ell;
    double amplitude;  // > 0
};

namespace detail {

struct LinFit {
    double intercept, slope, rms;
};

inline LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    double det = double(n) * sxx - sx * sx;
    double slope = (double(n) * sxy - sx * sy) / det;
    double intercept = (sy - slope * sx) / double(n);
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - intercept - slope * x[i];
        rss += r * r;
    }
    return {intercept, slope, std::sqrt(rss / double(n))};
}

}  // namespace detail

/// Model selection between log-linear (exponential in ell) and log-log
/// (power of 1 + ell) least squares.  Requires at least 6 distinct ell with
/// positive amplitudes; flat sequences are reported as Growth of order ~0.
inline DecayReport fit_decay_samples(const std::vector<DecaySample>& samples) {
    std::vector<double> ell, ly, lx;
    for (const auto& s : samples) {
        if (s.amplitude <= 0) continue;
        ell.push_back(s.ell);
        ly.push_back(std::log(s.amplitude));
        lx.push_back(std::log1p(s.ell));
    }
    if (ell.size() < 6)
        throw InsufficientData("fit_decay: need at least 6 positive samples");

    auto fit_exp = detail::least_squares(ell, ly);
    auto fit_pow = detail::least_squares(lx, ly);

    DecayReport rep;
    rep.samples = int(ell.size());
    rep.residual_exp = fit_exp.rms;
    rep.residual_pow = fit_pow.rms;

    const double B = -fit_exp.slope;
    const double K = fit_pow.slope;
    if (std::abs(B) < 1e-2 && std::abs(K) < 1e-2) {
        // flat sequence: both models degenerate to a constant
        rep.model = DecayReport::Model::Growth;
        rep.order = K;
        rep.residual = fit_pow.rms;
        rep.prefactor = std::exp(fit_pow.intercept);
        return rep;
    }
    const double lo = std::min(fit_exp.rms, fit_pow.rms);
    const double hi = std::max(fit_exp.rms, fit_pow.rms);
    if (hi > 0 && (hi - lo) <= 0.10 * hi) {
        rep.model = DecayReport::Model::Indeterminate;
        rep.residual = lo;
        return rep;
    }
    if (fit_exp.rms < fit_pow.rms && B > 0) {
        rep.model = DecayReport::Model::Exponential;
        rep.rate = B;
        rep.residual = fit_exp.rms;
        // raise C until the bound holds on every sample
        double c = -1e300;
        for (std::size_t i = 0; i < ell.size(); ++i)
            c = std::max(c, ly[i] + B * ell[i]);
        rep.prefactor = std::exp(c);
    } else {
        rep.model = K >= 0 ? DecayReport::Model::Growth : DecayReport::Model::Polynomial;
        rep.order = K;
        rep.residual = fit_pow.rms;
        rep.prefactor = std::exp(fit_pow.intercept);
    }
    return rep;
}

struct FitOptions {
    int twoEllMin = 1;
    int twoEllMax = 1 << 30;
    // amplitude at a fixed grid node, or sup over t when unset
    std::optional<std::size_t> at_node;
};

/// Per-ell amplitudes of a modal field (max over (m, n) entries).
inline std::vector<DecaySample> decay_samples(const ModalField& field,
                                              const FitOptions& opt = {}) {
    std::map<int, double> amp;
    for (const auto& [idx, fn] : field.entries()) {
        if (idx.twoEll < opt.twoEllMin || idx.twoEll > opt.twoEllMax) continue;
        double a = opt.at_node ? std::abs(fn[*opt.at_node]) : fn.max_abs();
        auto [it, fresh] = amp.emplace(idx.twoEll, a);
        if (!fresh) it->second = std::max(it->second, a);
    }
    std::vector<DecaySample> out;
    for (auto& [te, a] : amp) out.push_back({0.5 * te, a});
    return out;
}

inline DecayReport fit_decay(const ModalField& field, const FitOptions& opt = {}) {
    return fit_decay_samples(decay_samples(field, opt));
}

}  // namespace gah
