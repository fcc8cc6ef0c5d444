#pragma once

// Complex functions sampled on the uniform grid t_j = 2*pi*j/N over one
// period, with the discrete Fourier transform as the basic tool: spectral
// derivatives, trig-series evaluation between grid points, and the trapezoid
// rule as the canonical integral.

#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gah/trig_poly.hpp"

namespace gah {

using cplx = std::complex<double>;

namespace detail {

/// In-place radix-2 Cooley-Tukey; n must be a power of two.
inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    assert((n & (n - 1)) == 0);
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
        cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

inline bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace detail

/// N complex samples of a function on [0, 2*pi); N a power of two >= 32.
class PeriodicGridFn {
public:
    PeriodicGridFn() = default;
    explicit PeriodicGridFn(std::size_t n) : v_(n, cplx(0)) { check(n); }
    explicit PeriodicGridFn(std::vector<cplx> v) : v_(std::move(v)) { check(v_.size()); }

    template <class F>
    static PeriodicGridFn sample(std::size_t n, const F& f) {
        PeriodicGridFn g(n);
        for (std::size_t j = 0; j < n; ++j) g.v_[j] = f(g.node(j));
        return g;
    }

    std::size_t size() const { return v_.size(); }
    double node(std::size_t j) const { return two_pi * double(j) / double(v_.size()); }
    cplx& operator[](std::size_t j) { return v_[j]; }
    const cplx& operator[](std::size_t j) const { return v_[j]; }
    const std::vector<cplx>& samples() const { return v_; }

    /// Fourier coefficients c_k for k = -N/2+1 .. N/2 (index wraps as in DFT):
    /// f(t) = sum_k c_k e^{ikt}, returned in DFT layout (c[j] is frequency
    /// j for j <= N/2, j-N for j > N/2).
    std::vector<cplx> coefficients() const {
        std::vector<cplx> c = v_;
        detail::fft_pow2(c, false);
        for (auto& x : c) x /= double(v_.size());
        return c;
    }

    static PeriodicGridFn from_coefficients(std::vector<cplx> c) {
        detail::fft_pow2(c, true);
        for (auto& x : c) x *= double(c.size());
        return PeriodicGridFn(std::move(c));
    }

    static int freq_of_index(std::size_t j, std::size_t n) {
        return (j <= n / 2) ? int(j) : int(j) - int(n);
    }

    PeriodicGridFn derivative() const {
        auto c = coefficients();
        const std::size_t n = c.size();
        for (std::size_t j = 0; j < n; ++j) {
            int k = freq_of_index(j, n);
            if (std::size_t(2) * j == n) k = 0;  // drop the unpaired Nyquist mode
            c[j] *= cplx(0.0, double(k));
        }
        return from_coefficients(std::move(c));
    }

    /// Trapezoid rule over the full period (exact for resolved harmonics).
    cplx integral() const {
        cplx s(0);
        for (const auto& x : v_) s += x;
        return s * (two_pi / double(v_.size()));
    }
    cplx mean_value() const { return integral() / two_pi; }

    double max_abs() const {
        double m = 0;
        for (const auto& x : v_) m = std::max(m, std::abs(x));
        return m;
    }

    /// Evaluate the trig interpolant at an arbitrary point.
    cplx interp(double t) const {
        auto c = coefficients();
        return eval_coeffs(c, t);
    }

    static cplx eval_coeffs(const std::vector<cplx>& c, double t) {
        const std::size_t n = c.size();
        cplx s(0);
        for (std::size_t j = 0; j < n; ++j) {
            int k = freq_of_index(j, n);
            if (std::size_t(2) * j == n) {
                // split Nyquist symmetrically: cos(N/2 t)
                s += c[j] * std::cos(double(n / 2) * t);
                continue;
            }
            s += c[j] * std::polar(1.0, double(k) * t);
        }
        return s;
    }

    PeriodicGridFn& operator+=(const PeriodicGridFn& o) {
        assert(size() == o.size());
        for (std::size_t j = 0; j < v_.size(); ++j) v_[j] += o.v_[j];
        return *this;
    }
    PeriodicGridFn& operator-=(const PeriodicGridFn& o) {
        assert(size() == o.size());
        for (std::size_t j = 0; j < v_.size(); ++j) v_[j] -= o.v_[j];
        return *this;
    }
    PeriodicGridFn& operator*=(cplx s) {
        for (auto& x : v_) x *= s;
        return *this;
    }
    friend PeriodicGridFn operator+(PeriodicGridFn a, const PeriodicGridFn& b) { return a += b; }
    friend PeriodicGridFn operator-(PeriodicGridFn a, const PeriodicGridFn& b) { return a -= b; }
    friend PeriodicGridFn operator*(cplx s, PeriodicGridFn a) { return a *= s; }

    /// Samplewise product (bandwidth grows; caller controls resolution).
    friend PeriodicGridFn hadamard(PeriodicGridFn a, const PeriodicGridFn& b) {
        assert(a.size() == b.size());
        for (std::size_t j = 0; j < a.v_.size(); ++j) a.v_[j] *= b.v_[j];
        return a;
    }

    PeriodicGridFn resampled(std::size_t m) const {
        if (m == size()) return *this;
        PeriodicGridFn g(m);
        auto c = coefficients();
        for (std::size_t j = 0; j < m; ++j) g.v_[j] = eval_coeffs(c, g.node(j));
        return g;
    }

private:
    static void check(std::size_t n) {
        if (n < 32 || !detail::is_pow2(n))
            throw std::invalid_argument("PeriodicGridFn: N must be a power of two >= 32");
    }
    std::vector<cplx> v_;
};

/// Spectral derivative of uniform samples over one period of arbitrary
/// length (power-of-two count): frequencies k * (2 pi / period).
inline std::vector<cplx> dft_derivative(std::vector<cplx> samples, double period) {
    const std::size_t n = samples.size();
    if (!detail::is_pow2(n))
        throw std::invalid_argument("dft_derivative: power-of-two sample count required");
    detail::fft_pow2(samples, false);
    const double base = two_pi / period;
    for (std::size_t j = 0; j < n; ++j) {
        int k = PeriodicGridFn::freq_of_index(j, n);
        if (std::size_t(2) * j == n) k = 0;
        samples[j] *= cplx(0.0, base * double(k)) / double(n);
    }
    detail::fft_pow2(samples, true);
    for (auto& x : samples) x *= double(n);
    return samples;
}

}  // namespace gah
