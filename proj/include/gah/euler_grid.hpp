#pragma once

// Complex samples on a product grid (t, phi, theta, psi) over
// T^1 x [0,2pi) x (0,pi) x [0,4pi), spectral along t (period 2 pi) and psi
// (period 4 pi), index order (t, phi, theta, psi).  Only those two axes are
// ever differentiated, so theta and phi use plain midpoint nodes.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gah/grid_fn.hpp"

namespace gah {

struct EulerGrid {
    std::size_t n_t, n_phi, n_theta, n_psi;

    double t(std::size_t i) const { return two_pi * double(i) / double(n_t); }
    double phi(std::size_t i) const { return two_pi * double(i) / double(n_phi); }
    double theta(std::size_t i) const {
        return std::numbers::pi * (double(i) + 0.5) / double(n_theta);
    }
    double psi(std::size_t i) const { return 2.0 * two_pi * double(i) / double(n_psi); }

    std::size_t size() const { return n_t * n_phi * n_theta * n_psi; }
    std::size_t index(std::size_t it, std::size_t ip, std::size_t ith,
                      std::size_t ips) const {
        return ((it * n_phi + ip) * n_theta + ith) * n_psi + ips;
    }
    bool operator==(const EulerGrid&) const = default;
};

class EulerGridFn {
public:
    EulerGridFn() = default;
    explicit EulerGridFn(const EulerGrid& g) : grid_(g), v_(g.size(), cplx(0)) {
        if (!detail::is_pow2(g.n_t) || !detail::is_pow2(g.n_psi))
            throw std::invalid_argument("EulerGridFn: n_t and n_psi must be powers of two");
    }

    template <class F>
    static EulerGridFn sample(const EulerGrid& g, const F& f) {
        EulerGridFn out(g);
        for (std::size_t it = 0; it < g.n_t; ++it)
            for (std::size_t ip = 0; ip < g.n_phi; ++ip)
                for (std::size_t ith = 0; ith < g.n_theta; ++ith)
                    for (std::size_t ips = 0; ips < g.n_psi; ++ips)
                        out.v_[g.index(it, ip, ith, ips)] =
                            f(g.t(it), g.phi(ip), g.theta(ith), g.psi(ips));
        return out;
    }

    const EulerGrid& grid() const { return grid_; }
    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<cplx>& samples() const { return v_; }
    std::vector<cplx>& samples() { return v_; }

    double max_abs() const {
        double m = 0;
        for (const auto& x : v_) m = std::max(m, std::abs(x));
        return m;
    }

    /// Spectral d/dt (period 2 pi along the t axis).
    EulerGridFn derivative_t() const {
        EulerGridFn out(grid_);
        const std::size_t n = grid_.n_t;
        const std::size_t inner = grid_.n_phi * grid_.n_theta * grid_.n_psi;
        std::vector<cplx> line(n);
        for (std::size_t s = 0; s < inner; ++s) {
            for (std::size_t i = 0; i < n; ++i) line[i] = v_[i * inner + s];
            auto dl = dft_derivative(line, two_pi);
            for (std::size_t i = 0; i < n; ++i) out.v_[i * inner + s] = dl[i];
        }
        return out;
    }

    /// Spectral d/dpsi (period 4 pi along the psi axis; half-integer
    /// frequencies are integer harmonics of the doubled period).
    EulerGridFn derivative_psi() const {
        EulerGridFn out(grid_);
        const std::size_t n = grid_.n_psi;
        const std::size_t outer = grid_.n_t * grid_.n_phi * grid_.n_theta;
        std::vector<cplx> line(n);
        for (std::size_t o = 0; o < outer; ++o) {
            const std::size_t base = o * n;
            for (std::size_t i = 0; i < n; ++i) line[i] = v_[base + i];
            auto dl = dft_derivative(line, 2.0 * two_pi);
            for (std::size_t i = 0; i < n; ++i) out.v_[base + i] = dl[i];
        }
        return out;
    }

    EulerGridFn& operator+=(const EulerGridFn& o) {
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    EulerGridFn& operator-=(const EulerGridFn& o) {
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    friend EulerGridFn operator-(EulerGridFn a, const EulerGridFn& b) { return a -= b; }

    /// Samplewise product.
    friend EulerGridFn hadamard(EulerGridFn a, const EulerGridFn& b) {
        for (std::size_t i = 0; i < a.v_.size(); ++i) a.v_[i] *= b.v_[i];
        return a;
    }

    /// Samplewise exp(-f).
    EulerGridFn exp_neg() const {
        EulerGridFn out(grid_);
        for (std::size_t i = 0; i < v_.size(); ++i) out.v_[i] = std::exp(-v_[i]);
        return out;
    }

private:
    EulerGrid grid_{};
    std::vector<cplx> v_;
};

}  // namespace gah
