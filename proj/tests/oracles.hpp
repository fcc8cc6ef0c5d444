#pragma once

// Test-only oracles, independent of the solver paths they check: classical
// time stepping with periodic shooting for the mode ODEs, and brute-force
// quadratures.  Nothing here touches the kernel-integral machinery.

#include <complex>
#include <functional>
#include <vector>

#include "gah/grid_fn.hpp"
#include "gah/operator_spec.hpp"

namespace gah::oracle {

/// RK4 for v' = rhs(t, v) over [0, 2pi] with n steps; returns v(2pi).
template <class Rhs>
cplx rk4_final(const Rhs& rhs, cplx v0, int n) {
    double h = two_pi / n;
    cplx v = v0;
    for (int i = 0; i < n; ++i) {
        double t = h * i;
        cplx k1 = rhs(t, v);
        cplx k2 = rhs(t + h / 2, v + 0.5 * h * k1);
        cplx k3 = rhs(t + h / 2, v + 0.5 * h * k2);
        cplx k4 = rhs(t + h, v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return v;
}

/// RK4 + periodic shooting for v' + mult(t) v = g(t): integrates the
/// homogeneous fundamental solution and one particular path, imposes
/// v(2pi) = v(0), then replays to fill the grid.
class Rk4PeriodicSolver {
public:
    Rk4PeriodicSolver(std::function<cplx(double)> mult, std::function<cplx(double)> g,
                      int steps = 65536)
        : mult_(std::move(mult)), g_(std::move(g)), steps_(steps) {}

    PeriodicGridFn solve(std::size_t n_out) const {
        auto rhs_hom = [&](double t, cplx v) { return -mult_(t) * v; };
        auto rhs_par = [&](double t, cplx v) { return -mult_(t) * v + g_(t); };
        cplx fundamental = rk4_final(rhs_hom, cplx(1.0), steps_);
        cplx particular = rk4_final(rhs_par, cplx(0.0), steps_);
        // v(0) (1 - Phi) = vp(2pi)
        cplx v0 = particular / (1.0 - fundamental);

        PeriodicGridFn out(n_out);
        double h = two_pi / steps_;
        int per_node = steps_ / int(n_out);
        cplx v = v0;
        out[0] = v0;
        int step = 0;
        for (std::size_t j = 1; j < n_out; ++j) {
            int target = int(j) * per_node;
            for (; step < target; ++step) {
                double t = h * step;
                cplx k1 = rhs_par(t, v);
                cplx k2 = rhs_par(t + h / 2, v + 0.5 * h * k1);
                cplx k3 = rhs_par(t + h / 2, v + 0.5 * h * k2);
                cplx k4 = rhs_par(t + h, v + h * k3);
                v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            out[j] = v;
        }
        return out;
    }

private:
    std::function<cplx(double)> mult_, g_;
    int steps_;
};

/// Oracle for v' + gamma v = g with g given as a band-limited grid function.
inline PeriodicGridFn solve_constant_rk4(cplx gamma, const PeriodicGridFn& g,
                                         int steps = 65536) {
    auto coef = g.coefficients();
    // tabulate g on the half-step grid so RK4 stages hit samples exactly
    std::vector<cplx> table(2 * std::size_t(steps) + 1);
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = PeriodicGridFn::eval_coeffs(coef, two_pi * double(i) / (2.0 * steps));
    auto gfun = [table, steps](double t) {
        auto idx = std::size_t(std::llround(t / two_pi * 2 * steps));
        return table[std::min(idx, std::size_t(2 * steps))];
    };
    Rk4PeriodicSolver solver([gamma](double) { return gamma; }, gfun, steps);
    return solver.solve(g.size());
}

/// Oracle for the full mode equation u' + (i m c(t) + q) u = f.
inline PeriodicGridFn solve_mode_rk4(const OperatorSpec& spec, int twoM,
                                     const PeriodicGridFn& f, int steps = 65536) {
    double m = 0.5 * twoM;
    auto coef = f.coefficients();
    std::vector<cplx> table(2 * std::size_t(steps) + 1);
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = PeriodicGridFn::eval_coeffs(coef, two_pi * double(i) / (2.0 * steps));
    auto ffun = [table, steps](double t) {
        auto idx = std::size_t(std::llround(t / two_pi * 2 * steps));
        return table[std::min(idx, std::size_t(2 * steps))];
    };
    auto mult = [&spec, m](double t) { return cplx(0.0, m) * spec.c(t) + spec.q.value(); };
    Rk4PeriodicSolver solver(mult, ffun, steps);
    return solver.solve(f.size());
}

}  // namespace gah::oracle
