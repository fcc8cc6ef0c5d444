#pragma once

// Gauss-Legendre panels for analytic non-periodic integrands.  The solver
// kernels e^{-gamma s} restart at the period boundary, so the trapezoid rule
// loses its spectral accuracy there; panelized Gauss handles them at machine
// precision once the panel width resolves the total frequency.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace gah {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Nodes/weights by Newton iteration on the Legendre polynomial.
inline const GaussRule& gauss_legendre_10() {
    static const GaussRule rule = [] {
        const int n = 10;
        GaussRule r;
        r.nodes.resize(n);
        r.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1);
            r.nodes[i] = x;
            r.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

/// Integrate f over [a, b] with `panels` Gauss-Legendre panels of 10 nodes.
template <class F>
auto gauss_panel_integrate(const F& f, double a, double b, int panels)
    -> decltype(f(0.0)) {
    const auto& rule = gauss_legendre_10();
    using R = decltype(f(0.0));
    R total{};
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            total += R(rule.weights[i] * 0.5 * h) * f(mid + 0.5 * h * rule.nodes[i]);
    }
    return total;
}

/// Panels needed for ~1e-11 relative accuracy at total frequency |omega|
/// (|e^{i omega s}| content): keeps |omega| * width / 2 below ~2.5.
inline int panels_for_frequency(double omega, double length) {
    return 4 + int(std::ceil(std::abs(omega) * length / 5.0));
}

}  // namespace gah
