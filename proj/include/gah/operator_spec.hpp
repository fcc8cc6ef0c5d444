#pragma once

// The operator P = d/dt + (a + i b)(t) D + q acting on T^1 x S^3, where D is
// the neutral field with symbol i m on the (m, n) coefficient slot, together
// with its frozen-coefficient companion P0 = d/dt + c0 D + q.

#include <complex>
#include <optional>

#include "gah/complex_param.hpp"
#include "gah/trig_poly.hpp"

namespace gah {

struct OperatorSpec {
    TrigPoly a;
    TrigPoly b;
    ComplexParam q;
    // exactness annotations for the averages, when known
    std::optional<NumberSpec> a0_exact;
    std::optional<NumberSpec> b0_exact;

    double a0() const { return a.average(); }
    double b0() const { return b.average(); }
    std::complex<double> c0() const { return {a0(), b0()}; }
    std::complex<double> c(double t) const { return {a(t), b(t)}; }

    NumberSpec a0_spec() const {
        return a0_exact ? *a0_exact : NumberSpec(FloatSpec{a0()});
    }
    NumberSpec b0_spec() const {
        return b0_exact ? *b0_exact : NumberSpec(FloatSpec{b0()});
    }

    /// C(t) = A(t) + i B(t) with A, B the antiderivatives vanishing at 0.
    std::complex<double> C(double t) const {
        return {a.antiderivative()(t), b.antiderivative()(t)};
    }

    Gamma gamma(int twoM) const { return gamma_multiplier(c0(), q.value(), twoM); }

    ComplexParam c0_param() const {
        ComplexParam p(a0(), b0());
        p.re_exact = a0_exact;
        p.im_exact = b0_exact;
        return p;
    }
};

}  // namespace gah
