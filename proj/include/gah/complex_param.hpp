#pragma once

// Complex scalar parameters (the constants c, q and the averages c0) carrying
// optional exact annotations for their real and imaginary parts.  Membership
// decisions in measure-zero sets are made through the annotations; bare
// floats close to such a set can only be flagged, never decided.

#include <complex>
#include <optional>
#include <stdexcept>

#include "gah/numbers.hpp"

namespace gah {

struct ComplexParam {
    double re = 0, im = 0;
    std::optional<NumberSpec> re_exact;
    std::optional<NumberSpec> im_exact;

    ComplexParam() = default;
    ComplexParam(double r, double i) : re(r), im(i) {}
    explicit ComplexParam(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    static ComplexParam annotated(NumberSpec r, NumberSpec i) {
        ComplexParam p;
        p.re = to_double(r);
        p.im = to_double(i);
        p.re_exact = std::move(r);
        p.im_exact = std::move(i);
        return p;
    }
    static ComplexParam exact_rational(long long pr, long long qr, long long pi,
                                       long long qi) {
        return annotated(make_rational(pr, qr), make_rational(pi, qi));
    }

    std::complex<double> value() const { return {re, im}; }

    /// Annotation if present, else the float value wrapped as such.
    NumberSpec re_spec() const { return re_exact ? *re_exact : NumberSpec(FloatSpec{re}); }
    NumberSpec im_spec() const { return im_exact ? *im_exact : NumberSpec(FloatSpec{im}); }

    bool fully_annotated() const { return re_exact && im_exact; }

    /// Annotations must agree with the float values.
    void validate() const {
        if (re_exact && std::abs(to_double(*re_exact) - re) > 1e-15 * (1 + std::abs(re)))
            throw std::invalid_argument("ComplexParam: re annotation disagrees with value");
        if (im_exact && std::abs(to_double(*im_exact) - im) > 1e-15 * (1 + std::abs(im)))
            throw std::invalid_argument("ComplexParam: im annotation disagrees with value");
    }
};

/// gamma_m = i m c0 + q = (Re q - m b0) + i (m a0 + Im q).
struct Gamma {
    std::complex<double> value;
    int twoM = 0;
};

inline Gamma gamma_multiplier(std::complex<double> c0, std::complex<double> q, int twoM) {
    double m = 0.5 * twoM;
    return {std::complex<double>(q.real() - m * c0.imag(), m * c0.real() + q.imag()), twoM};
}

/// Distance from gamma to the lattice iZ (the resonance set of d/dt + gamma).
inline double dist_to_i_integers(std::complex<double> gamma) {
    double k = std::round(gamma.imag());
    return std::hypot(gamma.real(), gamma.imag() - k);
}

inline int nearest_i_integer(std::complex<double> gamma) {
    return int(std::llround(gamma.imag()));
}

}  // namespace gah
