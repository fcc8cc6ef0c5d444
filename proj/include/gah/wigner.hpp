#pragma once

// Irreducible unitary representations of S^3 = SU(2) on Euler angles
//
//   x(phi, theta, psi) = z(phi) y(theta) z(psi),
//   t^ell(x)_{mn} = e^{-i m phi} d^ell_{mn}(theta) e^{-i n psi},
//
// with the real little-d matrix in the stable factorial-sum form (intended
// range twoEll <= 64).  Index convention: rows m and columns n run from -ell
// to ell in unit steps (doubled integers internally).
//
// The neutral field acts along psi: the matrix identity
//   -d/dpsi t^ell = t^ell * diag(i m)
// holds exactly in this convention and pins every sign in the library; it is
// asserted spectrally by the convention tests rather than assumed.

#include <cmath>
#include <complex>
#include <vector>

#include "gah/grid_fn.hpp"
#include "gah/half_int.hpp"

namespace gah {

struct EulerAngles {
    double phi = 0;    // [0, 2*pi)
    double theta = 0;  // [0, pi]
    double psi = 0;    // [0, 4*pi)
};

/// Dense square complex matrix indexed by doubled representation indices.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(std::size_t(dim) * dim, cplx(0)) {}

    int dim() const { return dim_; }
    cplx& at(int i, int j) { return a_[std::size_t(i) * dim_ + j]; }
    const cplx& at(int i, int j) const { return a_[std::size_t(i) * dim_ + j]; }

    /// Entry by doubled indices twoM, twoN in {-twoEll, -twoEll+2, ...}.
    cplx& idx(int twoEll, int twoM, int twoN) {
        return at((twoM + twoEll) / 2, (twoN + twoEll) / 2);
    }
    const cplx& idx(int twoEll, int twoM, int twoN) const {
        return at((twoM + twoEll) / 2, (twoN + twoEll) / 2);
    }

    CMatrix adjoint() const {
        CMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
        return r;
    }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        CMatrix r(a.dim_);
        for (int i = 0; i < a.dim_; ++i)
            for (int k = 0; k < a.dim_; ++k) {
                cplx aik = a.at(i, k);
                if (aik == cplx(0)) continue;
                for (int j = 0; j < a.dim_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
        CMatrix r(a.dim_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& x : a_) m = std::max(m, std::abs(x));
        return m;
    }
    double frobenius() const {
        double s = 0;
        for (const auto& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }
    static CMatrix identity(int dim) {
        CMatrix r(dim);
        for (int i = 0; i < dim; ++i) r.at(i, i) = 1.0;
        return r;
    }

private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

namespace detail {

inline double lfact(int n) { return std::lgamma(double(n) + 1.0); }

}  // namespace detail

/// Wigner little-d entry d^ell_{mn}(theta), doubled indices.
inline double wigner_d(int twoEll, int twoM, int twoN, double theta) {
    // factorial arguments (all integers by the parity constraint)
    const int jpm = (twoEll + twoM) / 2, jmm = (twoEll - twoM) / 2;
    const int jpn = (twoEll + twoN) / 2, jmn = (twoEll - twoN) / 2;
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const double logpref =
        0.5 * (detail::lfact(jpm) + detail::lfact(jmm) + detail::lfact(jpn) +
               detail::lfact(jmn));
    const int mmn2 = (twoM - twoN) / 2;  // m - n
    int k_lo = std::max(0, (twoN - twoM) / 2);
    int k_hi = std::min(jpn, jmm);
    double sum = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        // exponents 2j + n - m - 2k and m - n + 2k, both integers by parity
        int pc = twoEll + (twoN - twoM) / 2 - 2 * k;
        int ps = mmn2 + 2 * k;
        double cpart, spart;
        if (pc == 0) cpart = 1.0;
        else if (c == 0.0) { continue; }
        else cpart = std::pow(c, pc);
        if (ps == 0) spart = 1.0;
        else if (s == 0.0) { continue; }
        else spart = std::pow(s, ps);
        double logden = detail::lfact(jpn - k) + detail::lfact(k) +
                        detail::lfact(mmn2 + k) + detail::lfact(jmm - k);
        double term = std::exp(logpref - logden) * cpart * spart;
        sum += ((mmn2 + k) % 2 == 0 ? term : -term);
    }
    return sum;
}

/// Full representation matrix t^ell(x) at the given Euler angles.
inline CMatrix wigner_matrix(int twoEll, const EulerAngles& e) {
    CMatrix D(twoEll + 1);
    for (int twoM = -twoEll; twoM <= twoEll; twoM += 2)
        for (int twoN = -twoEll; twoN <= twoEll; twoN += 2) {
            double d = wigner_d(twoEll, twoM, twoN, e.theta);
            double phase = -0.5 * (twoM * e.phi + twoN * e.psi);
            D.idx(twoEll, twoM, twoN) = std::polar(d, phase);
        }
    return D;
}

/// Symbol of the neutral field: diag(i m), m = -ell..ell.
inline CMatrix neutral_symbol(int twoEll) {
    CMatrix S(twoEll + 1);
    for (int twoM = -twoEll; twoM <= twoEll; twoM += 2)
        S.idx(twoEll, twoM, twoM) = cplx(0.0, 0.5 * twoM);
    return S;
}

/// The defining 2x2 matrix (twoEll = 1 lift) of the Euler angles.
inline CMatrix su2_matrix(const EulerAngles& e) { return wigner_matrix(1, e); }

/// Euler angles of a 2x2 SU(2) matrix, inverse of su2_matrix.
inline EulerAngles euler_from_su2(const CMatrix& u) {
    // u = [[e^{i(phi+psi)/2} cos(theta/2), e^{i(phi-psi)/2} sin(theta/2)],
    //      [-e^{-i(phi-psi)/2} sin(theta/2), e^{-i(phi+psi)/2} cos(theta/2)]]
    // in (row, col) = (-1/2..+1/2) ordering the top-left entry carries
    // e^{+i(phi+psi)/2}.
    cplx alpha = u.at(0, 0);
    cplx beta = u.at(0, 1);
    EulerAngles e;
    e.theta = 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
    const double tol = 1e-13;
    if (std::abs(beta) < tol) {
        e.phi = 0;
        e.psi = std::fmod(2.0 * std::arg(alpha) + 8.0 * std::numbers::pi,
                          4.0 * std::numbers::pi);
    } else if (std::abs(alpha) < tol) {
        e.phi = 0;
        e.psi = std::fmod(-2.0 * std::arg(beta) + 8.0 * std::numbers::pi,
                          4.0 * std::numbers::pi);
    } else {
        double sa = std::arg(alpha), sb = std::arg(beta);
        e.phi = wrap_angle(sa + sb);
        e.psi = std::fmod(sa - sb + 8.0 * std::numbers::pi, 4.0 * std::numbers::pi);
        // the double cover leaves a sign ambiguity; fix it against alpha
        cplx rec = std::polar(std::cos(0.5 * e.theta), 0.5 * (e.phi + e.psi));
        if (std::abs(rec - alpha) > 1e-6)
            e.psi = std::fmod(e.psi + 2.0 * std::numbers::pi, 4.0 * std::numbers::pi);
    }
    return e;
}

}  // namespace gah
