#pragma once

// Analysis and synthesis between Euler-angle product grids on S^3 and
// coefficient matrices, with the Haar measure sin(theta) dtheta dphi dpsi /
// (16 pi^2).  The quadrature is exact for band-limited data: uniform phi and
// psi grids handle the phases, Gauss-Legendre in cos(theta) handles the
// little-d polynomials, and mixed-parity cross terms vanish through the
// psi sum (their frequency is a half-integer on the 4*pi circle).
//
// Plancherel: ||f||^2 = sum over ell of (2 ell + 1) ||f-hat(ell)||_HS^2,
// the normalization being a tested invariant (constant 1 has norm 1).

#include <cmath>
#include <map>
#include <vector>

#include "gah/modal_field.hpp"
#include "gah/quadrature.hpp"
#include "gah/wigner.hpp"

namespace gah {

struct ModeOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Product quadrature grid on S^3: uniform phi (period 2 pi), uniform psi
/// (period 4 pi), Gauss-Legendre nodes in cos(theta).
class S3Grid {
public:
    S3Grid(int n_phi, int n_theta, int n_psi) : nphi_(n_phi), ntheta_(n_theta), npsi_(n_psi) {
        // Gauss-Legendre on [-1, 1] with enough nodes for degree-2L products
        auto& rule10 = gauss_legendre_10();
        (void)rule10;
        compute_gl(n_theta);
    }

    /// Grid sized for exact analysis of data band-limited at twoEllMax.
    static S3Grid for_band_limit(int twoEllMax) {
        return S3Grid(twoEllMax + 2, twoEllMax + 1, 2 * twoEllMax + 2);
    }

    int n_phi() const { return nphi_; }
    int n_theta() const { return ntheta_; }
    int n_psi() const { return npsi_; }
    std::size_t size() const { return std::size_t(nphi_) * ntheta_ * npsi_; }

    double phi(int i) const { return two_pi * i / nphi_; }
    double theta(int i) const { return std::acos(gl_nodes_[std::size_t(i)]); }
    double psi(int i) const { return 2.0 * two_pi * i / npsi_; }

    /// Haar weight of the (phi_i, theta_j, psi_k) node; weights sum to 1.
    double weight(int j_theta) const {
        return gl_weights_[std::size_t(j_theta)] / (2.0 * nphi_ * npsi_);
    }

    std::size_t index(int i_phi, int j_theta, int k_psi) const {
        return (std::size_t(i_phi) * ntheta_ + j_theta) * npsi_ + k_psi;
    }

    template <class F>
    std::vector<cplx> sample(const F& f) const {
        std::vector<cplx> v(size());
        for (int i = 0; i < nphi_; ++i)
            for (int j = 0; j < ntheta_; ++j)
                for (int k = 0; k < npsi_; ++k)
                    v[index(i, j, k)] = f(EulerAngles{phi(i), theta(j), psi(k)});
        return v;
    }

private:
    void compute_gl(int n) {
        gl_nodes_.resize(std::size_t(n));
        gl_weights_.resize(std::size_t(n));
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1; p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1; p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1);
            gl_nodes_[std::size_t(i)] = x;
            gl_weights_[std::size_t(i)] = 2.0 / ((1 - x * x) * dp * dp);
        }
    }

    int nphi_, ntheta_, npsi_;
    std::vector<double> gl_nodes_, gl_weights_;
};

namespace detail {

/// d^ell_{nm}(theta_j) for all modes and grid thetas (basis index order n, m
/// as in the synthesis pairing coefficient (m,n) <-> t^ell_{nm}).
struct LittleDTable {
    int twoEllMax;
    const S3Grid* grid;
    // table[twoEll][(n_idx * dim + m_idx) * ntheta + j]
    std::vector<std::vector<double>> table;

    LittleDTable(int L, const S3Grid& g) : twoEllMax(L), grid(&g) {
        table.resize(std::size_t(L) + 1);
        for (int te = 0; te <= L; ++te) {
            int dim = te + 1;
            table[std::size_t(te)].resize(std::size_t(dim) * dim * g.n_theta());
            for (int tn = -te; tn <= te; tn += 2)
                for (int tm = -te; tm <= te; tm += 2)
                    for (int j = 0; j < g.n_theta(); ++j)
                        table[std::size_t(te)][at(te, tn, tm, j)] =
                            wigner_d(te, tn, tm, g.theta(j));
        }
    }
    std::size_t at(int te, int tn, int tm, int j) const {
        int dim = te + 1;
        return (std::size_t((tn + te) / 2) * dim + std::size_t((tm + te) / 2)) *
                   grid->n_theta() +
               std::size_t(j);
    }
    double d(int te, int tn, int tm, int j) const {
        return table[std::size_t(te)][at(te, tn, tm, j)];
    }
};

}  // namespace detail

/// Fourier coefficients of one S^3 slice: f-hat(ell)_{mn} = int f conj(t^ell_{nm}).
inline std::map<int, CMatrix> analyze_slice(const std::vector<cplx>& samples,
                                            const S3Grid& grid, int twoEllMax) {
    const int L = twoEllMax;
    const int nphi = grid.n_phi(), nth = grid.n_theta(), npsi = grid.n_psi();
    // stage 1: psi transform  F1[(i_phi * nth + j) * (2L+1) + (twoM+L)/1]
    // frequencies e^{+i (twoM/2) psi}
    std::vector<cplx> F1(std::size_t(nphi) * nth * (2 * L + 1));
    for (int i = 0; i < nphi; ++i)
        for (int j = 0; j < nth; ++j) {
            for (int tm = -L; tm <= L; ++tm) {
                cplx acc(0);
                for (int k = 0; k < npsi; ++k) {
                    double ps = grid.psi(k);
                    acc += samples[grid.index(i, j, k)] * std::polar(1.0, 0.5 * tm * ps);
                }
                F1[(std::size_t(i) * nth + j) * (2 * L + 1) + (tm + L)] = acc;
            }
        }
    // stage 2: phi transform with frequencies e^{+i (twoN/2) phi}
    std::vector<cplx> F2(std::size_t(2 * L + 1) * nth * (2 * L + 1));
    for (int tn = -L; tn <= L; ++tn)
        for (int j = 0; j < nth; ++j)
            for (int tm = -L; tm <= L; ++tm) {
                cplx acc(0);
                for (int i = 0; i < nphi; ++i) {
                    double ph = grid.phi(i);
                    acc += F1[(std::size_t(i) * nth + j) * (2 * L + 1) + (tm + L)] *
                           std::polar(1.0, 0.5 * tn * ph);
                }
                F2[(std::size_t(tn + L) * nth + j) * (2 * L + 1) + (tm + L)] = acc;
            }
    // stage 3: theta contraction against d^ell_{nm}
    detail::LittleDTable dt(L, grid);
    std::map<int, CMatrix> out;
    for (int te = 0; te <= L; ++te) {
        CMatrix M(te + 1);
        for (int tm = -te; tm <= te; tm += 2)
            for (int tn = -te; tn <= te; tn += 2) {
                cplx acc(0);
                for (int j = 0; j < nth; ++j)
                    acc += grid.weight(j) * dt.d(te, tn, tm, j) *
                           F2[(std::size_t(tn + L) * nth + std::size_t(j)) * (2 * L + 1) +
                              std::size_t(tm + L)];
                M.idx(te, tm, tn) = acc;
            }
        out.emplace(te, std::move(M));
    }
    return out;
}

/// Synthesis of one S^3 slice from coefficient matrices:
/// f(x) = sum (2 ell + 1) sum_{mn} f-hat_{mn} t^ell_{nm}(x).
inline std::vector<cplx> synthesize_slice(const std::map<int, CMatrix>& coeffs,
                                          const S3Grid& grid, int twoEllMax) {
    const int L = twoEllMax;
    const int nphi = grid.n_phi(), nth = grid.n_theta(), npsi = grid.n_psi();
    detail::LittleDTable dt(L, grid);
    // stage 1: theta synthesis  T[j][(tn+L)][(tm+L)] = sum_ell (2l+1) fhat_{mn} d^l_{nm}(th_j)
    std::vector<cplx> T(std::size_t(nth) * (2 * L + 1) * (2 * L + 1));
    for (const auto& [te, M] : coeffs) {
        if (te > L) throw ModeOutOfRange("synthesize: twoEll beyond truncation");
        double mult = te + 1.0;  // 2 ell + 1
        for (int tm = -te; tm <= te; tm += 2)
            for (int tn = -te; tn <= te; tn += 2) {
                cplx c = M.idx(te, tm, tn);
                if (c == cplx(0)) continue;
                for (int j = 0; j < nth; ++j)
                    T[(std::size_t(j) * (2 * L + 1) + (tn + L)) * (2 * L + 1) + (tm + L)] +=
                        mult * c * dt.d(te, tn, tm, j);
            }
    }
    // stage 2: psi then phi phases e^{-i(n phi + m psi)}
    std::vector<cplx> out(grid.size());
    std::vector<cplx> tmp(std::size_t(2 * L + 1));
    for (int j = 0; j < nth; ++j)
        for (int i = 0; i < nphi; ++i) {
            double ph = grid.phi(i);
            for (int tm = -L; tm <= L; ++tm) {
                cplx acc(0);
                for (int tn = -L; tn <= L; ++tn)
                    acc += T[(std::size_t(j) * (2 * L + 1) + (tn + L)) * (2 * L + 1) + (tm + L)] *
                           std::polar(1.0, -0.5 * tn * ph);
                tmp[std::size_t(tm + L)] = acc;
            }
            for (int k = 0; k < npsi; ++k) {
                double ps = grid.psi(k);
                cplx acc(0);
                for (int tm = -L; tm <= L; ++tm)
                    acc += tmp[std::size_t(tm + L)] * std::polar(1.0, -0.5 * tm * ps);
                out[grid.index(i, j, k)] = acc;
            }
        }
    return out;
}

/// Pointwise synthesis at one Euler point from a ModalField (t on the grid
/// or interpolated).
inline cplx synthesize_at(const ModalField& field, double t, const EulerAngles& x) {
    std::map<int, CMatrix> basis;  // t^ell(x) cache
    cplx acc(0);
    for (const auto& [idx, fn] : field.entries()) {
        auto it = basis.find(idx.twoEll);
        if (it == basis.end())
            it = basis.emplace(idx.twoEll, wigner_matrix(idx.twoEll, x)).first;
        // value of the mode profile at t
        double node = t * double(fn.size()) / two_pi;
        cplx ft;
        auto j = std::size_t(std::llround(node));
        if (std::abs(node - double(j)) < 1e-12 && j <= fn.size()) {
            ft = fn[j % fn.size()];
        } else {
            ft = fn.interp(t);
        }
        acc += double(idx.twoEll + 1) * ft *
               it->second.idx(idx.twoEll, idx.twoN, idx.twoM);
    }
    return acc;
}

/// sqrt(sum (2 ell + 1) ||f-hat(ell)||_HS^2) over the given coefficients.
inline double plancherel_norm(const std::map<int, CMatrix>& coeffs) {
    double s = 0;
    for (const auto& [te, M] : coeffs) s += (te + 1.0) * M.frobenius() * M.frobenius();
    return std::sqrt(s);
}

/// L^2 norm of a modal field over T^1 x S^3 (normalized measures both ways):
/// mean over the t-grid of the slice Plancherel sums.
inline double field_l2_norm(const ModalField& field) {
    if (field.entries().empty()) return 0;
    std::size_t n = field.grid_size();
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (const auto& [idx, fn] : field.entries())
            s += (idx.twoEll + 1.0) * std::norm(fn[j]);
        acc += s;
    }
    return std::sqrt(acc / double(n));
}

}  // namespace gah
