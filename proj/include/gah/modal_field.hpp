#pragma once

// A family of circle functions indexed by representation modes (ell, m, n):
// the partial Fourier data u-hat(t, ell)_{mn} of a function or distribution
// on T^1 x S^3, truncated at twoEllMax and sampled on a uniform t-grid.

#include <map>
#include <stdexcept>

#include "gah/grid_fn.hpp"
#include "gah/half_int.hpp"
#include "gah/wigner.hpp"

namespace gah {

class ModalField {
public:
    ModalField() = default;
    ModalField(std::size_t grid_n, int twoEllMax) : n_(grid_n), twoEllMax_(twoEllMax) {}

    std::size_t grid_size() const { return n_; }
    int twoEllMax() const { return twoEllMax_; }
    const std::map<ModeIndex, PeriodicGridFn>& entries() const { return entries_; }

    void set(const ModeIndex& idx, PeriodicGridFn f) {
        if (idx.twoEll > twoEllMax_)
            throw std::out_of_range("ModalField: mode beyond truncation");
        if (f.size() != n_) throw std::invalid_argument("ModalField: grid size mismatch");
        entries_.insert_or_assign(idx, std::move(f));
    }
    bool has(const ModeIndex& idx) const { return entries_.count(idx) != 0; }
    const PeriodicGridFn& at(const ModeIndex& idx) const { return entries_.at(idx); }

    /// sup over t of |entry|, or 0 for absent modes.
    double mode_sup(const ModeIndex& idx) const {
        auto it = entries_.find(idx);
        return it == entries_.end() ? 0.0 : it->second.max_abs();
    }

    /// Coefficient matrix f-hat(ell) at grid node j.
    CMatrix coefficient_matrix(int twoEll, std::size_t j) const {
        CMatrix M(twoEll + 1);
        for (const auto& [idx, fn] : entries_) {
            if (idx.twoEll != twoEll) continue;
            M.idx(twoEll, idx.twoM, idx.twoN) = fn[j];
        }
        return M;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& [idx, fn] : entries_) m = std::max(m, fn.max_abs());
        return m;
    }

private:
    std::size_t n_ = 0;
    int twoEllMax_ = 0;
    std::map<ModeIndex, PeriodicGridFn> entries_;
};

}  // namespace gah
