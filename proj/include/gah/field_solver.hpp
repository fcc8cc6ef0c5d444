#pragma once

// Mode-wise application of the per-mode solver across a whole ModalField:
// P u = f entry by entry, with resonant modes collected and reported
// together (the solve is all-or-nothing).

#include <set>
#include <vector>

#include "gah/modal_field.hpp"
#include "gah/modal_solver.hpp"

namespace gah {

inline ModalField solve_field(const OperatorSpec& spec, const ModalField& f,
                              const SolveOptions& opt = {}) {
    std::set<int> bad;
    for (const auto& [idx, fn] : f.entries()) {
        cplx gamma = spec.gamma(idx.twoM).value;
        if (dist_to_i_integers(gamma) <= resonance_tol) bad.insert(idx.twoM);
    }
    if (!bad.empty()) throw ResonantModesError(std::vector<int>(bad.begin(), bad.end()));

    ModalField u(f.grid_size(), f.twoEllMax());
    for (const auto& [idx, fn] : f.entries()) {
        PeriodicGridFn sol = solve_mode(spec, idx.twoM, fn, opt);
        u.set(idx, sol.size() == f.grid_size() ? sol : sol.resampled(f.grid_size()));
    }
    return u;
}

/// Worst relative mode residual of P u = f over the present modes.
inline double field_residual(const OperatorSpec& spec, const ModalField& f,
                             const ModalField& u) {
    double worst = 0;
    for (const auto& [idx, fn] : f.entries())
        worst = std::max(worst, residual_mode(spec, idx.twoM, fn, u.at(idx)));
    return worst;
}

}  // namespace gah
