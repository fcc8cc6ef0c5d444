#pragma once

// Half-integer bookkeeping: representation labels ell live in (1/2) N_0 and
// are stored doubled, so every index set is integer arithmetic.

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace gah {

struct HalfInt {
    int twice = 0;

    HalfInt() = default;
    explicit HalfInt(int twice_) : twice(twice_) {}
    static HalfInt from_int(int n) { return HalfInt(2 * n); }

    double value() const { return 0.5 * twice; }
    bool is_integer() const { return twice % 2 == 0; }
    auto operator<=>(const HalfInt&) const = default;
};

/// (ell, m, n) with -ell <= m, n <= ell and ell - m, ell - n in N_0; stored
/// doubled, so the admissibility constraint is a parity match.
struct ModeIndex {
    int twoEll = 0;
    int twoM = 0;
    int twoN = 0;

    ModeIndex() = default;
    ModeIndex(int te, int tm, int tn) : twoEll(te), twoM(tm), twoN(tn) {
        if (!valid())
            throw std::invalid_argument("ModeIndex: |m|,|n| <= ell with matching parity required");
    }

    bool valid() const {
        if (twoEll < 0) return false;
        if (std::abs(twoM) > twoEll || std::abs(twoN) > twoEll) return false;
        return (twoEll - twoM) % 2 == 0 && (twoEll - twoN) % 2 == 0;
    }

    auto operator<=>(const ModeIndex&) const = default;
};

}  // namespace gah
