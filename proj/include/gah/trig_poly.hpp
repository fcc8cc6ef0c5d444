#pragma once

// Real trigonometric polynomials on the circle T^1 = R/(2*pi*Z), with exact
// coefficient arithmetic (the double coefficients *are* the polynomial) and
// certified sign analysis.  These carry the coefficients a(t), b(t) of the
// operators studied by the rest of the library, together with their
// antiderivatives A, B and averages a0, b0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gah {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Canonicalize an angle to [0, 2*pi).
inline double wrap_angle(double t) {
    double w = std::fmod(t, two_pi);
    if (w < 0) w += two_pi;
    return w;
}

class Antiderivative;

/// p(t) = mean + sum_{k>=1} cos_k cos(kt) + sin_k sin(kt).
/// Immutable after construction; coefficients are exact as stored.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(double mean) : mean_(mean) {}
    TrigPoly(double mean, std::vector<double> cosc, std::vector<double> sinc)
        : mean_(mean), cos_(std::move(cosc)), sin_(std::move(sinc)) {
        trim();
    }

    static TrigPoly harmonic_cos(int k, double amp = 1.0) {
        TrigPoly p;
        p.cos_.assign(static_cast<std::size_t>(k), 0.0);
        p.cos_[static_cast<std::size_t>(k) - 1] = amp;
        return p;
    }
    static TrigPoly harmonic_sin(int k, double amp = 1.0) {
        TrigPoly p;
        p.sin_.assign(static_cast<std::size_t>(k), 0.0);
        p.sin_[static_cast<std::size_t>(k) - 1] = amp;
        return p;
    }

    double mean() const { return mean_; }
    int degree() const {
        return static_cast<int>(std::max(cos_.size(), sin_.size()));
    }
    double cos_coeff(int k) const {
        return (k >= 1 && k <= static_cast<int>(cos_.size())) ? cos_[k - 1] : 0.0;
    }
    double sin_coeff(int k) const {
        return (k >= 1 && k <= static_cast<int>(sin_.size())) ? sin_[k - 1] : 0.0;
    }

    /// Exact structural zero test (the trig basis is linearly independent).
    bool is_zero() const {
        if (mean_ != 0.0) return false;
        for (double c : cos_) if (c != 0.0) return false;
        for (double s : sin_) if (s != 0.0) return false;
        return true;
    }

    double operator()(double t) const {
        double v = mean_;
        for (int k = 1; k <= degree(); ++k)
            v += cos_coeff(k) * std::cos(k * t) + sin_coeff(k) * std::sin(k * t);
        return v;
    }

    /// Average over one period; equals the constant term exactly.
    double average() const { return mean_; }

    TrigPoly derivative() const {
        TrigPoly d;
        int n = degree();
        d.cos_.assign(static_cast<std::size_t>(n), 0.0);
        d.sin_.assign(static_cast<std::size_t>(n), 0.0);
        for (int k = 1; k <= n; ++k) {
            d.cos_[k - 1] = k * sin_coeff(k);
            d.sin_[k - 1] = -k * cos_coeff(k);
        }
        d.trim();
        return d;
    }

    Antiderivative antiderivative() const;

    /// p(t + tau) as a trig polynomial in t.
    TrigPoly translate(double tau) const {
        TrigPoly q;
        q.mean_ = mean_;
        int n = degree();
        q.cos_.assign(static_cast<std::size_t>(n), 0.0);
        q.sin_.assign(static_cast<std::size_t>(n), 0.0);
        for (int k = 1; k <= n; ++k) {
            double ck = std::cos(k * tau), sk = std::sin(k * tau);
            q.cos_[k - 1] = cos_coeff(k) * ck + sin_coeff(k) * sk;
            q.sin_[k - 1] = -cos_coeff(k) * sk + sin_coeff(k) * ck;
        }
        q.trim();
        return q;
    }

    /// p(-t).
    TrigPoly reflect() const {
        TrigPoly q = *this;
        for (double& s : q.sin_) s = -s;
        return q;
    }

    TrigPoly operator-() const {
        TrigPoly q = *this;
        q.mean_ = -q.mean_;
        for (double& c : q.cos_) c = -c;
        for (double& s : q.sin_) s = -s;
        return q;
    }

    friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly r;
        r.mean_ = a.mean_ + b.mean_;
        int n = std::max(a.degree(), b.degree());
        r.cos_.assign(static_cast<std::size_t>(n), 0.0);
        r.sin_.assign(static_cast<std::size_t>(n), 0.0);
        for (int k = 1; k <= n; ++k) {
            r.cos_[k - 1] = a.cos_coeff(k) + b.cos_coeff(k);
            r.sin_[k - 1] = a.sin_coeff(k) + b.sin_coeff(k);
        }
        r.trim();
        return r;
    }
    friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return a + (-b); }
    friend TrigPoly operator*(double s, const TrigPoly& p) {
        TrigPoly q = p;
        q.mean_ *= s;
        for (double& c : q.cos_) c *= s;
        for (double& x : q.sin_) x *= s;
        return q;
    }

    /// sum_k k (|cos_k| + |sin_k|): global bound on |p'|.
    double derivative_bound() const {
        double b = 0;
        for (int k = 1; k <= degree(); ++k)
            b += k * (std::abs(cos_coeff(k)) + std::abs(sin_coeff(k)));
        return b;
    }
    /// sum_k k^2 (|cos_k| + |sin_k|): global bound on |p''|.
    double second_derivative_bound() const {
        double b = 0;
        for (int k = 1; k <= degree(); ++k)
            b += double(k) * k * (std::abs(cos_coeff(k)) + std::abs(sin_coeff(k)));
        return b;
    }
    double coeff_scale() const {
        double s = std::abs(mean_);
        for (int k = 1; k <= degree(); ++k)
            s += std::abs(cos_coeff(k)) + std::abs(sin_coeff(k));
        return s;
    }

private:
    void trim() {
        while (!cos_.empty() && cos_.back() == 0.0) cos_.pop_back();
        while (!sin_.empty() && sin_.back() == 0.0) sin_.pop_back();
    }

    double mean_ = 0.0;
    std::vector<double> cos_;  // index k-1 holds the cos(kt) coefficient
    std::vector<double> sin_;
};

/// F(t) = slope*t + periodic(t) with F(0) = 0.  Holds A(t) = int_0^t a and,
/// after detrending, the periodic parts of the conjugation phases.
class Antiderivative {
public:
    Antiderivative() = default;
    Antiderivative(double slope, TrigPoly periodic)
        : slope_(slope), periodic_(std::move(periodic)) {}

    double slope() const { return slope_; }
    const TrigPoly& periodic_part() const { return periodic_; }

    double operator()(double t) const { return slope_ * t + periodic_(t); }

    /// The periodic remainder F(t) - slope*t (still vanishing at 0).
    Antiderivative detrended() const { return Antiderivative(0.0, periodic_); }

    TrigPoly derivative() const {
        TrigPoly d = periodic_.derivative();
        return TrigPoly(slope_) + d;
    }

private:
    double slope_ = 0.0;
    TrigPoly periodic_;
};

inline Antiderivative TrigPoly::antiderivative() const {
    // int (mean + sum a_k cos kt + b_k sin kt)
    //   = mean*t + sum (a_k/k) sin kt - (b_k/k) cos kt + C, with C fixing F(0)=0.
    TrigPoly per;
    int n = degree();
    per.cos_.assign(static_cast<std::size_t>(n), 0.0);
    per.sin_.assign(static_cast<std::size_t>(n), 0.0);
    double c0 = 0;
    for (int k = 1; k <= n; ++k) {
        per.sin_[k - 1] = cos_coeff(k) / k;
        per.cos_[k - 1] = -sin_coeff(k) / k;
        c0 += sin_coeff(k) / k;
    }
    per.mean_ = c0;
    per.trim();
    return Antiderivative(mean_, per);
}

enum class SignTag { IdenticallyZero, NonNegative, NonPositive, ChangesSign };

struct SignWitness {
    double t = 0;
    double value = 0;
    double margin = 0;  // certified: |p| >= margin at t
};

struct SignClass {
    SignTag tag = SignTag::IdenticallyZero;
    std::optional<SignWitness> negative_point;
    std::optional<SignWitness> positive_point;
    std::optional<double> crossing;  // a point where the sign changes - to +
};

struct CertificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Cell {
    double lo, hi;
    int sign;  // -1, +1, or 0 = undecided
};

// Certified sign of p on [lo,hi] via the centered form
//   |p(t) - p(m) - p'(m)(t-m)| <= D2 (t-m)^2 / 2,
// where D2 bounds |p''| globally.  Returns 0 when the enclosure straddles 0.
inline int certify_cell(const TrigPoly& p, const TrigPoly& dp, double d2,
                        double lo, double hi, double eval_err) {
    double m = 0.5 * (lo + hi);
    double h = 0.5 * (hi - lo);
    double v = p(m);
    double r = std::abs(dp(m)) * h + 0.5 * d2 * h * h + eval_err;
    if (v > r) return +1;
    if (v < -r) return -1;
    return 0;
}

}  // namespace detail

/// Certified sign classification of a trig polynomial over one period.
///
/// Adaptive subdivision of the circle: each cell is certified strictly
/// positive or negative through a derivative-bounded enclosure, and the
/// surviving undecided clusters (shrinking neighborhoods of zeros) are
/// classified by the certified signs flanking them.  A zero with equal
/// flanking signs is a tangency and does not count as a sign change.
///
/// Throws CertificationFailure if the depth limit is reached before every
/// undecided cluster is isolated between certified cells (possible only for
/// coefficients tuned to a degenerate tangency at working precision).
inline SignClass classify_sign(const TrigPoly& p, int max_depth = 40) {
    SignClass out;
    if (p.is_zero()) {
        out.tag = SignTag::IdenticallyZero;
        return out;
    }

    const TrigPoly dp = p.derivative();
    const double d2 = p.second_derivative_bound();
    const double eval_err =
        16.0 * std::numeric_limits<double>::epsilon() * (p.coeff_scale() + 1.0) *
        (p.degree() + 1.0);

    std::vector<detail::Cell> cells;
    int n0 = std::max(16, 8 * p.degree());
    cells.reserve(static_cast<std::size_t>(n0));
    for (int i = 0; i < n0; ++i) {
        double lo = two_pi * i / n0, hi = two_pi * (i + 1) / n0;
        cells.push_back({lo, hi, detail::certify_cell(p, dp, d2, lo, hi, eval_err)});
    }

    const double isolation_width = two_pi * 1e-9;
    for (int depth = 0; depth < max_depth; ++depth) {
        bool any_unknown = false, any_wide = false, all_flanked = true;
        std::size_t n = cells.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (cells[i].sign != 0) continue;
            any_unknown = true;
            if (cells[i].hi - cells[i].lo > isolation_width) any_wide = true;
            // flanked means: following the circle in both directions, the first
            // decided cell exists (not everything undecided).
            bool found = false;
            for (std::size_t k = 1; k < n; ++k)
                if (cells[(i + k) % n].sign != 0) { found = true; break; }
            if (!found) all_flanked = false;
        }
        if (!any_unknown || (all_flanked && !any_wide)) break;
        if (depth + 1 == max_depth) {
            if (!all_flanked || any_wide)
                throw CertificationFailure(
                    "sign certification: depth limit reached before zero isolation");
            break;
        }
        std::vector<detail::Cell> next;
        next.reserve(cells.size() * 2);
        for (const auto& c : cells) {
            if (c.sign != 0) {
                next.push_back(c);
                continue;
            }
            double mid = 0.5 * (c.lo + c.hi);
            next.push_back({c.lo, mid, detail::certify_cell(p, dp, d2, c.lo, mid, eval_err)});
            next.push_back({mid, c.hi, detail::certify_cell(p, dp, d2, mid, c.hi, eval_err)});
        }
        cells.swap(next);
    }

    // Collect certified witnesses.
    bool have_pos = false, have_neg = false;
    for (const auto& c : cells) {
        double m = 0.5 * (c.lo + c.hi);
        if (c.sign > 0 && !have_pos) {
            out.positive_point = SignWitness{wrap_angle(m), p(m), p(m)};
            have_pos = true;
        } else if (c.sign < 0 && !have_neg) {
            out.negative_point = SignWitness{wrap_angle(m), p(m), -p(m)};
            have_neg = true;
        }
    }

    if (!have_pos && !have_neg)
        throw CertificationFailure("sign certification: no cell certified");

    // Scan clusters of undecided cells (circularly) and compare flanking signs.
    std::size_t n = cells.size();
    std::optional<double> minus_to_plus;
    bool any_crossing = false;
    std::size_t i = 0;
    while (i < n) {
        if (cells[i].sign != 0) { ++i; continue; }
        // skip a wrapped cluster's tail; it is handled from its circular start
        if (i == 0 && cells[n - 1].sign == 0) {
            while (i < n && cells[i].sign == 0) ++i;
            continue;
        }
        std::size_t start = i;
        std::size_t end = i;
        while (cells[(end + 1) % n].sign == 0) ++end;  // end may wrap
        int left = cells[(start + n - 1) % n].sign;
        int right = cells[(end + 1) % n].sign;
        double lo = cells[start].lo;
        double hi = cells[end % n].hi;
        if (hi < lo) hi += two_pi;  // wrapped cluster
        double center = wrap_angle(0.5 * (lo + hi));
        if (left != right) {
            any_crossing = true;
            if (left < 0 && right > 0 && !minus_to_plus) minus_to_plus = center;
        }
        i = (end >= n) ? n : end + 1;
    }
    // Also: a crossing forced by opposite certified signs is always separated
    // by an undecided cluster, so the scan above is exhaustive.

    if (any_crossing || (have_pos && have_neg)) {
        out.tag = SignTag::ChangesSign;
        if (!minus_to_plus) {
            // have both signs but every cluster had equal flanks cannot happen
            // on a circle with both signs present; keep a defensive fallback.
            minus_to_plus = out.positive_point ? out.positive_point->t : 0.0;
        }
        out.crossing = minus_to_plus;
        return out;
    }
    out.tag = have_pos ? SignTag::NonNegative : SignTag::NonPositive;
    return out;
}

namespace detail {

/// Golden-section maximization on [lo, hi] (unimodal refinement step).
template <class F>
inline std::pair<double, double> golden_max(const F& f, double lo, double hi,
                                            double tol = 1e-12) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    double m = 0.5 * (a + b);
    return {f(m), m};
}

}  // namespace detail

/// Global maximum of F over [0, 2*pi] to ~1e-12, with the smallest maximizer
/// when the maximum is attained more than once.
inline std::pair<double, double> max_on_period(const Antiderivative& F) {
    const auto f = [&](double t) { return F(t); };
    int n = std::max(4096, 64 * (F.periodic_part().degree() + 1));
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) vals[static_cast<std::size_t>(i)] = f(two_pi * i / n);

    double best = -std::numeric_limits<double>::infinity(), best_t = 0;
    std::vector<std::pair<double, double>> candidates;  // (value, t)
    for (int i = 0; i <= n; ++i) {
        bool local = true;
        if (i > 0 && vals[i - 1] > vals[i]) local = false;
        if (i < n && vals[i + 1] > vals[i]) local = false;
        if (!local) continue;
        double lo = two_pi * std::max(0, i - 1) / n;
        double hi = two_pi * std::min(n, i + 1) / n;
        auto [v, t] = detail::golden_max(f, lo, hi);
        // endpoints themselves are admissible maximizers
        if (f(lo) > v) { v = f(lo); t = lo; }
        if (f(hi) > v) { v = f(hi); t = hi; }
        candidates.emplace_back(v, t);
        if (v > best) { best = v; best_t = t; }
    }
    double tol = 1e-12 * std::max(1.0, std::abs(best));
    double t_min = two_pi;
    for (auto& [v, t] : candidates)
        if (v >= best - tol) t_min = std::min(t_min, t);
    (void)best_t;
    return {best, t_min};
}

}  // namespace gah
