#pragma once

// Exact number kinds for the Diophantine side of the library: rationals,
// quadratic surds given by their (eventually periodic) continued fraction,
// and finite partial-quotient streams standing for irrationals known only to
// some depth.  Classification separates rationals, badly-approximable
// algebraics, and numbers with certified exponential-Liouville approximation
// quality, with big-integer convergent arithmetic throughout.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gah {

using BigInt = boost::multiprecision::cpp_int;

struct RationalSpec {
    BigInt num;
    BigInt den;  // > 0, lowest terms after normalize()
    void normalize() {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { den = -den; num = -num; }
        BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
};

/// Eventually periodic continued fraction [pre..; period..] — a quadratic
/// irrational.  The period must be nonempty.
struct QuadraticSurdSpec {
    std::vector<BigInt> cf_preperiod;
    std::vector<BigInt> cf_period;
};

/// A finite prefix of the continued fraction of an irrational number.
struct CfStreamSpec {
    std::vector<BigInt> quotients;
};

struct FloatSpec {
    double value = 0;
};

using NumberSpec = std::variant<RationalSpec, QuadraticSurdSpec, CfStreamSpec, FloatSpec>;

namespace detail {

inline double big_log(const BigInt& n) {
    if (n <= 0) throw std::domain_error("big_log of nonpositive value");
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    if (bits <= 53) return std::log(n.convert_to<double>());
    BigInt top = n >> (bits - 53);
    return std::log(top.convert_to<double>()) + double(bits - 53) * std::numbers::ln2;
}

inline double big_to_double(const BigInt& n) {
    if (n != 0 && boost::multiprecision::msb(n < 0 ? BigInt(-n) : n) > 1020)
        return n < 0 ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
    return n.convert_to<double>();
}

}  // namespace detail

/// Convergents p_n/q_n of a partial-quotient sequence.
struct Convergent {
    BigInt p, q;
};

inline std::vector<Convergent> convergents(const std::vector<BigInt>& a) {
    std::vector<Convergent> c;
    BigInt p0 = 1, q0 = 0;  // formally p_{-1}/q_{-1}
    BigInt p1 = 0, q1 = 1;
    for (const auto& ak : a) {
        BigInt p = ak * p0 + p1;
        BigInt q = ak * q0 + q1;
        c.push_back({p, q});
        p1 = p0; q1 = q0;
        p0 = p; q0 = q;
    }
    return c;
}

/// Euclidean continued fraction of p/q, canonical (last quotient >= 2 when
/// the expansion has more than one term).
inline std::vector<BigInt> cf_of_rational(BigInt p, BigInt q) {
    if (q == 0) throw std::invalid_argument("cf_of_rational: zero denominator");
    if (q < 0) { q = -q; p = -p; }
    std::vector<BigInt> a;
    // floor division
    while (true) {
        BigInt fl = p / q;
        if (p < 0 && fl * q != p) fl -= 1;
        a.push_back(fl);
        BigInt r = p - fl * q;
        if (r == 0) break;
        p = q;
        q = r;
    }
    if (a.size() > 1 && a.back() == 1) {
        a.pop_back();
        a.back() += 1;
    }
    return a;
}

inline double value_of_cf(const std::vector<BigInt>& a) {
    if (a.empty()) throw std::invalid_argument("empty continued fraction");
    double x = detail::big_to_double(a.back());
    for (std::size_t i = a.size() - 1; i-- > 0;)
        x = detail::big_to_double(a[i]) + 1.0 / x;
    return x;
}

inline double to_double(const NumberSpec& s) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RationalSpec>)
                return detail::big_to_double(v.num) / detail::big_to_double(v.den);
            else if constexpr (std::is_same_v<T, QuadraticSurdSpec>) {
                std::vector<BigInt> a = v.cf_preperiod;
                // unroll the period far past double precision
                for (int rep = 0; rep < 64 && a.size() < 200; ++rep)
                    a.insert(a.end(), v.cf_period.begin(), v.cf_period.end());
                return value_of_cf(a);
            } else if constexpr (std::is_same_v<T, CfStreamSpec>)
                return value_of_cf(v.quotients);
            else
                return v.value;
        },
        s);
}

inline bool is_exact(const NumberSpec& s) {
    return !std::holds_alternative<FloatSpec>(s);
}

inline NumberSpec make_rational(long long p, long long q = 1) {
    RationalSpec r{BigInt(p), BigInt(q)};
    r.normalize();
    return r;
}

// ---------------------------------------------------------------------------
// Membership of a number in discrete subgroups of R, with the three-valued
// outcome the decision procedures need: floats too close to the set can never
// be decided and are flagged instead.

enum class Tri { Yes, No, Borderline };

struct Membership {
    Tri tri = Tri::Borderline;
    bool exact = false;  // certified from exact annotations, not float distance
};

/// Is mult*x an integer?  (mult = 1: x in Z; mult = 2: x in Z/2.)
inline Membership in_scaled_integers(const NumberSpec& x, long mult, double tol = 1e-12) {
    if (const auto* r = std::get_if<RationalSpec>(&x)) {
        BigInt m = BigInt(mult) * r->num;
        return {(m % r->den == 0) ? Tri::Yes : Tri::No, true};
    }
    if (std::holds_alternative<QuadraticSurdSpec>(x) ||
        std::holds_alternative<CfStreamSpec>(x))
        return {Tri::No, true};  // irrational by declaration
    double v = double(mult) * std::get<FloatSpec>(x).value;
    double d = std::abs(v - std::round(v));
    return {d <= tol ? Tri::Borderline : Tri::No, false};
}

inline Membership in_integers(const NumberSpec& x, double tol = 1e-12) {
    return in_scaled_integers(x, 1, tol);
}
inline Membership in_half_integers(const NumberSpec& x, double tol = 1e-12) {
    return in_scaled_integers(x, 2, tol);
}

inline bool spec_is_zero(const NumberSpec& x) {
    if (const auto* r = std::get_if<RationalSpec>(&x)) return r->num == 0;
    if (const auto* f = std::get_if<FloatSpec>(&x)) return f->value == 0.0;
    return false;  // surds and streams denote irrationals
}

/// Is x/y in Z/2 (y != 0)?  Annotated kinds decide exactly where possible.
inline Membership ratio_in_half_integers(const NumberSpec& x, const NumberSpec& y,
                                         double tol = 1e-12) {
    if (spec_is_zero(x)) return {Tri::Yes, is_exact(x)};
    const auto* rx = std::get_if<RationalSpec>(&x);
    const auto* ry = std::get_if<RationalSpec>(&y);
    if (rx && ry) {
        // 2x/y = 2 num_x den_y / (den_x num_y)
        BigInt num = 2 * rx->num * ry->den;
        BigInt den = rx->den * ry->num;
        if (den == 0) throw std::domain_error("ratio_in_half_integers: zero divisor");
        return {(num % den == 0) ? Tri::Yes : Tri::No, true};
    }
    bool x_irr = std::holds_alternative<QuadraticSurdSpec>(x) ||
                 std::holds_alternative<CfStreamSpec>(x);
    bool y_irr = std::holds_alternative<QuadraticSurdSpec>(y) ||
                 std::holds_alternative<CfStreamSpec>(y);
    if (x_irr && ry) return {Tri::No, true};  // irrational / rational
    if (rx && y_irr) return {Tri::No, true};  // nonzero rational / irrational
    double v = 2.0 * to_double(x) / to_double(y);
    double d = std::abs(v - std::round(v));
    return {d <= tol ? Tri::Borderline : Tri::No, false};
}

/// Is x in Z + (alpha/2) Z?
/// For rational alpha = p/r the set is (g/(2r)) Z with g = gcd(2r, p).
inline Membership in_z_plus_half_alpha_z(const NumberSpec& x, const NumberSpec& alpha,
                                         double tol = 1e-12) {
    if (spec_is_zero(x)) return {Tri::Yes, is_exact(x)};
    if (const auto* ra = std::get_if<RationalSpec>(&alpha)) {
        if (ra->num == 0) return in_integers(x, tol);
        BigInt twor = 2 * ra->den;
        BigInt g = boost::multiprecision::gcd(twor, ra->num < 0 ? BigInt(-ra->num) : ra->num);
        // x in (g/(2r)) Z  <=>  x * (2r/g) in Z
        BigInt mult = twor / g;
        if (const auto* rx = std::get_if<RationalSpec>(&x)) {
            BigInt m = mult * rx->num;
            return {(m % rx->den == 0) ? Tri::Yes : Tri::No, true};
        }
        if (std::holds_alternative<QuadraticSurdSpec>(x) ||
            std::holds_alternative<CfStreamSpec>(x))
            return {Tri::No, true};
        double v = mult.convert_to<double>() * std::get<FloatSpec>(x).value;
        double d = std::abs(v - std::round(v));
        return {d <= tol ? Tri::Borderline : Tri::No, false};
    }
    bool alpha_irr = std::holds_alternative<QuadraticSurdSpec>(alpha) ||
                     std::holds_alternative<CfStreamSpec>(alpha);
    if (alpha_irr) {
        // l = 0 branch is decidable; l != 0 forces x - l*alpha/2 irrational,
        // so a rational x is in the set iff it is an integer.
        Membership int_part = in_integers(x, tol);
        if (int_part.tri == Tri::Yes) return int_part;
        if (std::get_if<RationalSpec>(&x)) return {Tri::No, true};
    }
    // Fall back to a bounded float search over l.
    double xa = to_double(x), al = to_double(alpha);
    for (long l = -64; l <= 64; ++l) {
        double v = xa - 0.5 * al * double(l);
        if (std::abs(v - std::round(v)) <= tol) return {Tri::Borderline, false};
    }
    return {Tri::No, false};
}

// ---------------------------------------------------------------------------
// Liouville classification

enum class NumberClass { Rational, AlgebraicNonLiouville, ExponentialLiouville, UnknownUpToDepth };

struct LiouvilleConfig {
    double epsilon0 = 1e-3;  // minimal acceptable -log|x - p/q| / q
    int depth = 30;          // partial quotients consumed at most
};

struct ConvergentWitness {
    BigInt p, q;
    double ratio;  // certified lower bound on -log|x - p/q| / q
};

struct NumberClassification {
    NumberClass cls = NumberClass::UnknownUpToDepth;
    int depth_used = 0;
    double epsilon = 0;  // certified Liouville quality (min witness ratio)
    std::vector<ConvergentWitness> witnesses;
};

/// Classify a number from its exact representation.
///
/// A quotient stream certifies exponential-Liouville quality through the
/// two-sided convergent error bound 1/(q_n (q_{n+1}+q_n)) < |x - p_n/q_n| <
/// 1/(q_n q_{n+1}): a convergent with q_n >= 16 whose next denominator is
/// exponentially large in q_n witnesses |x - p/q| <= e^{-ratio * q}.  The
/// stream is certified when at least two witnesses with geometrically
/// growing q appear and their quality does not decay (bounded-quotient
/// numbers have ratio ~ log(q)/q -> 0 instead).
inline NumberClassification classify_number(const NumberSpec& s,
                                            const LiouvilleConfig& cfg = {}) {
    NumberClassification out;
    if (std::holds_alternative<RationalSpec>(s)) {
        out.cls = NumberClass::Rational;
        return out;
    }
    if (std::holds_alternative<QuadraticSurdSpec>(s)) {
        // Periodic continued fraction: partial quotients are bounded, so
        // |x - p/q| >= C/q^2 and the Liouville inequality fails for every
        // epsilon beyond finitely many q.
        out.cls = NumberClass::AlgebraicNonLiouville;
        return out;
    }
    if (std::holds_alternative<FloatSpec>(s)) {
        out.cls = NumberClass::UnknownUpToDepth;
        return out;
    }

    const auto& stream = std::get<CfStreamSpec>(s).quotients;
    std::vector<BigInt> a = stream;
    if (a.size() > std::size_t(cfg.depth)) a.resize(std::size_t(cfg.depth));
    out.depth_used = int(a.size());
    if (a.size() < 3) return out;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] < 1) throw std::invalid_argument("cf stream: quotient < 1");

    auto conv = convergents(a);
    std::vector<ConvergentWitness> cand;
    for (std::size_t n = 0; n + 1 < conv.size(); ++n) {
        const BigInt& q = conv[n].q;
        const BigInt& qn = conv[n + 1].q;
        if (q < 16) continue;
        double ratio = (detail::big_log(q) + detail::big_log(qn)) / detail::big_to_double(q);
        if (ratio >= cfg.epsilon0) cand.push_back({conv[n].p, q, ratio});
    }
    // Certify from the best pair of approximations at geometrically separated
    // scales whose quality does not degrade.  Bounded-quotient numbers have
    // ratio ~ 2 log(q)/q, which drops by far more than half when q grows
    // fourfold, so they can never form such a pair.
    double best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            if (cand[j].q < 4 * cand[i].q) continue;
            if (cand[j].ratio < 0.5 * cand[i].ratio) continue;
            double eps = std::min(cand[i].ratio, cand[j].ratio);
            if (eps > best) { best = eps; bi = i; bj = j; }
        }
    if (best > 0) {
        out.cls = NumberClass::ExponentialLiouville;
        out.epsilon = best;
        out.witnesses = {cand[bi], cand[bj]};
    } else {
        out.cls = NumberClass::UnknownUpToDepth;
        out.witnesses = cand;
    }
    return out;
}

}  // namespace gah
