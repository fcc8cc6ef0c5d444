#pragma once

// Decision procedures for global analytic hypoellipticity.
//
// Constant coefficients: L = d/dt + c D + q is GAH iff the resonance set is
// empty and the analytic Diophantine condition holds; the engine walks the
// certified branches (constant lower bounds where |k + c m - i q| is bounded
// away from zero structurally, discreteness for rational data, the
// badly-approximable bound for quadratic-surd averages) and otherwise
// returns Inconclusive with a scan attached.  An exact resonance is always a
// constructive NotGAH certificate.
//
// Variable coefficients: sign analysis of Im c first (a sign change defeats
// GAH outright); b identically zero reduces to the frozen operator; a
// sign-definite nonzero b makes condition C1 decisive, no Diophantine
// condition needed.

#include <map>
#include <optional>
#include <string>

#include "gah/diophantine.hpp"
#include "gah/numbers.hpp"
#include "gah/operator_spec.hpp"
#include "gah/trig_poly.hpp"

namespace gah {

enum class Answer { GAH, NotGAH, Inconclusive };

struct Verdict {
    enum class CertKind {
        SignChange,
        ResonantModes,
        C1Holds,
        C2Holds,
        ADCCertified,
        ADCViolation,
        LiouvilleCertificate,
        ScanOnly
    };

    Answer answer = Answer::Inconclusive;
    CertKind kind = CertKind::ScanOnly;
    bool exact = true;  // decided from exact data/annotations
    std::string detail;

    std::optional<SignClass> sign;
    std::optional<ResonanceWitness> resonance;
    std::optional<NumberClassification> number_class;
    std::optional<AdcScanReport> scan;
    std::map<std::string, double> cutoffs;
};

struct GahOptions {
    int twoEllMax = 64;
    std::vector<double> Bs{0.1, 0.5, 1.0, 2.0};
};

enum class C1C2 { C1, C2, Neither };

struct C1C2Result {
    C1C2 which = C1C2::Neither;
    bool exact = true;
    std::optional<ResonanceWitness> resonant;  // set for Neither
};

/// Conditions (C1)/(C2): exactly the statement that gamma_m avoids iZ for
/// every half-integer m, i.e. the frozen resonance set is empty.
///  C1: b0 != 0 and (Re q / b0 not in Z/2 or Im q + Re q a0/b0 not in Z)
///  C2: b0  = 0 and (Re q != 0 or Im q not in Z + (a0/2) Z)
inline C1C2Result check_c1_c2(const ComplexParam& c0, const ComplexParam& q) {
    C1C2Result out;
    const NumberSpec b0 = c0.im_spec();
    const NumberSpec a0 = c0.re_spec();

    const bool b0_zero = spec_is_zero(b0);
    if (!b0_zero && std::abs(c0.im) <= 1e-12 && !is_exact(b0))
        throw NeedsExactness("check_c1_c2: b0 within tolerance of 0 without annotation");

    if (!b0_zero) {
        Membership mem1 = ratio_in_half_integers(q.re_spec(), b0);
        if (mem1.tri == Tri::Borderline)
            throw NeedsExactness("check_c1_c2: Re q / b0 borderline in Z/2");
        if (mem1.tri == Tri::No) {
            out.which = C1C2::C1;
            out.exact = mem1.exact;
            return out;
        }
        long long twoM = llround(2.0 * q.re / c0.im);
        Membership mem2 = detail::shifted_in_integers(q.im_spec(), a0, twoM);
        if (mem2.tri == Tri::Borderline)
            throw NeedsExactness("check_c1_c2: Im q + m a0 borderline in Z");
        out.exact = mem1.exact && mem2.exact;
        if (mem2.tri == Tri::No) {
            out.which = C1C2::C1;
            return out;
        }
        out.which = C1C2::Neither;
        out.resonant =
            ResonanceWitness{llround(-(q.im + 0.5 * double(twoM) * c0.re)), twoM};
        return out;
    }

    // b0 = 0
    if (!spec_is_zero(q.re_spec())) {
        if (!is_exact(q.re_spec()) && std::abs(q.re) <= 1e-12)
            throw NeedsExactness("check_c1_c2: Re q within tolerance of 0");
        out.which = C1C2::C2;
        out.exact = is_exact(q.re_spec()) || std::abs(q.re) > 1e-12;
        return out;
    }
    Membership mem = in_z_plus_half_alpha_z(q.im_spec(), a0);
    if (mem.tri == Tri::Borderline)
        throw NeedsExactness("check_c1_c2: Im q borderline in Z + (a0/2) Z");
    out.exact = mem.exact;
    if (mem.tri == Tri::No) {
        out.which = C1C2::C2;
        return out;
    }
    out.which = C1C2::Neither;
    const NumberSpec imq = q.im_spec();
    const auto* ra = std::get_if<RationalSpec>(&a0);
    const auto* rq = std::get_if<RationalSpec>(&imq);
    if (ra && rq)
        out.resonant = detail::resonance_witness_rational(*ra, *rq);
    else
        out.resonant = ResonanceWitness{llround(-q.im), 0};
    return out;
}

/// GAH decision for the constant-coefficient operator d/dt + c0 D + q.
inline Verdict gah_constant(const ComplexParam& c0, const ComplexParam& q,
                            const GahOptions& opt = {}) {
    Verdict v;
    v.cutoffs["twoEllMax"] = opt.twoEllMax;

    auto rs = resonance_set(c0, q);
    if (rs.status == ResonanceSet::Status::Infinite) {
        v.answer = Answer::NotGAH;
        v.kind = Verdict::CertKind::ResonantModes;
        v.exact = rs.exact;
        v.resonance = rs.witness;
        v.detail = "resonant modes: k + c m - i q = 0 has solutions, replicated over all ell >= |m|";
        return v;
    }

    auto cc = check_c1_c2(c0, q);
    const NumberSpec b0 = c0.im_spec();
    if (!spec_is_zero(b0)) {
        // empty resonance with b0 != 0 is exactly C1, which bounds the
        // residual |k + c m - i q| below by a constant
        v.answer = Answer::GAH;
        v.kind = Verdict::CertKind::ADCCertified;
        v.exact = cc.exact && rs.exact;
        Membership mem1 = ratio_in_half_integers(q.re_spec(), b0);
        v.detail = (mem1.tri == Tri::No)
                       ? "|m b0 - Re q| >= dist(Re q / b0, Z/2) |b0| > 0 uniformly"
                       : "|k + m a0 + Im q| >= dist to Z > 0 uniformly at the resonant m";
        return v;
    }

    // b0 = 0
    if (!spec_is_zero(q.re_spec())) {
        v.answer = Answer::GAH;
        v.kind = Verdict::CertKind::ADCCertified;
        v.exact = cc.exact && rs.exact;
        v.detail = "|k + c m - i q| >= |Re q| > 0 uniformly";
        return v;
    }

    // b0 = 0, Re q = 0, Im q outside Z + (a0/2) Z: approximation properties
    // of a0 decide
    const NumberSpec a0 = c0.re_spec();
    auto ncl = classify_number(a0);
    v.number_class = ncl;
    if (std::holds_alternative<RationalSpec>(a0)) {
        v.answer = Answer::GAH;
        v.kind = Verdict::CertKind::ADCCertified;
        v.exact = rs.exact;
        v.detail = "a0 rational: Z + (a0/2) Z is discrete and Im q avoids it";
        return v;
    }
    if (ncl.cls == NumberClass::AlgebraicNonLiouville &&
        std::holds_alternative<RationalSpec>(q.im_spec())) {
        // |k + (a0/2) ell + Im q| >= c / ell for badly approximable a0 and
        // rational Im q: polynomial lower bounds beat every e^{-B ell}
        v.answer = Answer::GAH;
        v.kind = Verdict::CertKind::ADCCertified;
        v.exact = rs.exact;
        v.detail = "a0 badly approximable (bounded partial quotients), Im q rational: polynomial lower bound";
        return v;
    }
    v.answer = Answer::Inconclusive;
    v.kind = ncl.cls == NumberClass::ExponentialLiouville
                 ? Verdict::CertKind::LiouvilleCertificate
                 : Verdict::CertKind::ScanOnly;
    v.exact = false;
    v.scan = adc_scan(c0, q, AdcFormulation::ADC3, opt.twoEllMax, opt.Bs);
    if (v.scan->verdict == AdcScanReport::Verdict::ViolationWitness) {
        v.kind = Verdict::CertKind::ADCViolation;
        v.detail = "scan found near-resonances collapsing the empirical K_B";
    } else {
        v.detail = "undecidable from the available annotations; scan attached";
    }
    return v;
}

/// GAH decision for P = d/dt + (a + i b)(t) D + q.
inline Verdict gah_variable(const OperatorSpec& spec, const GahOptions& opt = {}) {
    Verdict v;
    v.cutoffs["twoEllMax"] = opt.twoEllMax;

    SignClass sc = classify_sign(spec.b);
    if (sc.tag == SignTag::ChangesSign) {
        v.answer = Answer::NotGAH;
        v.kind = Verdict::CertKind::SignChange;
        v.sign = sc;
        v.detail = "Im c changes sign: singular solutions exist for every q";
        return v;
    }
    if (sc.tag == SignTag::IdenticallyZero) {
        Verdict inner = gah_constant(spec.c0_param(), spec.q, opt);
        inner.detail = "b == 0: equivalent to the frozen-coefficient operator; " + inner.detail;
        return inner;
    }

    // b sign-definite and not identically zero forces b0 != 0
    auto cc = check_c1_c2(spec.c0_param(), spec.q);
    if (cc.which == C1C2::C1) {
        v.answer = Answer::GAH;
        v.kind = Verdict::CertKind::C1Holds;
        v.exact = cc.exact;
        v.sign = sc;
        v.detail = "Im c sign-definite and C1 holds (no Diophantine condition needed)";
        return v;
    }
    v.answer = Answer::NotGAH;
    v.kind = Verdict::CertKind::ResonantModes;
    v.exact = cc.exact;
    v.sign = sc;
    v.resonance = cc.resonant;
    v.detail = "gamma_m in iZ at the witness m: bounded flat solutions exist";
    return v;
}

struct RelationReport {
    Verdict variable;
    Verdict frozen;
    bool consistent = true;  // never P GAH with P0 not GAH
};

/// P GAH implies P0 GAH; scanning for violations is a structural self-test.
inline RelationReport cross_check_relation(const OperatorSpec& spec,
                                           const GahOptions& opt = {}) {
    RelationReport rep{gah_variable(spec, opt), gah_constant(spec.c0_param(), spec.q, opt),
                       true};
    if (rep.variable.answer == Answer::GAH && rep.frozen.answer != Answer::GAH)
        rep.consistent = false;
    return rep;
}

}  // namespace gah
