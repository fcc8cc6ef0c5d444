#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gah/gah_engine.hpp"

using namespace gah;

namespace {

OperatorSpec make_spec(TrigPoly a, TrigPoly b, ComplexParam q,
                       std::optional<NumberSpec> a0 = {},
                       std::optional<NumberSpec> b0 = {}) {
    OperatorSpec s;
    s.a = std::move(a);
    s.b = std::move(b);
    s.q = std::move(q);
    s.a0_exact = std::move(a0);
    s.b0_exact = std::move(b0);
    return s;
}

}  // namespace

TEST_CASE("check_c1_c2: worked cases") {
    SECTION("b0=2, q=0.3: C1 (Re q / b0 = 0.15 not in Z/2)") {
        auto r = check_c1_c2(ComplexParam::exact_rational(0, 1, 2, 1),
                             ComplexParam::exact_rational(3, 10, 0, 1));
        CHECK(r.which == C1C2::C1);
        CHECK(r.exact);
    }
    SECTION("b0=1, a0=0, q=1/2: Neither with resonant m = 1/2") {
        auto r = check_c1_c2(ComplexParam::exact_rational(0, 1, 1, 1),
                             ComplexParam::exact_rational(1, 2, 0, 1));
        CHECK(r.which == C1C2::Neither);
        REQUIRE(r.resonant);
        CHECK(r.resonant->twoM == 1);
    }
    SECTION("b0=0, q=1: C2 (Re q != 0)") {
        auto r = check_c1_c2(ComplexParam::exact_rational(0, 1, 0, 1),
                             ComplexParam::exact_rational(1, 1, 0, 1));
        CHECK(r.which == C1C2::C2);
    }
    SECTION("b0=0, Re q=0, Im q in Z + (a0/2) Z: Neither with exact witness") {
        // a0 = 3/7: Im q = 3/14 is (a0/2) * 1
        auto r = check_c1_c2(ComplexParam::exact_rational(3, 7, 0, 1),
                             ComplexParam::exact_rational(0, 1, 3, 14));
        CHECK(r.which == C1C2::Neither);
        REQUIRE(r.resonant);
        // witness satisfies (a0/2) twoM + Im q = -k exactly
        double lhs = (3.0 / 14.0) * double(r.resonant->twoM) + 3.0 / 14.0;
        CHECK(lhs == Catch::Approx(-double(r.resonant->k)));
    }
}

TEST_CASE("gah_constant: the six constant-coefficient branches") {
    GahOptions opt;
    SECTION("(i) b!=0, Re q / b not in Z/2: GAH") {
        auto v = gah_constant(ComplexParam::exact_rational(0, 1, 1, 1),
                              ComplexParam::exact_rational(3, 10, 0, 1), opt);
        CHECK(v.answer == Answer::GAH);
        CHECK(v.kind == Verdict::CertKind::ADCCertified);
        CHECK(v.exact);
    }
    SECTION("(ii) b!=0, Re q / b in Z/2, Im q + Re q a/b in Z: NotGAH resonant") {
        auto v = gah_constant(ComplexParam::exact_rational(0, 1, 1, 1),
                              ComplexParam::exact_rational(1, 2, 0, 1), opt);
        CHECK(v.answer == Answer::NotGAH);
        CHECK(v.kind == Verdict::CertKind::ResonantModes);
        REQUIRE(v.resonance);
        CHECK(v.resonance->twoM == 1);
    }
    SECTION("(iii) b!=0, in Z/2 but Im q + Re q a/b not in Z: GAH") {
        auto v = gah_constant(ComplexParam::exact_rational(0, 1, 1, 1),
                              ComplexParam::exact_rational(1, 2, 3, 10), opt);
        CHECK(v.answer == Answer::GAH);
        CHECK(v.kind == Verdict::CertKind::ADCCertified);
    }
    SECTION("(iv) b=0, Re q != 0: GAH") {
        auto v = gah_constant(ComplexParam::exact_rational(2, 1, 0, 1),
                              ComplexParam::exact_rational(1, 1, 0, 1), opt);
        CHECK(v.answer == Answer::GAH);
    }
    SECTION("(v) b=0, Re q=0, Im q in Z + (a0/2) Z: NotGAH by exact resonance") {
        auto v = gah_constant(ComplexParam::exact_rational(3, 7, 0, 1),
                              ComplexParam::exact_rational(0, 1, 3, 14), opt);
        CHECK(v.answer == Answer::NotGAH);
        CHECK(v.kind == Verdict::CertKind::ResonantModes);
    }
    SECTION("(vi) b=0, Re q=0, Im q outside the discrete rational set: GAH") {
        auto v = gah_constant(ComplexParam::exact_rational(3, 7, 0, 1),
                              ComplexParam::exact_rational(0, 1, 1, 3), opt);
        CHECK(v.answer == Answer::GAH);
        CHECK(v.kind == Verdict::CertKind::ADCCertified);
    }
}

TEST_CASE("gah_constant: lambdaiZ and quadratic-surd branches") {
    SECTION("c=0, q=-i: NotGAH with resonant modes") {
        auto v = gah_constant(ComplexParam::exact_rational(0, 1, 0, 1),
                              ComplexParam::exact_rational(0, 1, -1, 1));
        CHECK(v.answer == Answer::NotGAH);
        CHECK(v.kind == Verdict::CertKind::ResonantModes);
        CHECK(v.resonance->k == 1);
    }
    SECTION("c=0, q=1: GAH") {
        auto v = gah_constant(ComplexParam::exact_rational(0, 1, 0, 1),
                              ComplexParam::exact_rational(1, 1, 0, 1));
        CHECK(v.answer == Answer::GAH);
    }
    SECTION("golden-ratio a0, nonresonant q: certified GAH via bounded quotients") {
        QuadraticSurdSpec phi{{BigInt(1)}, {BigInt(1)}};
        auto c0 = ComplexParam::annotated(phi, make_rational(0));
        auto v = gah_constant(c0, ComplexParam::exact_rational(0, 1, 1, 3));
        CHECK(v.answer == Answer::GAH);
        CHECK(v.kind == Verdict::CertKind::ADCCertified);
        REQUIRE(v.number_class);
        CHECK(v.number_class->cls == NumberClass::AlgebraicNonLiouville);
    }
    SECTION("golden-ratio a0 with q=0 is resonant at m=0 (never GAH unperturbed)") {
        QuadraticSurdSpec phi{{BigInt(1)}, {BigInt(1)}};
        auto c0 = ComplexParam::annotated(phi, make_rational(0));
        auto v = gah_constant(c0, ComplexParam::exact_rational(0, 1, 0, 1));
        CHECK(v.answer == Answer::NotGAH);
        CHECK(v.kind == Verdict::CertKind::ResonantModes);
        CHECK(v.resonance->twoM == 0);
    }
    SECTION("float-only irrational-looking a0: Inconclusive with scan") {
        ComplexParam c0(1.4142135623730951, 0.0);
        ComplexParam q(0.0, 0.333333331);
        auto v = gah_constant(c0, q);
        CHECK(v.answer == Answer::Inconclusive);
        CHECK_FALSE(v.exact);
        CHECK(v.scan.has_value());
    }
}

TEST_CASE("gah_variable: the paper's variable-coefficient examples") {
    SECTION("b = sin t + 2, Re q irrational: GAH through C1") {
        QuadraticSurdSpec r2{{BigInt(1)}, {BigInt(2)}};
        ComplexParam q = ComplexParam::annotated(r2, make_rational(0));
        auto spec = make_spec(TrigPoly::harmonic_cos(3), TrigPoly(2.0) + TrigPoly::harmonic_sin(1),
                              q, make_rational(0), make_rational(2));
        auto v = gah_variable(spec);
        CHECK(v.answer == Answer::GAH);
        CHECK(v.kind == Verdict::CertKind::C1Holds);
        CHECK(v.exact);
    }
    SECTION("b = sin t changes sign: NotGAH for every q") {
        auto spec = make_spec(TrigPoly(0.5), TrigPoly::harmonic_sin(1),
                              ComplexParam::exact_rational(7, 13, 5, 3));
        auto v = gah_variable(spec);
        CHECK(v.answer == Answer::NotGAH);
        CHECK(v.kind == Verdict::CertKind::SignChange);
        REQUIRE(v.sign);
        CHECK(v.sign->tag == SignTag::ChangesSign);
    }
    SECTION("a=0, b=0, q=0: NotGAH with the m=0 resonance") {
        auto spec = make_spec(TrigPoly(), TrigPoly(), ComplexParam::exact_rational(0, 1, 0, 1),
                              make_rational(0), make_rational(0));
        auto v = gah_variable(spec);
        CHECK(v.answer == Answer::NotGAH);
        CHECK(v.kind == Verdict::CertKind::ResonantModes);
        CHECK(v.resonance->twoM == 0);
        CHECK(v.resonance->k == 0);
    }
    SECTION("b = 0 reduces to the frozen operator") {
        auto spec = make_spec(TrigPoly(2.0) + TrigPoly::harmonic_cos(1), TrigPoly(),
                              ComplexParam::exact_rational(1, 1, 0, 1), make_rational(2),
                              make_rational(0));
        auto v = gah_variable(spec);
        CHECK(v.answer == Answer::GAH);  // Re q = 1 != 0
    }
    SECTION("b sign-definite but C1 fails: NotGAH via the frozen resonance") {
        // b0 = 1, q = 1/2: resonant m = 1/2 (the frozen witness replicates)
        auto spec = make_spec(TrigPoly(), TrigPoly(1.0) + 0.5 * TrigPoly::harmonic_sin(1),
                              ComplexParam::exact_rational(1, 2, 0, 1), make_rational(0),
                              make_rational(1));
        auto v = gah_variable(spec);
        CHECK(v.answer == Answer::NotGAH);
        CHECK(v.kind == Verdict::CertKind::ResonantModes);
        CHECK(v.resonance->twoM == 1);
    }
}

TEST_CASE("gah_variable invariances") {
    QuadraticSurdSpec r2{{BigInt(1)}, {BigInt(2)}};
    ComplexParam q = ComplexParam::annotated(r2, make_rational(0));
    auto base = make_spec(TrigPoly::harmonic_cos(2), TrigPoly(2.0) + TrigPoly::harmonic_sin(1),
                          q, make_rational(0), make_rational(2));
    auto v0 = gah_variable(base);
    SECTION("translation invariance") {
        for (double tau : {0.7, 2.9}) {
            auto spec = base;
            spec.a = base.a.translate(tau);
            spec.b = base.b.translate(tau);
            auto v = gah_variable(spec);
            CHECK(v.answer == v0.answer);
            CHECK(v.kind == v0.kind);
        }
    }
    SECTION("mean-zero perturbations of a do not matter when C1 holds") {
        auto spec = base;
        spec.a = base.a + 3.0 * TrigPoly::harmonic_sin(4);
        auto v = gah_variable(spec);
        CHECK(v.answer == v0.answer);
    }
}

TEST_CASE("relation: P GAH implies P0 GAH over randomized annotated specs") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6), deg(0, 3), pick(0, 4);
    int checked = 0;
    for (int rep = 0; rep < 100; ++rep) {
        OperatorSpec spec;
        long long an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
        spec.a = TrigPoly(double(an) / double(ad));
        spec.b = TrigPoly(double(bn) / double(bd));
        if (int d = deg(rng); d > 0) {
            spec.a = spec.a + 0.5 * TrigPoly::harmonic_cos(d);
            // half the time a sign-definite oscillation, half a sign change
            if (pick(rng) < 2)
                spec.b = spec.b + (std::abs(double(bn) / double(bd)) + 0.5) * TrigPoly::harmonic_sin(d);
            else if (pick(rng) < 4 && bn != 0)
                spec.b = spec.b + 0.25 * std::abs(double(bn) / double(bd)) * TrigPoly::harmonic_sin(d);
        }
        spec.a0_exact = make_rational(an, ad);
        spec.b0_exact = make_rational(bn, bd);
        spec.q = ComplexParam::exact_rational(num(rng), den(rng), num(rng), den(rng));
        try {
            auto rel = cross_check_relation(spec);
            CHECK(rel.consistent);
            ++checked;
        } catch (const NeedsExactness&) {
            // borderline float paths cannot occur with fully annotated data
            FAIL("NeedsExactness with annotated data");
        }
    }
    CHECK(checked == 100);
}
