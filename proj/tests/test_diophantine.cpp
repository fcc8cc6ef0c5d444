#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gah/diophantine.hpp"

using namespace gah;
using Catch::Approx;

namespace {

// c annotated as a quadratic surd from its continued fraction
ComplexParam golden_c() {
    QuadraticSurdSpec phi{{BigInt(1)}, {BigInt(1)}};
    return ComplexParam::annotated(phi, make_rational(0));
}

// Liouville-type irrational declared by a quotient-stream prefix: the value
// is 2*(2^{-4} + 2^{-44} + 1/3), whose CF prefix encodes a near-resonance of
// quality ~1e-12 at twoM = 16 while staying (by declaration) irrational.
ComplexParam liouville_like_c() {
    BigInt num = 2 * (3 * ((BigInt(1) << 40) + 1) + (BigInt(1) << 44));
    BigInt den = 3 * (BigInt(1) << 44);
    auto quot = cf_of_rational(num, den);
    quot.pop_back();  // stream prefix of an irrational continuation
    CfStreamSpec stream{quot};
    ComplexParam c;
    c.re = num.convert_to<double>() / den.convert_to<double>();
    c.im = 0.0;
    c.re_exact = NumberSpec(stream);
    c.im_exact = make_rational(0);
    return c;
}

}  // namespace

TEST_CASE("resonance_set: worked cases") {
    SECTION("c=0, q=-i: iq = 1 in Z, resonant with witness k=1") {
        auto rs = resonance_set(ComplexParam::exact_rational(0, 1, 0, 1),
                                ComplexParam::exact_rational(0, 1, -1, 1));
        REQUIRE(rs.status == ResonanceSet::Status::Infinite);
        REQUIRE(rs.witness);
        CHECK(rs.witness->k == 1);
        CHECK(rs.witness->twoM == 0);
        CHECK(rs.exact);
    }
    SECTION("c=0, q=1: empty") {
        auto rs = resonance_set(ComplexParam::exact_rational(0, 1, 0, 1),
                                ComplexParam::exact_rational(1, 1, 0, 1));
        CHECK(rs.status == ResonanceSet::Status::Empty);
        CHECK(rs.exact);
    }
    SECTION("c=i, q=1/2: resonant at m = 1/2") {
        auto rs = resonance_set(ComplexParam::exact_rational(0, 1, 1, 1),
                                ComplexParam::exact_rational(1, 2, 0, 1));
        REQUIRE(rs.status == ResonanceSet::Status::Infinite);
        REQUIRE(rs.witness);
        CHECK(rs.witness->twoM == 1);
        CHECK(rs.witness->k == 0);
    }
    SECTION("q shifted by i j translates the witness k") {
        for (long long j : {-2LL, 1LL, 3LL}) {
            auto rs = resonance_set(ComplexParam::exact_rational(0, 1, 1, 1),
                                    ComplexParam::exact_rational(1, 2, j, 1));
            REQUIRE(rs.status == ResonanceSet::Status::Infinite);
            CHECK(rs.witness->twoM == 1);
            CHECK(rs.witness->k == -j);
        }
    }
    SECTION("irrational a0 with integer Im q resonates at m = 0") {
        auto rs = resonance_set(golden_c(), ComplexParam::exact_rational(0, 1, 3, 1));
        REQUIRE(rs.status == ResonanceSet::Status::Infinite);
        CHECK(rs.witness->twoM == 0);
        CHECK(rs.witness->k == -3);
    }
    SECTION("borderline floats are refused") {
        ComplexParam c(0.0, 1.0), q(0.5 + 1e-13, 0.0);
        CHECK_THROWS_AS(resonance_set(c, q), NeedsExactness);
    }
    SECTION("clear floats decide at working precision") {
        ComplexParam c(0.0, 1.0), q(0.3, 0.0);
        auto rs = resonance_set(c, q);
        CHECK(rs.status == ResonanceSet::Status::Empty);
        CHECK_FALSE(rs.exact);
    }
}

TEST_CASE("adc_scan: worked minima") {
    std::vector<double> Bs{0.1, 0.5, 1.0, 2.0};
    SECTION("c=i, q=0.3: minimum is dist(0.3, Z/2) = 0.2 for every cutoff") {
        auto c = ComplexParam::exact_rational(0, 1, 1, 1);
        auto q = ComplexParam::exact_rational(3, 10, 0, 1);
        for (int cut : {10, 50, 200}) {
            auto rep = adc_scan(c, q, AdcFormulation::ADC3, cut, Bs);
            CHECK(rep.verdict == AdcScanReport::Verdict::NoViolationUpToCutoff);
            // the unweighted value at every minimizer stays >= 0.2
            for (const auto& w : rep.minimizers) CHECK(w.value >= 0.2 - 1e-12);
        }
    }
    SECTION("c=0, q=1: |k - i| >= 1, minimum 1 at k=0") {
        auto rep = adc_scan(ComplexParam::exact_rational(0, 1, 0, 1),
                            ComplexParam::exact_rational(1, 1, 0, 1),
                            AdcFormulation::ADC, 50, Bs);
        CHECK(rep.verdict == AdcScanReport::Verdict::NoViolationUpToCutoff);
        double vmin = 1e300;
        for (const auto& w : rep.minimizers) vmin = std::min(vmin, w.value);
        CHECK(vmin == Approx(1.0));
    }
    SECTION("golden ratio c: no violation, minima track convergent denominators") {
        auto rep = adc_scan(golden_c(), ComplexParam::exact_rational(1, 3, 0, 1),
                            AdcFormulation::ADC3, 200, Bs);
        CHECK(rep.verdict == AdcScanReport::Verdict::NoViolationUpToCutoff);
        // badly approximable: |k + (phi/2) l + 1/3| >= c0 / l on the window
        for (const auto& w : rep.minimizers)
            CHECK(w.value * std::max<double>(1.0, std::abs(double(w.twoM))) > 1e-3);
    }
    SECTION("monotonicity: minima nonincreasing in cutoff, nondecreasing in B") {
        auto c = golden_c();
        auto q = ComplexParam::exact_rational(1, 3, 0, 1);
        auto r50 = adc_scan(c, q, AdcFormulation::ADC3, 50, Bs);
        auto r200 = adc_scan(c, q, AdcFormulation::ADC3, 200, Bs);
        for (std::size_t i = 0; i < Bs.size(); ++i) {
            CHECK(r200.minima[i] <= r50.minima[i] * (1 + 1e-12));
            if (i > 0) CHECK(r200.minima[i] >= r200.minima[i - 1] * (1 - 1e-12));
        }
    }
}

TEST_CASE("adc_scan: Liouville-type violation and exact resonance") {
    std::vector<double> Bs{0.1, 0.5, 1.0, 2.0};
    SECTION("stream-annotated near-resonant c: ViolationWitness at twoM=16") {
        auto c = liouville_like_c();
        auto q = ComplexParam::annotated(make_rational(0), make_rational(2, 3));
        auto rep = adc_scan(c, q, AdcFormulation::ADC3, 200, Bs);
        CHECK(rep.verdict == AdcScanReport::Verdict::ViolationWitness);
        CHECK(rep.minimizers[0].twoM == 16);
        CHECK(rep.minimizers[0].value < 1e-11);
    }
    SECTION("rational c with the same value: the dip is an exact resonance") {
        BigInt num = 2 * (3 * ((BigInt(1) << 40) + 1) + (BigInt(1) << 44));
        BigInt den = 3 * (BigInt(1) << 44);
        ComplexParam c = ComplexParam::annotated(RationalSpec{num, den}, make_rational(0));
        auto q = ComplexParam::annotated(make_rational(0), make_rational(2, 3));
        auto rep = adc_scan(c, q, AdcFormulation::ADC3, 200, Bs);
        CHECK(rep.verdict == AdcScanReport::Verdict::ExactResonanceFound);
        REQUIRE(rep.resonance);
    }
}

TEST_CASE("adc_equivalence_check") {
    std::vector<double> Bs{0.1, 0.5, 1.0, 2.0};
    SECTION("c=i, q=0.3: all four formulations agree, witnesses matched") {
        auto r = adc_equivalence_check(ComplexParam::exact_rational(0, 1, 1, 1),
                                       ComplexParam::exact_rational(3, 10, 0, 1), 100, Bs);
        CHECK(r.verdicts_match);
        CHECK(r.reports[0].verdict == AdcScanReport::Verdict::NoViolationUpToCutoff);
        CHECK(r.witnesses_match);
    }
    SECTION("c=0, q=-i: all four report the exact resonance") {
        auto r = adc_equivalence_check(ComplexParam::exact_rational(0, 1, 0, 1),
                                       ComplexParam::exact_rational(0, 1, -1, 1), 100, Bs);
        for (const auto& rep : r.reports)
            CHECK(rep.verdict == AdcScanReport::Verdict::ExactResonanceFound);
    }
    SECTION("Liouville-type c: violation witnesses at matched (k, twoM)") {
        auto c = liouville_like_c();
        auto q = ComplexParam::annotated(make_rational(0), make_rational(2, 3));
        auto r = adc_equivalence_check(c, q, 200, Bs);
        for (const auto& rep : r.reports)
            CHECK(rep.verdict == AdcScanReport::Verdict::ViolationWitness);
        // all formulations localize the collapse at twoM = 16 for the small
        // B's (at large B the e^{B(|k|+ell)} weight buries the dip again)
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r.reports[0].minimizers[i].twoM == 16);
            CHECK(r.reports[1].minimizers[i].twoM == 16);
            CHECK(r.reports[2].minimizers[i].twoM == 16);
            CHECK(r.reports[3].minimizers[i].twoM == 16);
            CHECK(r.reports[0].minimizers[i].k == r.reports[1].minimizers[i].k);
            CHECK(r.reports[1].minimizers[i].k == r.reports[2].minimizers[i].k);
            CHECK(r.reports[0].minimizers[i].k == -7);
        }
    }
}
