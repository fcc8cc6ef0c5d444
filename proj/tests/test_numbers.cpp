#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gah/numbers.hpp"

using namespace gah;
using Catch::Approx;

namespace {

// lambda = sum_n 2^{-k_n}, k_1 = 2, k_{n+1} = 2^{k_n}; first `terms` terms,
// evaluated exactly as a big rational p / 2^{k_terms}.
RationalSpec liouville_partial_sum(int terms) {
    std::vector<long long> k{2};
    while (int(k.size()) < terms) k.push_back(1LL << k.back());
    BigInt den = BigInt(1) << k.back();
    BigInt num = 0;
    for (long long kn : k) num += den >> kn;
    RationalSpec r{num, den};
    r.normalize();
    return r;
}

}  // namespace

TEST_CASE("continued fraction of rationals") {
    auto a = cf_of_rational(3, 7);
    REQUIRE(a.size() == 3);
    CHECK(a[0] == 0);
    CHECK(a[1] == 2);
    CHECK(a[2] == 3);  // canonical form: 3/7 = [0;2,3]
    auto c = convergents(a);
    CHECK(c.back().p == 3);
    CHECK(c.back().q == 7);

    // negative values floor correctly
    auto b = cf_of_rational(-7, 3);
    auto cb = convergents(b);
    CHECK(cb.back().p * 3 == cb.back().q * -7);
}

TEST_CASE("convergents satisfy the standard error sandwich") {
    // golden ratio prefix [1;1,1,...]
    std::vector<BigInt> a(20, 1);
    auto c = convergents(a);
    double phi = (1 + std::sqrt(5.0)) / 2;
    for (std::size_t n = 2; n + 1 < c.size(); ++n) {
        double p = c[n].p.convert_to<double>(), q = c[n].q.convert_to<double>();
        double qn = c[n + 1].q.convert_to<double>();
        double err = std::abs(phi - p / q);
        CHECK(err < 1.0 / (q * qn));
        CHECK(err > 1.0 / (q * (qn + q)));
    }
}

TEST_CASE("classify_number: certified kinds") {
    SECTION("3/7 is Rational") {
        CHECK(classify_number(make_rational(3, 7)).cls == NumberClass::Rational);
    }
    SECTION("golden ratio is AlgebraicNonLiouville") {
        QuadraticSurdSpec phi{{BigInt(1)}, {BigInt(1)}};
        CHECK(classify_number(phi).cls == NumberClass::AlgebraicNonLiouville);
        CHECK(to_double(phi) == Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    }
    SECTION("sqrt(2) = [1;2,2,...]") {
        QuadraticSurdSpec r2{{BigInt(1)}, {BigInt(2)}};
        CHECK(classify_number(r2).cls == NumberClass::AlgebraicNonLiouville);
        CHECK(to_double(r2) == Approx(std::sqrt(2.0)).epsilon(1e-14));
    }
    SECTION("floats are never certified") {
        CHECK(classify_number(FloatSpec{0.3333333333}).cls ==
              NumberClass::UnknownUpToDepth);
    }
}

TEST_CASE("constructed Liouville number certified from exact arithmetic") {
    // The quotient stream of lambda agrees with that of its 4-term partial
    // sum S4 until the convergent denominators reach S4's own denominator;
    // the tail of the series is < 2*2^{-2^65536} and cannot disturb the
    // quotients below that scale.  Drop the final quotient (where the
    // truncation would differ from lambda) and feed the prefix.
    RationalSpec s4 = liouville_partial_sum(4);
    auto quotients = cf_of_rational(s4.num, s4.den);
    REQUIRE(quotients.size() > 4);
    quotients.pop_back();
    CfStreamSpec lambda{quotients};

    auto cl = classify_number(lambda);
    REQUIRE(cl.cls == NumberClass::ExponentialLiouville);
    // epsilon >= ln2 / 2 certified from the witnesses
    CHECK(cl.epsilon >= std::numbers::ln2 / 2);
    REQUIRE(cl.witnesses.size() >= 2);
    // the witnesses are the partial sums S2 = 5/16 and S3 = 20481/65536
    CHECK(cl.witnesses.front().q == 16);
    CHECK(cl.witnesses.front().p == 5);
    CHECK(cl.witnesses[1].q == 65536);
    CHECK(cl.witnesses[1].p == 20481);
    // each witness ratio is close to ln 2 (error ~ 2^{-q ln 2} exactly)
    for (const auto& w : cl.witnesses)
        CHECK(w.ratio == Approx(std::numbers::ln2).epsilon(0.02));
}

TEST_CASE("a bounded-quotient stream is not certified Liouville") {
    std::vector<BigInt> ones(30, 1);
    ones[0] = 1;
    CfStreamSpec s{ones};
    auto cl = classify_number(s);
    CHECK(cl.cls == NumberClass::UnknownUpToDepth);
}

TEST_CASE("membership: exact and float-flagged") {
    SECTION("scaled integers") {
        CHECK(in_half_integers(make_rational(1, 2)).tri == Tri::Yes);
        CHECK(in_half_integers(make_rational(1, 3)).tri == Tri::No);
        CHECK(in_integers(make_rational(-4, 2)).tri == Tri::Yes);
        QuadraticSurdSpec r2{{BigInt(1)}, {BigInt(2)}};
        CHECK(in_half_integers(NumberSpec(r2)).tri == Tri::No);
        CHECK(in_half_integers(NumberSpec(r2)).exact);
        // floats: clear distance decides, proximity is flagged
        CHECK(in_half_integers(FloatSpec{0.3}).tri == Tri::No);
        CHECK(in_half_integers(FloatSpec{0.5 + 1e-14}).tri == Tri::Borderline);
        CHECK_FALSE(in_half_integers(FloatSpec{0.3}).exact);
    }
    SECTION("ratio in half integers") {
        CHECK(ratio_in_half_integers(make_rational(1, 2), make_rational(1)).tri == Tri::Yes);
        CHECK(ratio_in_half_integers(make_rational(3, 10), make_rational(2)).tri == Tri::No);
        CHECK(ratio_in_half_integers(make_rational(0), NumberSpec(FloatSpec{1.7})).tri ==
              Tri::Yes);
        QuadraticSurdSpec r2{{BigInt(1)}, {BigInt(2)}};
        CHECK(ratio_in_half_integers(NumberSpec(r2), make_rational(2)).tri == Tri::No);
        CHECK(ratio_in_half_integers(make_rational(1, 3), NumberSpec(r2)).tri == Tri::No);
    }
    SECTION("Z + (alpha/2) Z") {
        // alpha = 3/7: the set is gcd(14,3)/14 Z = Z/14
        CHECK(in_z_plus_half_alpha_z(make_rational(3, 14), make_rational(3, 7)).tri ==
              Tri::Yes);
        CHECK(in_z_plus_half_alpha_z(make_rational(1, 3), make_rational(3, 7)).tri ==
              Tri::No);
        // irrational alpha: rational member iff integer
        QuadraticSurdSpec phi{{BigInt(1)}, {BigInt(1)}};
        CHECK(in_z_plus_half_alpha_z(make_rational(5), NumberSpec(phi)).tri == Tri::Yes);
        CHECK(in_z_plus_half_alpha_z(make_rational(1, 2), NumberSpec(phi)).tri == Tri::No);
        // zero is always a member
        CHECK(in_z_plus_half_alpha_z(make_rational(0), NumberSpec(phi)).tri == Tri::Yes);
    }
}
