#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gah/decay_fit.hpp"
#include "gah/su2_transform.hpp"
#include "gah/wigner.hpp"

using namespace gah;
using Catch::Approx;

namespace {

std::mt19937& rng() {
    static std::mt19937 r(2024);
    return r;
}

EulerAngles random_angles() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {two_pi * u(rng()), std::acos(2 * u(rng()) - 1), 2 * two_pi * u(rng())};
}

std::map<int, CMatrix> random_coeffs(int twoEllMax) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::map<int, CMatrix> c;
    for (int te = 0; te <= twoEllMax; ++te) {
        CMatrix M(te + 1);
        for (int i = 0; i <= te; ++i)
            for (int j = 0; j <= te; ++j) M.at(i, j) = cplx(u(rng()), u(rng()));
        c.emplace(te, std::move(M));
    }
    return c;
}

double coeff_distance(const std::map<int, CMatrix>& a, const std::map<int, CMatrix>& b) {
    double worst = 0;
    for (const auto& [te, M] : a) {
        auto it = b.find(te);
        REQUIRE(it != b.end());
        worst = std::max(worst, (M - it->second).max_abs());
    }
    return worst;
}

}  // namespace

TEST_CASE("wigner matrices: base cases") {
    CHECK(wigner_matrix(0, random_angles()).at(0, 0) == cplx(1.0));
    auto id = wigner_matrix(1, EulerAngles{0, 0, 0});
    CHECK((id - CMatrix::identity(2)).max_abs() < 1e-15);
}

TEST_CASE("wigner matrices are unitary") {
    for (int twoEll : {1, 2, 3, 5, 8, 13, 20}) {
        auto e = random_angles();
        auto D = wigner_matrix(twoEll, e);
        auto err = (D * D.adjoint() - CMatrix::identity(twoEll + 1)).max_abs();
        CHECK(err < 1e-10);
    }
}

TEST_CASE("homomorphism through the defining representation") {
    for (int rep = 0; rep < 5; ++rep) {
        auto ex = random_angles();
        auto ey = random_angles();
        auto prod = su2_matrix(ex) * su2_matrix(ey);
        auto exy = euler_from_su2(prod);
        // round trip and product law at the 2x2 level
        CHECK((su2_matrix(exy) - prod).max_abs() < 1e-11);
        for (int twoEll : {2, 3, 6}) {
            auto lhs = wigner_matrix(twoEll, exy);
            auto rhs = wigner_matrix(twoEll, ex) * wigner_matrix(twoEll, ey);
            CHECK((lhs - rhs).max_abs() < 1e-8);
        }
    }
}

TEST_CASE("neutral symbol") {
    CHECK(neutral_symbol(0).at(0, 0) == cplx(0.0));
    auto s1 = neutral_symbol(1);
    CHECK(s1.idx(1, -1, -1) == cplx(0.0, -0.5));
    CHECK(s1.idx(1, 1, 1) == cplx(0.0, 0.5));
    auto s4 = neutral_symbol(4);
    for (int tm = -4; tm <= 4; tm += 2)
        CHECK(s4.idx(4, tm, tm) == cplx(0.0, 0.5 * tm));
    CHECK(std::abs(s4.idx(4, -4, -4) - cplx(0.0, -2.0)) == 0.0);
    CHECK(std::abs(s4.idx(4, 4, 2))== 0.0);
}

TEST_CASE("neutral field along psi = right multiplication by the symbol") {
    // The spectral psi-derivative of the representation matrix satisfies
    //   -(d/dpsi) t^ell = t^ell diag(i m)
    // exactly in this convention; this is the test that pins the angles.
    const std::size_t npsi = 32;
    for (int twoEll : {1, 2, 3, 8}) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double phi = two_pi * u(rng()), theta = std::acos(2 * u(rng()) - 1);
        auto sym = neutral_symbol(twoEll);
        double worst = 0;
        for (int tm = -twoEll; tm <= twoEll; tm += 2)
            for (int tn = -twoEll; tn <= twoEll; tn += 2) {
                std::vector<cplx> samp(npsi);
                for (std::size_t k = 0; k < npsi; ++k) {
                    double psi = 2.0 * two_pi * double(k) / double(npsi);
                    samp[k] = wigner_matrix(twoEll, {phi, theta, psi}).idx(twoEll, tm, tn);
                }
                auto dsamp = dft_derivative(samp, 2.0 * two_pi);
                for (std::size_t k = 0; k < npsi; ++k) {
                    cplx lhs = -dsamp[k];
                    cplx rhs = samp[k] * sym.idx(twoEll, tn, tn);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("analysis/synthesis round trip on S^3 slices") {
    const int L = 8;
    auto grid = S3Grid::for_band_limit(L);
    SECTION("constant function: only the trivial mode") {
        std::vector<cplx> f(grid.size(), cplx(2.5, -0.5));
        auto c = analyze_slice(f, grid, L);
        CHECK(std::abs(c.at(0).at(0, 0) - cplx(2.5, -0.5)) < 1e-12);
        double others = 0;
        for (const auto& [te, M] : c)
            if (te > 0) others = std::max(others, M.max_abs());
        CHECK(others < 1e-12);
    }
    SECTION("single representation entry reproduces itself") {
        // f = t^1(x)_{nm} with (m, n) = (1/2, -1/2) as the coefficient slot
        auto f = grid.sample([](const EulerAngles& x) {
            return wigner_matrix(1, x).idx(1, -1, 1);  // t^{1/2}_{nm}, n=-1/2, m=1/2
        });
        auto c = analyze_slice(f, grid, L);
        // orthogonality: f-hat(1/2)_{mn} = delta / (2 ell + 1) at slot m=1/2, n=-1/2
        CHECK(std::abs(c.at(1).idx(1, 1, -1) - cplx(0.5)) < 1e-12);
        auto back = synthesize_slice(c, grid, L);
        double worst = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(back[i] - f[i]));
        CHECK(worst < 1e-10);
    }
    SECTION("random band-limited field round trip") {
        auto coeffs = random_coeffs(L);
        auto f = synthesize_slice(coeffs, grid, L);
        auto c2 = analyze_slice(f, grid, L);
        CHECK(coeff_distance(coeffs, c2) < 1e-10);
    }
}

TEST_CASE("plancherel") {
    const int L = 6;
    auto grid = S3Grid::for_band_limit(L);
    SECTION("single ell = 0 coefficient of size 3") {
        std::map<int, CMatrix> c;
        CMatrix m(1);
        m.at(0, 0) = 3.0;
        c.emplace(0, m);
        CHECK(plancherel_norm(c) == Approx(3.0));
    }
    SECTION("constant 1 has norm 1 (normalization invariant)") {
        std::vector<cplx> f(grid.size(), cplx(1.0));
        CHECK(plancherel_norm(analyze_slice(f, grid, L)) == Approx(1.0).margin(1e-12));
    }
    SECTION("norm^2 of t^{1/2}_{11} is 1/2, cross-checked by grid quadrature") {
        auto f = grid.sample([](const EulerAngles& x) {
            return wigner_matrix(1, x).idx(1, 1, 1);
        });
        auto c = analyze_slice(f, grid, L);
        double pn = plancherel_norm(c);
        CHECK(pn * pn == Approx(0.5).margin(1e-12));
        // independent quadrature of int |f|^2 with the Haar weights
        double q = 0;
        for (int i = 0; i < grid.n_phi(); ++i)
            for (int j = 0; j < grid.n_theta(); ++j)
                for (int k = 0; k < grid.n_psi(); ++k)
                    q += grid.weight(j) * std::norm(f[grid.index(i, j, k)]);
        CHECK(q == Approx(0.5).margin(1e-12));
    }
    SECTION("zero field") {
        CHECK(plancherel_norm({}) == 0.0);
    }
    SECTION("grid L^2 norm matches the mode sum for random fields") {
        auto coeffs = random_coeffs(L);
        auto f = synthesize_slice(coeffs, grid, L);
        double q = 0;
        for (int i = 0; i < grid.n_phi(); ++i)
            for (int j = 0; j < grid.n_theta(); ++j)
                for (int k = 0; k < grid.n_psi(); ++k)
                    q += grid.weight(j) * std::norm(f[grid.index(i, j, k)]);
        double pn = plancherel_norm(coeffs);
        CHECK(std::sqrt(q) == Approx(pn).margin(1e-8));
    }
}

TEST_CASE("synthesize_at matches slice synthesis") {
    const int L = 4;
    auto grid = S3Grid::for_band_limit(L);
    ModalField field(32, L);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int te = 0; te <= L; ++te)
        for (int tm = -te; tm <= te; tm += 2)
            for (int tn = -te; tn <= te; tn += 2) {
                auto prof = PeriodicGridFn::sample(32, [&](double t) {
                    return cplx(u(rng()), u(rng())) * std::cos(t);
                });
                field.set(ModeIndex(te, tm, tn), prof);
            }
    std::size_t node = 7;
    double t = field.at(ModeIndex(0, 0, 0)).node(node);
    auto coeffs = [&] {
        std::map<int, CMatrix> c;
        for (int te = 0; te <= L; ++te) c.emplace(te, field.coefficient_matrix(te, node));
        return c;
    }();
    auto f = synthesize_slice(coeffs, grid, L);
    for (std::size_t trial = 0; trial < 5; ++trial) {
        int i = int(trial) % grid.n_phi(), j = int(trial) % grid.n_theta(),
            k = int(trial * 3) % grid.n_psi();
        EulerAngles x{grid.phi(i), grid.theta(j), grid.psi(k)};
        CHECK(std::abs(synthesize_at(field, t, x) - f[grid.index(i, j, k)]) < 1e-9);
    }
}

TEST_CASE("fit_decay on exact models") {
    SECTION("entries e^{-2 ell}: exponential, rate within 1%") {
        std::vector<DecaySample> s;
        for (int te = 2; te <= 40; te += 2) s.push_back({0.5 * te, std::exp(-2.0 * 0.5 * te)});
        auto rep = fit_decay_samples(s);
        CHECK(rep.model == DecayReport::Model::Exponential);
        CHECK(rep.rate == Approx(2.0).epsilon(0.01));
        // fitted bound holds on all samples
        for (auto& smp : s)
            CHECK(smp.amplitude <= rep.prefactor * std::exp(-rep.rate * smp.ell) * (1 + 1e-9));
    }
    SECTION("entries (1+ell)^3: growth, order within 2%") {
        std::vector<DecaySample> s;
        for (int te = 2; te <= 40; te += 2) s.push_back({0.5 * te, std::pow(1 + 0.5 * te, 3.0)});
        auto rep = fit_decay_samples(s);
        CHECK(rep.model == DecayReport::Model::Growth);
        CHECK(rep.order == Approx(3.0).epsilon(0.02));
    }
    SECTION("entries 1/sqrt(2 ell): polynomial of order -0.5 +- 0.05") {
        std::vector<DecaySample> s;
        for (int te = 16; te <= 256; te += 8)
            s.push_back({0.5 * te, 1.0 / std::sqrt(double(te))});
        auto rep = fit_decay_samples(s);
        CHECK(rep.model == DecayReport::Model::Polynomial);
        CHECK(rep.order == Approx(-0.5).margin(0.05));
    }
    SECTION("insufficient data") {
        std::vector<DecaySample> s{{1, 1}, {2, 0.5}, {3, 0.25}};
        CHECK_THROWS_AS(fit_decay_samples(s), InsufficientData);
    }
    SECTION("flat sequences report non-decay") {
        std::vector<DecaySample> s;
        for (int te = 1; te <= 12; ++te) s.push_back({0.5 * te, 1.0});
        auto rep = fit_decay_samples(s);
        CHECK(rep.model == DecayReport::Model::Growth);
        CHECK(std::abs(rep.order) < 0.05);
    }
}
