// Batch front end: classification, mode solves, singular-solution and
// resonant-witness construction, Diophantine scans, and the conjugation
// checks, driven by a single JSON config.  Reports go to stdout as JSON,
// logs to stderr; field data lands in --out as .mf / .csv files.
//
// Exit codes: classify 0 = GAH, 10 = NotGAH, 20 = Inconclusive;
// solve 11 = resonant modes; singular 12 = b does not change sign;
// conjugation-check 13 = hypothesis fails; 1 = any other error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "gah/conjugation.hpp"
#include "gah/field_solver.hpp"
#include "gah/serialize.hpp"
#include "gah/su2_transform.hpp"

namespace fs = std::filesystem;
using namespace gah;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    int two_ell_max = -1;  // override
    int grid_n = -1;       // override
    long seed = 0;
    bool json_only = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "JSON config file")->required();
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--two-ell-max", a.two_ell_max, "truncation override (doubled ell)");
    cmd->add_option("--grid", a.grid_n, "t-grid size override");
    cmd->add_option("--seed", a.seed, "seed for randomized inputs");
    cmd->add_flag("--json-only", a.json_only, "suppress log lines on stderr");
}

json load_config(const CommonArgs& a) {
    std::ifstream in(a.config_path);
    if (!in) throw std::runtime_error("cannot open config: " + a.config_path);
    return json::parse(in);
}

void log_line(const CommonArgs& a, const std::string& s) {
    if (!a.json_only) std::cerr << s << "\n";
}

struct Cutoffs {
    int twoEllMax = 64;
    std::size_t n = 512;
    std::vector<double> Bs{0.1, 0.5, 1.0, 2.0};
};

Cutoffs cutoffs_from(const json& cfg, const CommonArgs& a) {
    Cutoffs c;
    if (cfg.contains("cutoffs")) {
        const auto& j = cfg.at("cutoffs");
        c.twoEllMax = j.value("twoEllMax", c.twoEllMax);
        c.n = j.value("N", c.n);
        if (j.contains("Bs")) c.Bs = j.at("Bs").get<std::vector<double>>();
    }
    if (a.two_ell_max > 0) c.twoEllMax = a.two_ell_max;
    if (a.grid_n > 0) c.n = std::size_t(a.grid_n);
    return c;
}

fs::path out_file(const CommonArgs& a, const std::string& name) {
    fs::create_directories(a.out_dir);
    return fs::path(a.out_dir) / name;
}

// ---------------------------------------------------------------------------

int cmd_classify(const CommonArgs& a) {
    json cfg = load_config(a);
    OperatorSpec spec = operator_spec_from_json(cfg.at("operator"));
    Cutoffs cut = cutoffs_from(cfg, a);
    GahOptions opt;
    opt.twoEllMax = cut.twoEllMax;
    opt.Bs = cut.Bs;
    Verdict v = gah_variable(spec, opt);
    std::cout << to_json(v).dump(2) << "\n";
    switch (v.answer) {
        case Answer::GAH: return 0;
        case Answer::NotGAH: return 10;
        default: return 20;
    }
}

PeriodicGridFn profile_from(const json& j, std::size_t n) {
    const std::string kind = j.value("kind", "trig");
    if (kind == "trig") {
        TrigPoly re = trig_poly_from_json(j.at("poly"));
        TrigPoly im = j.contains("poly_im") ? trig_poly_from_json(j.at("poly_im")) : TrigPoly();
        return PeriodicGridFn::sample(n, [&](double t) { return cplx(re(t), im(t)); });
    }
    if (kind == "fourier_mode") {
        int k = j.at("k").get<int>();
        cplx amp(j.value("amp_re", 1.0), j.value("amp_im", 0.0));
        return PeriodicGridFn::sample(n, [&](double t) { return amp * std::polar(1.0, k * t); });
    }
    if (kind == "exp_ell_psi") {
        // exp(-ell (M + K (1 - cos t))) family of analytic peaks
        double ell = j.at("ell").get<double>();
        double M = j.value("M", 0.0), K = j.value("K", 1.0);
        return PeriodicGridFn::sample(n, [&](double t) {
            return std::exp(-ell * (M + K * (1.0 - std::cos(t))));
        });
    }
    throw std::runtime_error("unknown profile kind: " + kind);
}

ModalField field_from(const json& j, std::size_t n, int twoEllMax, long seed) {
    const std::string kind = j.value("kind", "modes");
    if (kind == "modes") {
        ModalField f(n, twoEllMax);
        for (const auto& m : j.at("modes"))
            f.set(ModeIndex(m.at("twoEll").get<int>(), m.at("twoM").get<int>(),
                            m.at("twoN").get<int>()),
                  profile_from(m.at("profile"), n));
        return f;
    }
    if (kind == "random_band_limited") {
        int L = j.value("twoEllMax", twoEllMax);
        int deg = j.value("degree", 4);
        std::mt19937 rng{std::uint32_t(seed)};
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        ModalField f(n, L);
        for (int te = 0; te <= L; ++te)
            for (int tm = -te; tm <= te; tm += 2)
                for (int tn = -te; tn <= te; tn += 2) {
                    std::vector<cplx> coef(n, cplx(0));
                    for (int k = -deg; k <= deg; ++k) {
                        std::size_t idx = std::size_t(((k % int(n)) + int(n)) % int(n));
                        coef[idx] = cplx(u(rng), u(rng)) * std::exp(-0.7 * te);
                    }
                    f.set(ModeIndex(te, tm, tn), PeriodicGridFn::from_coefficients(coef));
                }
        return f;
    }
    throw std::runtime_error("unknown field kind: " + kind);
}

int cmd_solve(const CommonArgs& a) {
    json cfg = load_config(a);
    OperatorSpec spec = operator_spec_from_json(cfg.at("operator"));
    Cutoffs cut = cutoffs_from(cfg, a);
    ModalField f = field_from(cfg.at("f"), cut.n, cut.twoEllMax, a.seed);
    try {
        ModalField u = solve_field(spec, f);
        double res = field_residual(spec, f, u);
        {
            std::ofstream os(out_file(a, "u_field.mf"));
            write_modal_field(os, u);
        }
        json rep{{"residual", res}, {"modes", u.entries().size()}};
        try {
            rep["decay_u"] = to_json(fit_decay(u));
            rep["decay_f"] = to_json(fit_decay(f));
        } catch (const InsufficientData&) {
            rep["decay_u"] = nullptr;
        }
        std::cout << rep.dump(2) << "\n";
        log_line(a, "wrote " + (fs::path(a.out_dir) / "u_field.mf").string());
        return 0;
    } catch (const ResonantModesError& e) {
        json rep{{"error", "resonant modes"}, {"twoMs", e.twoMs}};
        std::cout << rep.dump(2) << "\n";
        return 11;
    }
}

int cmd_singular(const CommonArgs& a) {
    json cfg = load_config(a);
    OperatorSpec spec = operator_spec_from_json(cfg.at("operator"));
    Cutoffs cut = cutoffs_from(cfg, a);
    try {
        SingularOptions sopt;
        if (a.grid_n > 0) sopt.grid_t = std::size_t(a.grid_n);
        SingularData data = build_sign_change_witness(spec, cut.twoEllMax, sopt);
        {
            std::ofstream os(out_file(a, "singular.csv"));
            write_singular_csv(os, data);
        }
        {
            std::ofstream os(out_file(a, "u_field.mf"));
            write_modal_field(os, data.u_field);
        }
        json rep = singular_summary(data);
        bool confirmed = data.decay_u.model == DecayReport::Model::Polynomial &&
                         std::abs(data.decay_u.order + 0.5) <= 0.05;
        rep["exponent_confirmed"] = confirmed;
        std::cout << rep.dump(2) << "\n";
        log_line(a, "wrote singular.csv + u_field.mf");
        return confirmed ? 0 : 1;
    } catch (const NotSignChanging&) {
        std::cout << json{{"error", "b does not change sign"}}.dump(2) << "\n";
        return 12;
    }
}

int cmd_resonant_witness(const CommonArgs& a) {
    json cfg = load_config(a);
    OperatorSpec spec = operator_spec_from_json(cfg.at("operator"));
    Cutoffs cut = cutoffs_from(cfg, a);
    auto rs = resonance_set(spec.c0_param(), spec.q);
    if (rs.status != ResonanceSet::Status::Infinite || !rs.witness) {
        std::cout << json{{"error", "operator is not resonant"}}.dump(2) << "\n";
        return 1;
    }
    std::size_t n = std::min<std::size_t>(cut.n, 1024);
    ModalField field = build_resonant_witness(spec, *rs.witness, cut.twoEllMax, n);
    {
        std::ofstream os(out_file(a, "witness_field.mf"));
        write_modal_field(os, field);
    }
    double peak = resonant_witness_peak(spec, *rs.witness);
    double worst = 0;  // residual of P u = 0 across modes
    for (const auto& [idx, fn] : field.entries()) {
        PeriodicGridFn du = fn.derivative();
        for (std::size_t j = 0; j < fn.size(); ++j) {
            double t = fn.node(j);
            cplx mult = cplx(0, 0.5 * idx.twoM) * spec.c(t) + spec.q.value();
            worst = std::max(worst, std::abs(du[j] + mult * fn[j]));
        }
    }
    json rep{{"witness", {{"k", rs.witness->k}, {"twoM", rs.witness->twoM}}},
             {"peak_t", peak},
             {"sup", field.max_abs()},
             {"homogeneous_residual", worst},
             {"decay", to_json(fit_decay(field))}};
    std::cout << rep.dump(2) << "\n";
    log_line(a, "wrote witness_field.mf");
    return 0;
}

int cmd_adc_scan(const CommonArgs& a) {
    json cfg = load_config(a);
    Cutoffs cut = cutoffs_from(cfg, a);
    ComplexParam c = cfg.contains("c")
                         ? complex_param_from_json(cfg.at("c"))
                         : operator_spec_from_json(cfg.at("operator")).c0_param();
    ComplexParam q = cfg.contains("q") ? complex_param_from_json(cfg.at("q"))
                                       : operator_spec_from_json(cfg.at("operator")).q;
    const std::string formulation = cfg.value("formulation", "all");
    if (formulation == "all") {
        auto rep = adc_equivalence_check(c, q, cut.twoEllMax, cut.Bs);
        json out{{"verdicts_match", rep.verdicts_match},
                 {"witnesses_match", rep.witnesses_match},
                 {"notes", rep.notes},
                 {"reports", json::array()}};
        for (const auto& r : rep.reports) out["reports"].push_back(to_json(r));
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    AdcFormulation f;
    if (formulation == "ADC") f = AdcFormulation::ADC;
    else if (formulation == "ADC2") f = AdcFormulation::ADC2;
    else if (formulation == "ADC3") f = AdcFormulation::ADC3;
    else if (formulation == "ADC4") f = AdcFormulation::ADC4;
    else throw std::runtime_error("unknown formulation: " + formulation);
    std::cout << to_json(adc_scan(c, q, f, cut.twoEllMax, cut.Bs)).dump(2) << "\n";
    return 0;
}

EulerGridFn gauge_from(const json& j, const EulerGrid& g) {
    const std::string kind = j.value("kind", "psi_sin");
    if (kind == "psi_sin") {
        cplx coeff(j.value("coeff_re", 0.0), j.value("coeff_im", 1.0));
        return EulerGridFn::sample(g, [coeff](double, double, double th, double ps) {
            return coeff * std::polar(1.0, ps) * std::sin(th);
        });
    }
    if (kind == "file") {
        std::ifstream is(j.at("path").get<std::string>());
        return read_euler_grid(is);
    }
    throw std::runtime_error("unknown gauge kind: " + kind);
}

int cmd_conjugation_check(const CommonArgs& a) {
    json cfg = load_config(a);
    OperatorSpec spec = operator_spec_from_json(cfg.at("operator"));
    const json& cj = cfg.at("conjugation");
    EulerGrid g{64, 16, 16, 64};
    if (cfg.contains("grid")) {
        const auto& gj = cfg.at("grid");
        g = EulerGrid{gj.value("n_t", g.n_t), gj.value("n_phi", g.n_phi),
                      gj.value("n_theta", g.n_theta), gj.value("n_psi", g.n_psi)};
    }
    EulerGridFn Q = gauge_from(cj.at("Q"), g);
    cplx q0(cj.at("q0").value("re", 0.0), cj.at("q0").value("im", 0.0));

    const std::string qkind =
        cj.contains("q_field") ? cj.at("q_field").value("kind", "q0_minus_cQ") : "q0_minus_cQ";
    EulerGridFn qf(g);
    if (qkind == "q0_minus_cQ") {
        // the worked family: q(t, x) = q0 - c(t) Q(x)
        std::size_t inner = g.n_phi * g.n_theta * g.n_psi;
        for (std::size_t it = 0; it < g.n_t; ++it) {
            cplx c = spec.c(g.t(it));
            for (std::size_t s = 0; s < inner; ++s)
                qf[it * inner + s] = q0 - c * Q[it * inner + s];
        }
    } else if (qkind == "from_gauge") {
        // q = q0 + (d/dt + c D) Q: the hypothesis holds by construction
        OperatorSpec principal = spec;
        principal.q = ComplexParam(0.0, 0.0);
        EulerGridFn dQ = apply_P_euler(principal, cplx(0, 0), Q);
        for (std::size_t i = 0; i < g.size(); ++i) qf[i] = q0 + dQ[i];
    } else if (qkind == "file") {
        std::ifstream is(cj.at("q_field").at("path").get<std::string>());
        qf = read_euler_grid(is);
    } else {
        throw std::runtime_error("unknown q_field kind: " + qkind);
    }

    // deterministic probe data
    auto u = EulerGridFn::sample(g, [](double t, double ph, double th, double ps) {
        return std::polar(1.0, t - ps) * std::cos(th) +
               cplx(0.3, 0.4) * std::polar(1.0, 0.5 * ps + ph) * std::sin(th) * std::sin(t);
    });
    const double tol = cj.value("tolerance", 1e-6);
    try {
        auto rep = verify_zero_order_conjugation(spec, Q, qf, q0, u);
        json out{{"hypothesis_residual", rep.hypothesis_residual},
                 {"conjugation_residual", rep.conjugation_residual},
                 {"tolerance", tol}};
        std::cout << out.dump(2) << "\n";
        return rep.conjugation_residual < tol ? 0 : 1;
    } catch (const HypothesisFails& e) {
        std::cout << json{{"error", "hypothesis fails"},
                          {"hypothesis_residual", e.residual}}.dump(2)
                  << "\n";
        return 13;
    }
}

int cmd_synthesize(const CommonArgs& a) {
    json cfg = load_config(a);
    std::ifstream is(cfg.at("field_file").get<std::string>());
    if (!is) throw std::runtime_error("cannot open field file");
    ModalField f = read_modal_field(is);
    std::ofstream os(out_file(a, "values.csv"));
    os << "t,phi,theta,psi,re,im\n";
    os.precision(17);
    for (const auto& p : cfg.at("points")) {
        double t = p.at(0).get<double>();
        EulerAngles x{p.at(1).get<double>(), p.at(2).get<double>(), p.at(3).get<double>()};
        cplx v = synthesize_at(f, t, x);
        os << t << "," << x.phi << "," << x.theta << "," << x.psi << "," << v.real() << ","
           << v.imag() << "\n";
    }
    log_line(a, "wrote values.csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"global analytic hypoellipticity diagnostics on T^1 x S^3"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* classify = app.add_subcommand("classify", "decide GAH for an operator");
    add_common(classify, args);
    auto* solve = app.add_subcommand("solve", "solve P u = f mode by mode");
    add_common(solve, args);
    auto* singular = app.add_subcommand("singular", "build the sign-change witness");
    add_common(singular, args);
    auto* resonant = app.add_subcommand("resonant-witness", "build the resonant witness");
    add_common(resonant, args);
    auto* adcscan = app.add_subcommand("adc-scan", "Diophantine condition scans");
    add_common(adcscan, args);
    auto* conj = app.add_subcommand("conjugation-check", "zero-order conjugation identity");
    add_common(conj, args);
    auto* synth = app.add_subcommand("synthesize", "evaluate a modal field at points");
    add_common(synth, args);

    CLI11_PARSE(app, argc, argv);
    try {
        if (classify->parsed()) return cmd_classify(args);
        if (solve->parsed()) return cmd_solve(args);
        if (singular->parsed()) return cmd_singular(args);
        if (resonant->parsed()) return cmd_resonant_witness(args);
        if (adcscan->parsed()) return cmd_adc_scan(args);
        if (conj->parsed()) return cmd_conjugation_check(args);
        if (synth->parsed()) return cmd_synthesize(args);
    } catch (const NeedsExactness& e) {
        std::cerr << "error (needs exactness): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
