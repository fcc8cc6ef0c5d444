#pragma once

// JSON and CSV serialization with stable schemas:
//   TrigPoly        {"mean": x, "cos": [...], "sin": [...]}
//   NumberSpec      {"kind": "rational" | "quadratic" | "cf_stream" | "float", ...}
//                   (big integers appear as decimal strings)
//   Verdict         {"answer": ..., "certificate": {...}, "cutoffs": {...}}
//   ModalField      one JSON header line {"N":..,"twoEllMax":..} followed by
//                   CSV lines "twoEll,twoM,twoN,re0,im0,..."
//   EulerGridFn     one JSON header line (sizes, index order), then "re,im"
//                   lines in (t, phi, theta, psi) order.

#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gah/decay_fit.hpp"
#include "gah/diophantine.hpp"
#include "gah/euler_grid.hpp"
#include "gah/gah_engine.hpp"
#include "gah/modal_field.hpp"
#include "gah/operator_spec.hpp"
#include "gah/singular.hpp"

namespace gah {

using json = nlohmann::json;

// --- big integers -----------------------------------------------------------

inline json bigint_to_json(const BigInt& n) {
    if (n >= -((BigInt(1) << 53)) && n <= (BigInt(1) << 53))
        return json(n.convert_to<long long>());
    return json(n.str());
}

inline BigInt bigint_from_json(const json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    throw std::invalid_argument("expected integer or decimal string");
}

// --- NumberSpec --------------------------------------------------------------

inline json to_json(const NumberSpec& s) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RationalSpec>) {
                return {{"kind", "rational"},
                        {"p", bigint_to_json(v.num)},
                        {"q", bigint_to_json(v.den)}};
            } else if constexpr (std::is_same_v<T, QuadraticSurdSpec>) {
                json pre = json::array(), per = json::array();
                for (const auto& a : v.cf_preperiod) pre.push_back(bigint_to_json(a));
                for (const auto& a : v.cf_period) per.push_back(bigint_to_json(a));
                return {{"kind", "quadratic"}, {"cf_preperiod", pre}, {"cf_period", per}};
            } else if constexpr (std::is_same_v<T, CfStreamSpec>) {
                json q = json::array();
                for (const auto& a : v.quotients) q.push_back(bigint_to_json(a));
                return {{"kind", "cf_stream"}, {"quotients", q}};
            } else {
                return {{"kind", "float"}, {"value", v.value}};
            }
        },
        s);
}

inline NumberSpec number_spec_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") {
        RationalSpec r{bigint_from_json(j.at("p")), bigint_from_json(j.at("q"))};
        r.normalize();
        return r;
    }
    if (kind == "quadratic") {
        QuadraticSurdSpec s;
        for (const auto& a : j.at("cf_preperiod")) s.cf_preperiod.push_back(bigint_from_json(a));
        for (const auto& a : j.at("cf_period")) s.cf_period.push_back(bigint_from_json(a));
        if (s.cf_period.empty())
            throw std::invalid_argument("quadratic: empty period");
        return s;
    }
    if (kind == "cf_stream") {
        CfStreamSpec s;
        for (const auto& a : j.at("quotients")) s.quotients.push_back(bigint_from_json(a));
        return s;
    }
    if (kind == "float") return FloatSpec{j.at("value").get<double>()};
    throw std::invalid_argument("unknown NumberSpec kind: " + kind);
}

// --- TrigPoly ----------------------------------------------------------------

inline json to_json(const TrigPoly& p) {
    json c = json::array(), s = json::array();
    for (int k = 1; k <= p.degree(); ++k) {
        c.push_back(p.cos_coeff(k));
        s.push_back(p.sin_coeff(k));
    }
    return {{"mean", p.mean()}, {"cos", c}, {"sin", s}};
}

inline TrigPoly trig_poly_from_json(const json& j) {
    std::vector<double> c, s;
    if (j.contains("cos")) c = j.at("cos").get<std::vector<double>>();
    if (j.contains("sin")) s = j.at("sin").get<std::vector<double>>();
    return TrigPoly(j.value("mean", 0.0), c, s);
}

// --- ComplexParam / OperatorSpec ----------------------------------------------

inline json to_json(const ComplexParam& p) {
    json j{{"re", p.re}, {"im", p.im}};
    if (p.re_exact) j["re_exact"] = to_json(*p.re_exact);
    if (p.im_exact) j["im_exact"] = to_json(*p.im_exact);
    return j;
}

inline ComplexParam complex_param_from_json(const json& j) {
    ComplexParam p;
    if (j.contains("re_exact")) p.re_exact = number_spec_from_json(j.at("re_exact"));
    if (j.contains("im_exact")) p.im_exact = number_spec_from_json(j.at("im_exact"));
    p.re = j.contains("re") ? j.at("re").get<double>()
                            : (p.re_exact ? to_double(*p.re_exact) : 0.0);
    p.im = j.contains("im") ? j.at("im").get<double>()
                            : (p.im_exact ? to_double(*p.im_exact) : 0.0);
    if (!j.contains("re") && p.re_exact) p.re = to_double(*p.re_exact);
    if (!j.contains("im") && p.im_exact) p.im = to_double(*p.im_exact);
    p.validate();
    return p;
}

inline json to_json(const OperatorSpec& s) {
    json j{{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"q", to_json(s.q)}};
    if (s.a0_exact) j["a0_exact"] = to_json(*s.a0_exact);
    if (s.b0_exact) j["b0_exact"] = to_json(*s.b0_exact);
    return j;
}

inline OperatorSpec operator_spec_from_json(const json& j) {
    OperatorSpec s;
    s.a = trig_poly_from_json(j.at("a"));
    s.b = trig_poly_from_json(j.at("b"));
    s.q = complex_param_from_json(j.at("q"));
    if (j.contains("a0_exact")) s.a0_exact = number_spec_from_json(j.at("a0_exact"));
    if (j.contains("b0_exact")) s.b0_exact = number_spec_from_json(j.at("b0_exact"));
    return s;
}

// --- reports -------------------------------------------------------------------

inline const char* model_name(DecayReport::Model m) {
    switch (m) {
        case DecayReport::Model::Exponential: return "exponential";
        case DecayReport::Model::Polynomial: return "polynomial";
        case DecayReport::Model::Growth: return "growth";
        default: return "indeterminate";
    }
}

inline json to_json(const DecayReport& r) {
    json j{{"model", model_name(r.model)},
           {"residual", r.residual},
           {"residual_exp", r.residual_exp},
           {"residual_pow", r.residual_pow},
           {"samples", r.samples}};
    if (r.model == DecayReport::Model::Exponential) {
        j["rate"] = r.rate;
        j["prefactor"] = r.prefactor;
    } else if (r.model != DecayReport::Model::Indeterminate) {
        j["order"] = r.order;
        j["prefactor"] = r.prefactor;
    }
    return j;
}

inline const char* formulation_name(AdcFormulation f) {
    switch (f) {
        case AdcFormulation::ADC: return "ADC";
        case AdcFormulation::ADC2: return "ADC2";
        case AdcFormulation::ADC3: return "ADC3";
        default: return "ADC4";
    }
}

inline json to_json(const AdcScanReport& r) {
    json minima = json::array();
    for (std::size_t i = 0; i < r.Bs.size(); ++i)
        minima.push_back({{"B", r.Bs[i]},
                          {"K", r.minima[i]},
                          {"K_reference", r.reference_minima[i]},
                          {"witness",
                           {{"k", r.minimizers[i].k},
                            {"twoM", r.minimizers[i].twoM},
                            {"value", r.minimizers[i].value}}}});
    json j{{"formulation", formulation_name(r.formulation)},
           {"twoEllMax", r.twoEllMax},
           {"kMax", r.kMax},
           {"minima", minima}};
    switch (r.verdict) {
        case AdcScanReport::Verdict::NoViolationUpToCutoff: j["verdict"] = "NoViolationUpToCutoff"; break;
        case AdcScanReport::Verdict::ViolationWitness: j["verdict"] = "ViolationWitness"; break;
        default: j["verdict"] = "ExactResonanceFound";
    }
    if (r.resonance)
        j["resonance"] = {{"k", r.resonance->k}, {"twoM", r.resonance->twoM}};
    return j;
}

inline const char* answer_name(Answer a) {
    switch (a) {
        case Answer::GAH: return "GAH";
        case Answer::NotGAH: return "NotGAH";
        default: return "Inconclusive";
    }
}

inline const char* cert_kind_name(Verdict::CertKind k) {
    switch (k) {
        case Verdict::CertKind::SignChange: return "SignChange";
        case Verdict::CertKind::ResonantModes: return "ResonantModes";
        case Verdict::CertKind::C1Holds: return "C1Holds";
        case Verdict::CertKind::C2Holds: return "C2Holds";
        case Verdict::CertKind::ADCCertified: return "ADCCertified";
        case Verdict::CertKind::ADCViolation: return "ADCViolation";
        case Verdict::CertKind::LiouvilleCertificate: return "LiouvilleCertificate";
        default: return "ScanOnly";
    }
}

inline json to_json(const Verdict& v) {
    json cert{{"kind", cert_kind_name(v.kind)}, {"detail", v.detail}};
    if (v.sign) {
        if (v.sign->negative_point) cert["t_minus"] = v.sign->negative_point->t;
        if (v.sign->positive_point) cert["t_plus"] = v.sign->positive_point->t;
        if (v.sign->crossing) cert["crossing"] = *v.sign->crossing;
    }
    if (v.resonance)
        cert["resonance"] = {{"k", v.resonance->k}, {"twoM", v.resonance->twoM}};
    if (v.number_class) {
        json w = json::array();
        for (const auto& x : v.number_class->witnesses)
            w.push_back({{"p", bigint_to_json(x.p)},
                         {"q", bigint_to_json(x.q)},
                         {"ratio", x.ratio}});
        const char* cls = "unknown_up_to_depth";
        switch (v.number_class->cls) {
            case NumberClass::Rational: cls = "rational"; break;
            case NumberClass::AlgebraicNonLiouville: cls = "algebraic_non_liouville"; break;
            case NumberClass::ExponentialLiouville: cls = "exponential_liouville"; break;
            default: break;
        }
        cert["number_class"] = {{"class", cls},
                                {"epsilon", v.number_class->epsilon},
                                {"depth", v.number_class->depth_used},
                                {"witnesses", w}};
    }
    if (v.scan) cert["scan"] = to_json(*v.scan);
    json j{{"answer", answer_name(v.answer)},
           {"certificate", cert},
           {"cutoffs", v.cutoffs},
           {"precision", v.exact ? "exact" : "working_precision"}};
    return j;
}

// --- ModalField file format -----------------------------------------------------

inline void write_modal_field(std::ostream& os, const ModalField& f) {
    os << json{{"N", f.grid_size()}, {"twoEllMax", f.twoEllMax()}}.dump() << "\n";
    os.precision(17);
    for (const auto& [idx, fn] : f.entries()) {
        os << idx.twoEll << "," << idx.twoM << "," << idx.twoN;
        for (std::size_t j = 0; j < fn.size(); ++j)
            os << "," << fn[j].real() << "," << fn[j].imag();
        os << "\n";
    }
}

inline ModalField read_modal_field(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("modal field: empty stream");
    json h = json::parse(header);
    ModalField f(h.at("N").get<std::size_t>(), h.at("twoEllMax").get<int>());
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        auto next = [&]() -> double {
            if (!std::getline(ss, tok, ',')) throw std::invalid_argument("modal field: short row");
            return std::stod(tok);
        };
        int te = int(next()), tm = int(next()), tn = int(next());
        PeriodicGridFn fn(f.grid_size());
        for (std::size_t j = 0; j < f.grid_size(); ++j) {
            double re = next(), im = next();
            fn[j] = cplx(re, im);
        }
        f.set(ModeIndex(te, tm, tn), std::move(fn));
    }
    return f;
}

// --- EulerGridFn file format ------------------------------------------------------

inline void write_euler_grid(std::ostream& os, const EulerGridFn& f) {
    const EulerGrid& g = f.grid();
    os << json{{"n_t", g.n_t},
               {"n_phi", g.n_phi},
               {"n_theta", g.n_theta},
               {"n_psi", g.n_psi},
               {"order", "t,phi,theta,psi"}}.dump()
       << "\n";
    os.precision(17);
    for (const auto& v : f.samples()) os << v.real() << "," << v.imag() << "\n";
}

inline EulerGridFn read_euler_grid(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("euler grid: empty stream");
    json h = json::parse(header);
    EulerGrid g{h.at("n_t").get<std::size_t>(), h.at("n_phi").get<std::size_t>(),
                h.at("n_theta").get<std::size_t>(), h.at("n_psi").get<std::size_t>()};
    EulerGridFn f(g);
    std::string line;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::getline(is, line)) throw std::invalid_argument("euler grid: short file");
        auto comma = line.find(',');
        f[i] = cplx(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return f;
}

// --- singular data -----------------------------------------------------------------

/// CSV "twoEll,f_abs_at_tmin,u_abs_at_tstar" for plotting the two decays.
inline void write_singular_csv(std::ostream& os, const SingularData& d) {
    os << "twoEll,f_abs_at_tmin,u_abs_at_tstar\n";
    os.precision(17);
    std::size_t n = d.f_field.grid_size();
    std::size_t star = std::size_t(std::llround(d.cert.t_star / two_pi * double(n))) % n;
    for (const auto& [idx, fn] : d.f_field.entries()) {
        const auto& un = d.u_field.at(idx);
        os << idx.twoEll << "," << std::abs(fn[0]) << "," << std::abs(un[star]) << "\n";
    }
}

inline json singular_summary(const SingularData& d) {
    return {{"K", d.cert.K},
            {"M", d.cert.M},
            {"t_star", d.cert.t_star},
            {"phi_grid_max", d.cert.phi_grid_max},
            {"re_phi_min_off_peak", d.cert.re_phi_min_off},
            {"corner_phi_2pi_0", d.cert.corner_2pi_0},
            {"corner_phi_0_2pi", d.cert.corner_0_2pi},
            {"u_sup", d.u_sup},
            {"max_mode_residual", d.max_mode_residual},
            {"splitting_constant", d.splitting_constant},
            {"quad_points", d.quad_points},
            {"decay_f", to_json(d.decay_f)},
            {"decay_u", to_json(d.decay_u)},
            {"transform", {{"shift", d.transform.shift}, {"reflected", d.transform.reflected}}}};
}

}  // namespace gah
