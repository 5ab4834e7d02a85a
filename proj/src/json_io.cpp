#include "qh/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace qh {

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", path + ": " + e.what());
    }
}

json num(double x)
{
    if (!std::isfinite(x)) return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double y = std::strtod(buf, nullptr);
    if (y == 0) y = 0; // no -0
    return y;
}

json to_json(cplx z) { return json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

json to_json(const RootU& z) { return json{{"num", z.num}, {"den", z.den}}; }

namespace {

template <class C>
json cyclo_json(const C& c0)
{
    C c = c0;
    c.reduce();
    json coeffs = json::array();
    for (auto& x : c.coeffs()) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, mpq_class>)
            coeffs.push_back(x.get_str());
        else
            coeffs.push_back(x);
    }
    return json{{"cyclotomic_order", c.order()}, {"coefficients", coeffs}, {"exact", c.str()},
                {"decimal", to_json(c.value())}};
}

} // namespace

json to_json(const Cyclo& c) { return cyclo_json(c); }
json to_json(const CycloZ& c) { return cyclo_json(c); }

json to_json(const IdealHNF& I) { return json::array({I.a, I.b, I.c}); }

json to_json(const PrimeIdeal& P)
{
    const char* kind = P.kind == SplitKind::Split ? "split" : P.kind == SplitKind::Inert ? "inert" : "ramified";
    return json{{"p", P.p}, {"index", P.index}, {"kind", kind}, {"ideal", to_json(P.ideal)}, {"norm", P.norm()}};
}

json to_json(const mpq_class& q) { return q.get_str(); }

json to_json(const Laurent2& L)
{
    json terms = json::array();
    for (auto& [k, c] : L.terms()) {
        if (c.is_zero()) continue;
        terms.push_back(json{{"X1", k.first}, {"X2", k.second}, {"coefficient", to_json(c)}});
    }
    return json{{"exact", L.str()}, {"terms", terms}};
}

json to_json(const Hypothesis& h) { return json{{"name", h.name}, {"status", h.status}, {"source", h.source}}; }

json to_json(const std::vector<Hypothesis>& hs)
{
    json a = json::array();
    for (auto& h : hs) a.push_back(to_json(h));
    return a;
}

// ---------------------------------------------------------------- parsing

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

const json& need(const json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object()) throw ConfigError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(at(where, key), "missing key");
    return *it;
}

i64 get_int(const json& j, const std::string& key, const std::string& where)
{
    const json& v = need(j, key, where);
    if (!v.is_number_integer()) throw ConfigError(at(where, key), "expected an integer");
    return v.get<i64>();
}

i64 get_int_or(const json& j, const std::string& key, i64 dflt, const std::string& where)
{
    if (!j.contains(key)) return dflt;
    return get_int(j, key, where);
}

bool get_bool_or(const json& j, const std::string& key, bool dflt, const std::string& where)
{
    if (!j.contains(key)) return dflt;
    if (!j[key].is_boolean()) throw ConfigError(at(where, key), "expected a boolean");
    return j[key].get<bool>();
}

std::vector<i64> get_int_list(const json& j, const std::string& key, const std::string& where)
{
    const json& v = need(j, key, where);
    if (!v.is_array()) throw ConfigError(at(where, key), "expected an array of integers");
    std::vector<i64> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer()) throw ConfigError(at(where, key) + "/" + std::to_string(i), "expected an integer");
        out.push_back(v[i].get<i64>());
    }
    return out;
}

FieldPtr field_of(const json& j, FieldPtr F, const std::string& where)
{
    if (j.contains("D")) {
        i64 D = get_int(j, "D", where);
        if (F && F->D() != D) throw ConfigError(at(where, "D"), "field differs from the enclosing one");
        try {
            return make_field(D);
        } catch (const Error& e) {
            throw ConfigError(at(where, "D"), e.what());
        }
    }
    if (!F) throw ConfigError(at(where, "D"), "missing key");
    return F;
}

HeckeChar raw_char(const json& j, FieldPtr F, const std::string& where)
{
    int a = static_cast<int>(get_int(j, "a", where));
    int b = static_cast<int>(get_int(j, "b", where));
    auto m = get_int_list(j, "modulus", where);
    if (m.size() != 3) throw ConfigError(at(where, "modulus"), "expected [a, b, c]");
    IdealHNF mod{m[0], m[1], m[2]};
    if (mod.a <= 0 || mod.c <= 0 || mod.a % mod.c != 0 || mod.b < 0 || mod.b >= mod.a)
        throw ConfigError(at(where, "modulus"), "not an ideal in Hermite normal form");
    std::vector<RootU> eps;
    if (j.contains("eps")) {
        std::string w = at(where, "eps");
        const json& e = j["eps"];
        auto imgs = get_int_list(e, "generator_images", w);
        ResidueRing R(F, mod);
        i64 N = 1;
        for (i64 o : R.orders()) N = lcm(N, o);
        N = get_int_or(e, "order", N, w);
        if (N <= 0) throw ConfigError(at(w, "order"), "order must be positive");
        if (imgs.size() != R.orders().size())
            throw ConfigError(at(w, "generator_images"),
                              "expected " + std::to_string(R.orders().size()) + " generator images");
        for (i64 k : imgs) eps.emplace_back(k, N);
    }
    std::vector<i64> cls;
    if (j.contains("class_values")) cls = get_int_list(j, "class_values", where);
    try {
        return HeckeChar::build(F, a, b, mod, eps, cls);
    } catch (const Error& e) {
        throw ConfigError(where.empty() ? "/" : where, e.what());
    }
}

} // namespace

HeckeChar char_from_json(const json& j, FieldPtr F0, const std::string& where)
{
    if (!j.is_object()) throw ConfigError(where, "expected an object");
    FieldPtr F = field_of(j, F0, where);
    HeckeChar lam;
    if (!j.contains("construct")) {
        lam = raw_char(j, F, where);
    } else {
        if (!j["construct"].is_string()) throw ConfigError(at(where, "construct"), "expected a string");
        std::string c = j["construct"].get<std::string>();
        try {
            if (c == "greenchar") {
                lam = construct_greenchar(F, static_cast<int>(get_int_or(j, "k", 1, where)));
            } else if (c == "minram") {
                auto pr = get_int_list(j, "prime", where);
                if (pr.size() != 2) throw ConfigError(at(where, "prime"), "expected [p, index]");
                lam = construct_minram(F, F->prime(pr[0], static_cast<int>(pr[1])));
            } else if (c == "anticyclotomic") {
                auto th = construct_anticyclotomic(F, get_int(j, "Q", where), static_cast<int>(get_int_or(j, "n", 1, where)),
                                                   get_int_or(j, "order", 0, where));
                if (!th) throw ConfigError(at(where, "Q"), "no anticyclotomic character of this conductor and order");
                lam = *th;
            } else if (c == "trivial") {
                lam = HeckeChar::trivial(F);
            } else if (c == "norm_power") {
                lam = HeckeChar::norm_power(F, static_cast<int>(get_int(j, "k", where)));
            } else if (c == "product") {
                const json& fs = need(j, "factors", where);
                if (!fs.is_array() || fs.empty()) throw ConfigError(at(where, "factors"), "expected a non-empty array");
                lam = char_from_json(fs[0], F, at(where, "factors") + "/0");
                for (size_t i = 1; i < fs.size(); ++i)
                    lam = lam * char_from_json(fs[i], F, at(where, "factors") + "/" + std::to_string(i));
            } else {
                throw ConfigError(at(where, "construct"), "unknown construction '" + c + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(where.empty() ? "/" : where, e.what());
        }
    }
    if (get_bool_or(j, "inverse", false, where)) lam = lam.inverse();
    if (get_bool_or(j, "conj", false, where)) lam = lam.conj_c();
    if (get_bool_or(j, "star", false, where)) lam = lam.star();
    if (j.contains("twist_norm")) lam = lam.twist_norm(static_cast<int>(get_int(j, "twist_norm", where)));
    return lam;
}

EisensteinSetup setup_from_json(const json& j)
{
    if (!j.is_object()) throw ConfigError("", "expected an object");
    FieldPtr F = field_of(j, nullptr, "");
    WeightParams w;
    if (j.contains("weights")) {
        const json& wj = j["weights"];
        if (!wj.is_object()) throw ConfigError("/weights", "expected an object");
        for (auto& [key, val] : wj.items())
            if (key != "m" && key != "n" && key != "k" && key != "l" && key != "mp" && key != "np")
                throw ConfigError("/weights/" + key, "unknown weight");
        w.m = static_cast<int>(get_int_or(wj, "m", 0, "/weights"));
        w.n = static_cast<int>(get_int_or(wj, "n", 0, "/weights"));
        w.k = static_cast<int>(get_int_or(wj, "k", 0, "/weights"));
        w.l = static_cast<int>(get_int_or(wj, "l", 0, "/weights"));
        w.mp = static_cast<int>(get_int_or(wj, "mp", 0, "/weights"));
        w.np = static_cast<int>(get_int_or(wj, "np", 0, "/weights"));
        try {
            w.validate();
        } catch (const Error& e) {
            throw ConfigError("/weights", e.what());
        }
    }
    HeckeChar phi1 = char_from_json(need(j, "phi1", ""), F, "/phi1");
    HeckeChar phi2 = char_from_json(need(j, "phi2", ""), F, "/phi2");
    std::optional<HeckeChar> theta;
    if (j.contains("theta")) theta = char_from_json(j["theta"], F, "/theta");
    i64 p = get_int_or(j, "p", 0, "");
    try {
        return EisensteinSetup::make(w, phi1, phi2, theta, p);
    } catch (const Error& e) {
        throw ConfigError("/", e.what());
    }
}

// ---------------------------------------------------------------- reports

json field_report(const QuadField& K)
{
    json cg = json::array();
    for (auto& g : K.class_group()) cg.push_back(json{{"ideal", to_json(g.ideal)}, {"order", g.order}});
    json primes = json::array();
    for (auto& P : K.primes_upto(30)) primes.push_back(to_json(P));
    return json{{"D", K.D()},
                {"discriminant", -K.dF()},
                {"class_number", K.class_number()},
                {"class_group", cg},
                {"units", K.num_units()},
                {"different", to_json(K.different())},
                {"primes_upto_30", primes}};
}

json char_report(const HeckeChar& lam)
{
    const QuadField& K = lam.field();
    json eps = json::array();
    for (auto& r : lam.eps_gen_values()) eps.push_back(to_json(r));
    json cls = json::array();
    for (size_t i = 0; i < lam.class_gens().size(); ++i)
        cls.push_back(json{{"ideal", to_json(lam.class_gens()[i])}, {"value", to_json(lam.class_gen_values()[i])}});
    json vals = json::array();
    for (auto& P : K.primes_upto(30)) {
        if (!lam.coprime_to_conductor(P.ideal)) continue;
        vals.push_back(json{{"prime", to_json(P.ideal)}, {"eval", to_json(lam.eval(P.ideal))}});
    }
    json cons{{"unit_compatibility", true},
              {"star_symmetric", same_character(lam.star(), lam)},
              {"anticyclotomic", is_anticyclotomic(lam)}};
    try {
        auto rq = restrict_to_Q_class(lam);
        cons["restriction_to_Q"] = rq.kind == QRestriction::Trivial ? "norm power" : "omega_F/Q times norm power";
        cons["restriction_norm_power"] = rq.norm_power;
    } catch (const Error&) {
        cons["restriction_to_Q"] = nullptr; // only classified for star-symmetric or anticyclotomic characters
    }
    return json{{"D", K.D()},
                {"a", lam.a()},
                {"b", lam.b()},
                {"conductor", to_json(lam.conductor())},
                {"conductor_norm", lam.conductor().norm()},
                {"eps_generator_values", eps},
                {"class_values", cls},
                {"consistency", cons},
                {"values", vals}};
}

json to_json(const LValue& L)
{
    return json{{"value", to_json(L.value)}, {"error", num(L.error)}, {"method", L.method}, {"bound", L.bound}};
}

json to_json(const GaussSumResult& g)
{
    return json{{"place", to_json(g.place)},
                {"modulus_order", g.modulus_order},
                {"conductor_exponent", g.cond_exp},
                {"unramified_correction", g.correction},
                {"exact_sum", to_json(g.exact)},
                {"abs2", g.abs2},
                {"abs2_exact", g.abs2_exact},
                {"value", to_json(g.value)},
                {"unitary_value", to_json(g.unitary_value)}};
}

json to_json(const RootNumber& r)
{
    json taus = json::array();
    for (auto& t : r.taus) taus.push_back(to_json(t));
    return json{{"value", to_json(r.value)},
                {"m", r.m},
                {"i_factor", to_json(r.i_factor)},
                {"norm_factor", num(r.norm_factor)},
                {"tau_product", to_json(r.tau_product)},
                {"correction_product", to_json(r.correction_product)},
                {"gauss_sums", taus}};
}

json to_json(const RootProdResult& r)
{
    return json{{"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}, {"nu", r.nu}, {"sign_case", r.sign_case}, {"pass", r.pass}};
}

json to_json(const ConstantTerm& c)
{
    json locs = json::array();
    for (auto& l : c.locals)
        locs.push_back(json{{"prime", to_json(l.P)},
                            {"supported", l.supported},
                            {"sign", l.sign},
                            {"nm_M1", l.nm_m1},
                            {"value", l.supported ? to_json(l.value) : json("UNSUPPORTED")}});
    json out{{"z", num(c.z)},
             {"archimedean", to_json(c.archimedean)},
             {"l_ratio", to_json(c.l_ratio)},
             {"l_error", num(c.l_error)},
             {"locals", locs},
             {"local_product", to_json(c.local_product)},
             {"partial", c.partial},
             {"value", to_json(c.value)}};
    if (c.alg_ratio) out["alg_ratio"] = to_json(*c.alg_ratio);
    if (c.alg_assembly) out["alg_assembly"] = to_json(*c.alg_assembly);
    return out;
}

json to_json(const ConstantTermPrime& c)
{
    json fs = json::array();
    for (auto& f : c.factors) {
        json e{{"prime", to_json(f.P)},
               {"one_minus_q", f.one_minus_q},
               {"chi_over_nm", to_json(f.chi_over_nm)},
               {"l_v", to_json(f.l_v)}};
        e["ord_p_one_minus_q"] = f.ord_p_one_minus_q ? json(*f.ord_p_one_minus_q) : json(nullptr);
        e["ord_p_chi_over_nm"] = f.ord_p_chi_over_nm ? to_json(*f.ord_p_chi_over_nm) : json(nullptr);
        fs.push_back(e);
    }
    return json{{"c", to_json(c.c)}, {"S_factors", fs}, {"value", to_json(c.value)}};
}

json to_json(const ToroidalValue& t)
{
    json pls = json::array();
    for (auto& p : t.places) {
        json e{{"prime", to_json(p.P)}, {"case", p.case_no}, {"formula", p.formula}, {"local", to_json(p.local)}};
        if (p.truncation) e["truncation"] = to_json(*p.truncation);
        pls.push_back(e);
    }
    return json{{"z", num(t.z)},
                {"L1", to_json(t.L1)},
                {"L2", to_json(t.L2)},
                {"L3", to_json(t.L3)},
                {"l_error", num(t.l_error)},
                {"gamma_ratio", num(t.gamma_ratio)},
                {"units", t.units},
                {"explicit_factor", to_json(t.explicit_factor)},
                {"sign_printed", t.sign_printed},
                {"sign_local", t.sign_local},
                {"theta_inf_minus_one", t.theta_inf_minus_one},
                {"display_printed", to_json(t.display_printed)},
                {"display", to_json(t.display)},
                {"archimedean", num(t.archimedean)},
                {"places", pls},
                {"product", to_json(t.product)},
                {"rel_diff", num(t.rel_diff)},
                {"pass", t.pass}};
}

json to_json(const AuditEntry& a)
{
    json e{{"factor", a.factor}, {"ord_p", to_json(a.ord_p)}};
    e["ord_p_class_number_trick"] = a.ord_p_trick ? to_json(*a.ord_p_trick) : json(nullptr);
    e["is_unit"] = a.is_unit;
    return e;
}

json to_json(const TorintZero& t)
{
    json au = json::array();
    for (auto& a : t.audit) au.push_back(to_json(a));
    return json{{"symbolic", t.symbolic},
                {"L1", to_json(t.L1)},
                {"L2", to_json(t.L2)},
                {"L3", to_json(t.L3)},
                {"l_error", num(t.l_error)},
                {"gamma_ratio", num(t.gamma_ratio)},
                {"C", to_json(t.C)},
                {"C_printed", to_json(t.C_printed)},
                {"numeric", to_json(t.value)},
                {"numeric_printed_sign", to_json(t.value_printed)},
                {"error", num(t.error)},
                {"from_display", to_json(t.from_display)},
                {"audit", au}};
}

json to_json(const IntegralityResult& r)
{
    const char* v = r.verdict == Integrality::Integral      ? "integral"
                    : r.verdict == Integrality::Conditional ? "conditional"
                                                            : "fails";
    json out{{"verdict", v}, {"hypotheses", to_json(r.hypotheses)}, {"ratio_token", r.ratio_token},
             {"ratio", to_json(r.ratio)}, {"branch_b", r.branch_b}, {"branch_c", r.branch_c}};
    if (r.conj_ratio) out["conj_ratio"] = to_json(*r.conj_ratio);
    if (r.root_number) out["root_number"] = to_json(*r.root_number);
    if (r.c0_from_a) out["c0_from_a"] = to_json(*r.c0_from_a);
    if (r.c0_from_b) out["c0_from_b"] = to_json(*r.c0_from_b);
    out["branches_agree"] = r.branches_agree;
    return out;
}

json to_json(const Thm02Result& r)
{
    json audit = json::array();
    for (auto& c : r.audit) audit.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    json out{{"found", r.found}, {"case", r.case_used}};
    out["phi1"] = r.phi1 ? char_report(*r.phi1) : json(nullptr);
    out["phi2"] = r.phi2 ? char_report(*r.phi2) : json(nullptr);
    out["twist"] = r.twist ? char_report(*r.twist) : json(nullptr);
    out["condition"] = to_json(r.condition);
    out["hypotheses"] = to_json(r.hypotheses);
    out["audit"] = audit;
    out["obstruction"] = r.obstruction;
    return out;
}

json to_json(const DenominatorReport& r)
{
    json au = json::array();
    for (auto& a : r.unit_audit) au.push_back(to_json(a));
    return json{{"c_phi0", to_json(r.c_phi0)},
                {"c_prime", to_json(r.c_prime)},
                {"torint", json{{"symbolic", r.torint.symbolic}, {"numeric", to_json(r.torint.value)}, {"error", num(r.torint.error)}}},
                {"unit_audit", au},
                {"predicted_bound", r.predicted_bound},
                {"hypotheses", to_json(r.hypotheses)},
                {"bound_asserted", r.bound_asserted}};
}

} // namespace qh
