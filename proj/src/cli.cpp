#include "qh/cli.hpp"

#include "qh/suite.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qh {

namespace {

struct HypothesisFailure : Error {
    using Error::Error;
};

cplx parse_complex(const std::string& s0)
{
    std::string s;
    for (char ch : s0)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ConfigError("--s", "empty complex number");
    auto real_part = [&](const std::string& t) -> double {
        if (t.empty()) return 0.0;
        size_t used = 0;
        double v;
        try {
            v = std::stod(t, &used);
        } catch (...) {
            throw ConfigError("--s", "cannot parse '" + s0 + "'");
        }
        if (used != t.size()) throw ConfigError("--s", "cannot parse '" + s0 + "'");
        return v;
    };
    if (s.back() != 'i') return {real_part(s), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not an exponent sign
    size_t cut = std::string::npos;
    for (size_t i = body.size(); i-- > 0;) {
        if ((body[i] == '+' || body[i] == '-') && !(i > 0 && (body[i - 1] == 'e' || body[i - 1] == 'E'))) {
            cut = i;
            break;
        }
    }
    std::string re = cut == std::string::npos ? "" : body.substr(0, cut);
    std::string im = cut == std::string::npos ? body : body.substr(cut);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {real_part(re), real_part(im)};
}

std::pair<i64, int> parse_place(const std::string& s0, const std::string& key)
{
    std::string s;
    for (char ch : s0)
        if (ch != '{' && ch != '}' && ch != '[' && ch != ']' && ch != '(' && ch != ')' && !std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto c = s.find(',');
    try {
        if (c == std::string::npos) return {std::stoll(s), 0};
        return {std::stoll(s.substr(0, c)), std::stoi(s.substr(c + 1))};
    } catch (...) {
        throw ConfigError(key, "expected {p,index}, got '" + s0 + "'");
    }
}

std::string fe_str(const QuadField& K, const FieldElement& x)
{
    std::string w = K.t() == 1 ? "w" : "sqrt(-" + std::to_string(K.D()) + ")";
    if (x.y == 0) return x.x.get_str();
    std::string s = x.x == 0 ? "" : x.x.get_str() + " + ";
    return s + "(" + x.y.get_str() + ")*" + w;
}

json matrix_json(const QuadField& K, const LocalMatrix& g)
{
    return json::array({json::array({fe_str(K, g[0]), fe_str(K, g[1])}), json::array({fe_str(K, g[2]), fe_str(K, g[3])})});
}

// order of a character of (O/P^r)^*
i64 char_order(const LocalPlace& v, const LocalChar& mu, int r)
{
    ResidueRing R(v.field_ptr(), v.power(r));
    i64 n = 1;
    for (auto& g : R.generators()) n = lcm(n, mu.on_unit(v, QuadField::to_fe(g)).den);
    return n;
}

LocalChar parse_eta(const std::string& s, PlacePtr v, const std::string& key)
{
    if (s.empty() || s == "1" || s == "unr") return LocalChar::unramified(1.0);
    // prim:<cond>:<index>
    if (s.rfind("prim:", 0) == 0) {
        auto rest = s.substr(5);
        auto c = rest.find(':');
        try {
            int cond = std::stoi(rest.substr(0, c));
            size_t idx = c == std::string::npos ? 0 : std::stoul(rest.substr(c + 1));
            if (cond < 1 || cond > 3) throw ConfigError(key, "conductor exponent must be 1..3");
            auto cs = primitive_characters(v, cond);
            if (idx >= cs.size()) throw ConfigError(key, "index out of range (" + std::to_string(cs.size()) + " characters)");
            return cs[idx];
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            throw ConfigError(key, "expected prim:<cond>:<index>, got '" + s + "'");
        }
    }
    throw ConfigError(key, "expected 'unr' or prim:<cond>:<index>, got '" + s + "'");
}

bool any_failed(const std::vector<Hypothesis>& hs, const std::vector<std::string>& names)
{
    for (auto& h : hs)
        for (auto& n : names)
            if (h.name == n && !h.status) return true;
    return false;
}

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    std::string out_path;
    int precision = 64;
};

int emit(Ctx& c, const json& j, int code, const std::string& summary)
{
    std::string s = j.dump(2);
    if (c.out_path.empty()) {
        c.out << s << "\n";
    } else {
        std::ofstream f(c.out_path);
        if (!f) throw ConfigError("--out", "cannot write " + c.out_path);
        f << s << "\n";
    }
    c.err << summary << "\n";
    return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Ctx ctx{out, err, "", 64};
    if (const char* env = std::getenv("QHECKE_PRECISION")) {
        try {
            ctx.precision = std::stoi(env);
        } catch (...) {
            err << "QHECKE_PRECISION: not an integer\n";
            return ExitConfig;
        }
    }

    CLI::App app{"Hecke characters of imaginary quadratic fields, toroidal integrals and Eisenstein denominators"};
    app.require_subcommand(1);
    app.add_option("--precision", ctx.precision, "working precision in bits (>= 64; env QHECKE_PRECISION)");

    auto out_opt = [&](CLI::App* s) { s->add_option("--out", ctx.out_path, "write the JSON report to this file"); };

    i64 D = 0;
    std::string char_path, char2_path, setup_path, s_str = "2", place_str, prime_str, eta1 = "unr", eta2 = "unr";
    double bound = 0, z = 4.0, cut = 1.0;
    int r = 1, trunc = 0, samples = 2;
    i64 mu_order = 0, p = 0;
    unsigned seed = 17;
    bool assert_nv = false, quick = false;

    auto* field = app.add_subcommand("field", "field invariants");
    field->add_option("--D", D, "squarefree D > 0, F = Q(sqrt(-D))")->required();
    out_opt(field);

    auto* chr = app.add_subcommand("char", "build a character and report its conductor and consistency");
    chr->add_option("--char", char_path, "character spec (JSON)")->required();
    out_opt(chr);

    auto* lval = app.add_subcommand("lvalue", "L(s, lambda)");
    lval->add_option("--char", char_path)->required();
    lval->add_option("--s", s_str, "complex point, e.g. 2.5+0.7i");
    lval->add_option("--bound", bound, "truncation bound (>= 1000; default automatic)");
    lval->add_option("--cut", cut, "splitting parameter of the functional equation sums");
    out_opt(lval);

    auto* gauss = app.add_subcommand("gauss", "local Gauss sum tau_v");
    gauss->add_option("--char", char_path)->required();
    gauss->add_option("--place", place_str, "{p,index}")->required();
    out_opt(gauss);

    auto* rootn = app.add_subcommand("rootnumber", "global root number");
    rootn->add_option("--char", char_path)->required();
    out_opt(rootn);

    auto* rprod = app.add_subcommand("rootprod", "Weil product rule for two characters");
    rprod->add_option("--char1", char_path)->required();
    rprod->add_option("--char2", char2_path)->required();
    out_opt(rprod);

    auto* tsum = app.add_subcommand("twistsum", "twisted sum of the spherical vector against the newvector");
    tsum->add_option("--D", D)->required();
    tsum->add_option("--prime", prime_str, "{p,index}")->required();
    tsum->add_option("--r", r, "conductor exponent of mu")->check(CLI::Range(1, 3));
    tsum->add_option("--mu-order", mu_order, "only characters mu of this order (0: all)");
    tsum->add_option("--eta1", eta1, "unr or prim:<cond>:<index>");
    tsum->add_option("--eta2", eta2, "unr or prim:<cond>:<index>");
    tsum->add_option("--samples", samples, "random cosets in addition to the lower unipotent ones");
    tsum->add_option("--seed", seed, "seed for the random cosets");
    out_opt(tsum);

    auto* tor = app.add_subcommand("torint", "toroidal integral: display against the product of local factors");
    tor->add_option("--setup", setup_path)->required();
    tor->add_option("--z", z, "real point z");
    tor->add_option("--truncation", trunc, "also sum the local integrals over |t| <= T");
    out_opt(tor);

    auto* cterm = app.add_subcommand("constant-term", "constant terms c(phi, z) and c'(phi, z)");
    cterm->add_option("--setup", setup_path)->required();
    cterm->add_option("--z", z);
    out_opt(cterm);

    auto* denom = app.add_subcommand("denominator", "denominator bound report");
    denom->add_option("--setup", setup_path)->required();
    denom->add_flag("--assert-nonvanishing", assert_nv, "assert the two twisted L-values are p-adic units");
    out_opt(denom);

    auto* thm = app.add_subcommand("thm02", "search for (phi1, phi2) realizing chi");
    thm->add_option("--chi", char_path)->required();
    thm->add_option("--p", p, "the prime p")->required();
    out_opt(thm);

    auto* ver = app.add_subcommand("verify-all", "run the acceptance suite");
    ver->add_flag("--quick", quick, "exact-identity criteria only");
    ver->add_option("--seed", seed, "seed for random coset samples");
    out_opt(ver);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return ExitConfig;
    }

    try {
        if (ctx.precision < 64) throw ConfigError("--precision", "precision must be at least 64 bits");
        if (lval->parsed() && bound != 0 && bound < 1000) throw ConfigError("--bound", "bound must be at least 1000");

        if (field->parsed()) {
            FieldPtr F;
            try {
                F = make_field(D);
            } catch (const Error& e) {
                throw ConfigError("--D", e.what());
            }
            return emit(ctx, field_report(*F), ExitPass,
                        "Q(sqrt(-" + std::to_string(D) + ")): class number " + std::to_string(F->class_number()));
        }
        if (chr->parsed()) {
            auto lam = char_from_json(read_json_file(char_path));
            return emit(ctx, char_report(lam), ExitPass, lam.describe());
        }
        if (lval->parsed()) {
            auto lam = char_from_json(read_json_file(char_path));
            cplx s = parse_complex(s_str);
            LOptions o;
            o.bound = static_cast<i64>(bound);
            o.cut = cut;
            auto L = l_value(lam, s, o);
            json j{{"character", lam.describe()}, {"s", to_json(s)}, {"L", to_json(L)}};
            std::ostringstream sm;
            sm << "L(" << s_str << ") = " << L.value << " +- " << L.error;
            return emit(ctx, j, ExitPass, sm.str());
        }
        if (gauss->parsed()) {
            auto lam = char_from_json(read_json_file(char_path));
            auto [pp, idx] = parse_place(place_str, "--place");
            PrimeIdeal P;
            try {
                P = lam.field().prime(pp, idx);
            } catch (const Error& e) {
                throw ConfigError("--place", e.what());
            }
            auto g = gauss_sum(lam, P);
            bool ok = g.correction || (g.abs2_exact && g.abs2 == lam.field().pow(P.ideal, g.cond_exp).norm());
            json j = to_json(g);
            j["magnitude_check"] = ok;
            return emit(ctx, j, ok ? ExitPass : ExitFailure, std::string("|tau_v|^2 = Nm(f_v): ") + (ok ? "pass" : "FAIL"));
        }
        if (rootn->parsed()) {
            auto lam = char_from_json(read_json_file(char_path));
            auto rn = root_number(lam);
            bool star = same_character(lam.star(), lam);
            bool sign_ok = !star || std::min(std::abs(rn.value - 1.0), std::abs(rn.value + 1.0)) < 1e-10;
            json j = to_json(rn);
            j["star_symmetric"] = star;
            j["sign_check"] = sign_ok;
            std::ostringstream sm;
            sm << "W = " << rn.value;
            return emit(ctx, j, sign_ok ? ExitPass : ExitFailure, sm.str());
        }
        if (rprod->parsed()) {
            auto l1 = char_from_json(read_json_file(char_path), nullptr, "char1");
            auto l2 = char_from_json(read_json_file(char2_path), l1.field_ptr(), "char2");
            if (!l1.field().coprime(l1.conductor(), l2.conductor()))
                throw HypothesisFailure("conductors are not coprime");
            auto res = rootprod_check(l1, l2);
            return emit(ctx, to_json(res), res.pass ? ExitPass : ExitFailure, std::string("rootprod: ") + (res.pass ? "pass" : "FAIL"));
        }
        if (tsum->parsed()) {
            FieldPtr F;
            try {
                F = make_field(D);
            } catch (const Error& e) {
                throw ConfigError("--D", e.what());
            }
            auto [pp, idx] = parse_place(prime_str, "--prime");
            PrimeIdeal P;
            try {
                P = F->prime(pp, idx);
            } catch (const Error& e) {
                throw ConfigError("--prime", e.what());
            }
            auto v = std::make_shared<LocalPlace>(F, P);
            auto e = LocalCharacterPair::make(v, parse_eta(eta1, v, "--eta1"), parse_eta(eta2, v, "--eta2"));
            if (!e.unramified()) throw HypothesisFailure("the twisted sum identity needs eta1, eta2 unramified");
            auto gs = coset_sample(*v, r, samples, seed);
            json rows = json::array();
            i64 checks = 0, passed = 0, used = 0;
            auto mus = primitive_characters(v, r);
            for (size_t i = 0; i < mus.size(); ++i) {
                i64 ord = char_order(*v, mus[i], r);
                if (mu_order && ord != mu_order) continue;
                ++used;
                for (auto& g : gs) {
                    auto ic = twisted_sum_p32(e, mus[i], g);
                    ++checks;
                    passed += ic.pass;
                    rows.push_back(json{{"mu", i}, {"mu_order", ord}, {"g", matrix_json(*F, g)},
                                        {"lhs", ic.lhs.str()}, {"rhs", ic.rhs.str()}, {"pass", ic.pass}});
                }
            }
            json j{{"place", to_json(P)}, {"r", r}, {"eta1", eta1}, {"eta2", eta2}, {"characters", used},
                   {"checks", checks}, {"passed", passed}, {"results", rows}};
            bool ok = checks > 0 && passed == checks;
            return emit(ctx, j, ok ? ExitPass : ExitFailure,
                        "twisted sums: " + std::to_string(passed) + "/" + std::to_string(checks) + " exact");
        }
        if (tor->parsed()) {
            auto S = setup_from_json(read_json_file(setup_path));
            if (any_failed(S.hypotheses, {"N coprime to M1 M2"})) throw HypothesisFailure("N is not coprime to M1 M2");
            auto t = toroidal_value(S, z, trunc);
            json j{{"hypotheses", to_json(S.hypotheses)}, {"toroidal", to_json(t)}};
            if (S.w.in_window()) j["value_at_0"] = to_json(torint_zero(S));
            std::ostringstream sm;
            sm << "display " << t.display << " product " << t.product << " rel diff " << t.rel_diff;
            return emit(ctx, j, t.pass ? ExitPass : ExitFailure, sm.str());
        }
        if (cterm->parsed()) {
            auto S = setup_from_json(read_json_file(setup_path));
            auto c = constant_term_c(S, z);
            json j{{"hypotheses", to_json(S.hypotheses)}, {"c", to_json(c)}};
            if (!c.partial) j["c_prime"] = to_json(constant_term_cprime(S, z));
            std::ostringstream sm;
            sm << "c(phi, " << z << ") = " << c.value << (c.partial ? " (partial: UNSUPPORTED local constants)" : "");
            return emit(ctx, j, c.partial ? ExitHypothesis : ExitPass, sm.str());
        }
        if (denom->parsed()) {
            auto S = setup_from_json(read_json_file(setup_path));
            auto rep = denominator_bound(S, assert_nv);
            return emit(ctx, to_json(rep), rep.bound_asserted ? ExitPass : ExitHypothesis, rep.predicted_bound);
        }
        if (thm->parsed()) {
            auto chi = char_from_json(read_json_file(char_path), nullptr, "chi");
            auto t = thm02_search(chi, p);
            int code = t.found ? ExitPass : t.obstruction == "verification failed" ? ExitFailure : ExitHypothesis;
            return emit(ctx, to_json(t), code, t.found ? "found (phi1, phi2)" : "obstruction: " + t.obstruction);
        }
        if (ver->parsed()) {
            SuiteOptions opt;
            opt.quick = quick;
            opt.seed = seed;
            std::vector<int> ids = quick ? quick_criteria() : std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
            auto rs = run_suite(opt, ids);
            json j = suite_report(rs);
            std::ostringstream sm;
            for (auto& c : rs) sm << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "\n";
            bool all = j["all_pass"].get<bool>();
            sm << (all ? "all pass" : "FAILURES");
            return emit(ctx, j, all ? ExitPass : ExitFailure, sm.str());
        }
    } catch (const ConfigError& e) {
        err << "config error at " << (e.key.empty() ? "(root)" : e.key) << ": " << e.what() << "\n";
        return ExitConfig;
    } catch (const HypothesisFailure& e) {
        err << "hypothesis failure: " << e.what() << "\n";
        return ExitHypothesis;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitFailure;
    }
    return ExitConfig;
}

int run_cli(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace qh
