#include "qh/eisenstein.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qh {

namespace {

int pm1(int e) { return (e % 2 == 0) ? 1 : -1; }

int sign_at_minus_one(const LocalChar& c, const LocalPlace& v)
{
    RootU s = c.on_unit(v, FieldElement{mpq_class(-1), mpq_class(0)});
    if (s.is_one()) return 1;
    if (s == RootU(1, 2)) return -1;
    throw Error("character value at -1 is not a sign");
}

double rel_err(const LValue& L) { return L.error / std::max(std::abs(L.value), 1e-300); }

// L(s, lam) with the Euler factor at v removed
cplx euler_factor(const HeckeChar& lam, const LocalPlace& v, double s)
{
    if (lam.cond_exponent(v.prime()) > 0) return 1.0;
    cplx a = lam.idelic_at(v.prime(), v.uniformizer());
    return 1.0 / (1.0 - a * std::pow(static_cast<double>(v.q()), -s));
}

struct DisplayParts {
    LValue L1, L2, L3full;
    cplx L3; // partial L^S
    double gamma_ratio = 0;
    i64 units = 1;
    cplx explicit_factor;
    int sign_printed = 1, sign_local = 1, theta_inf = 1;
};

DisplayParts display_parts(const EisensteinSetup& S, double z)
{
    const WeightParams& w = S.w;
    if (!w.in_window()) throw Error("toroidal value: need n-1 < m'+n' < m+1");
    if (!S.field().coprime(S.N, S.field().mul(S.M1, S.M2)))
        throw Error("toroidal value: conductor of theta meets the conductors of phi");
    DisplayParts d;
    HeckeChar A = S.phi1 * S.theta, B = (S.phi2 * S.theta).inverse();
    d.L1 = l_value(A, z / 2);
    d.L2 = l_value(B, z / 2);
    d.L3full = l_value(S.chi, z);
    d.L3 = d.L3full.value;
    for (auto& pl : S.places)
        if (pl.in_S) d.L3 /= euler_factor(S.chi, *pl.place, z);
    d.gamma_ratio = std::tgamma(z / 2 + w.m - w.mp + 1) * std::tgamma(z / 2 + w.mp + 1) / std::tgamma(z + w.m + 2);
    d.units = S.N.is_one() ? 1 : ResidueRing(S.phi1.field_ptr(), S.N).unit_order();
    cplx ex = 1.0;
    for (auto& pl : S.places) {
        double q = static_cast<double>(pl.place->q());
        int e1 = pl.r + pl.kN;
        cplx tp = pl.theta.at_pi * pl.phi2.at_pi;
        ex *= std::pow(tp, -e1) * std::pow(q, -e1 * z / 2);
        if (pl.kN > 0) ex *= std::pow(pl.phi2.at_pi / pl.phi1.at_pi, pl.kN) * std::pow(q, pl.kN * z);
    }
    d.explicit_factor = ex;
    d.sign_printed = pm1(w.n - w.np + w.k + w.l);
    d.sign_local = pm1(w.m - w.mp);
    d.theta_inf = pm1(S.theta.a() + S.theta.b());
    return d;
}

} // namespace

void WeightParams::validate() const
{
    if (!(m >= n && n >= 0)) throw Error("weights: need m >= n >= 0");
    if (mp < 0 || mp > m) throw Error("weights: need 0 <= m' <= m");
    if (np < 0 || np > n) throw Error("weights: need 0 <= n' <= n");
}

EisensteinSetup EisensteinSetup::make(const WeightParams& w, const HeckeChar& phi1, const HeckeChar& phi2,
                                      const std::optional<HeckeChar>& theta, i64 p)
{
    w.validate();
    const QuadField& K = phi1.field();
    if (phi2.field().D() != K.D()) throw Error("setup: characters over different fields");
    auto type_err = [](const char* who, const HeckeChar& c, int a, int b) {
        std::ostringstream os;
        os << "setup: " << who << " has type (" << c.a() << "," << c.b() << "), Case (A) needs (" << a << "," << b << ")";
        return Error(os.str());
    };
    if (phi1.a() != 1 - w.k || phi1.b() != -w.n - w.l) throw type_err("phi1", phi1, 1 - w.k, -w.n - w.l);
    if (phi2.a() != -w.m - w.k - 1 || phi2.b() != -w.l) throw type_err("phi2", phi2, -w.m - w.k - 1, -w.l);

    EisensteinSetup S;
    S.w = w;
    S.phi1 = phi1;
    S.phi2 = phi2;
    S.chi = phi1 * phi2.inverse();
    S.theta = theta ? *theta : HeckeChar::trivial(phi1.field_ptr());
    if (S.theta.field().D() != K.D()) throw Error("setup: theta over a different field");
    int ta = w.m - w.mp + w.k, tb = w.n - w.np + w.l;
    if (S.theta.a() != ta || S.theta.b() != tb) throw type_err("theta", S.theta, ta, tb);
    S.M1 = phi1.conductor();
    S.M2 = phi2.conductor();
    S.M = S.chi.conductor();
    S.N = S.theta.conductor();
    S.p = p;

    IdealHNF all = K.mul(K.mul(S.M1, S.M2), S.N);
    for (auto& [P, e] : K.factor(all)) {
        SetupPlace pl;
        pl.P = P;
        pl.place = std::make_shared<LocalPlace>(phi1.field_ptr(), P, all);
        pl.r = K.ord(P, S.M1);
        pl.t = K.ord(P, S.M2);
        pl.s = pl.r + pl.t;
        pl.kN = K.ord(P, S.N);
        pl.chi_ramified = K.ord(P, S.M) > 0;
        pl.in_S = pl.r > 0 && pl.t > 0 && !pl.chi_ramified;
        pl.in_T = pl.kN > 0;
        pl.phi1 = LocalChar::of(phi1, *pl.place);
        pl.phi2 = LocalChar::of(phi2, *pl.place);
        pl.theta = LocalChar::of(S.theta, *pl.place);
        S.places.push_back(std::move(pl));
    }

    auto add = [&S](std::string name, bool ok, std::string src) { S.hypotheses.push_back({std::move(name), ok, std::move(src)}); };
    add("n-1 < m'+n' < m+1", w.in_window(), "convergence of the toroidal integral at z = 0");
    add("N coprime to M1 M2", K.coprime(S.N, K.mul(S.M1, S.M2)), "choice of theta");
    bool havep = p > 1;
    i64 units = S.N.is_one() ? 1 : ResidueRing(phi1.field_ptr(), S.N).unit_order();
    auto coprime_p = [&](const IdealHNF& I) { return havep && I.norm() % p != 0; };
    add("p prime", havep && is_prime(p), "input");
    add("p unramified in F", havep && K.dF() % p != 0, "ord_p bookkeeping");
    add("p > m", havep && p > w.m, "integral structure of M(m,n) (p > m >= n)");
    add("conductors of phi_i coprime to p", coprime_p(S.M1) && coprime_p(S.M2), "setup");
    add("N coprime to p d_F", coprime_p(S.N) && std::gcd(S.N.norm(), K.dF()) == 1, "choice of theta");
    add("#(O/N)^* coprime to p", havep && units % p != 0, "choice of theta");
    return S;
}

const SetupPlace* EisensteinSetup::find(const PrimeIdeal& P) const
{
    for (auto& pl : places)
        if (pl.P == P) return &pl;
    return nullptr;
}

bool EisensteinSetup::in_S(const PrimeIdeal& P) const
{
    auto pl = find(P);
    return pl && pl->in_S;
}

bool EisensteinSetup::hypotheses_hold() const
{
    for (auto& h : hypotheses)
        if (!h.status) return false;
    return true;
}

std::vector<std::string> EisensteinSetup::hypothesis_failures() const
{
    std::vector<std::string> out;
    for (auto& h : hypotheses)
        if (!h.status) out.push_back(h.name);
    return out;
}

PrimeIdeal p_adic_prime(const QuadField& K, i64 p)
{
    PrimeFactor f = K.split_prime(p);
    if (f.kind == SplitKind::Ramified) throw Error("ord_p: p ramified in F");
    return f.primes_above[0];
}

Laurent2 hecke_apply(const LocalCharacterPair& e, const LocalMatrix& g)
{
    const LocalPlace& v = *e.place;
    const QuadField& K = v.field();
    FieldElement pi = QuadField::to_fe(v.uniformizer());
    FieldElement one{mpq_class(1), mpq_class(0)}, zero{mpq_class(0), mpq_class(0)};
    Laurent2 total;
    if (e.s == 0) total += eval_newvector(e, mat_mul(K, g, mat(one, zero, zero, pi)));
    ResidueRing R(v.field_ptr(), v.power(1));
    for (i64 key = 0; key < R.size(); ++key)
        total += eval_newvector(e, mat_mul(K, g, mat(pi, QuadField::to_fe(R.elem(key)), zero, one)));
    return total;
}

HeckeEigenvalue hecke_eigenvalue(const EisensteinSetup& S, const PrimeIdeal& P)
{
    if (S.in_S(P)) throw Error("hecke_eigenvalue: v in S is not an eigen-place of Psi^0");
    HeckeEigenvalue out;
    out.P = P;
    PlacePtr v;
    LocalChar c1, c2;
    if (auto pl = S.find(P)) {
        v = pl->place;
        c1 = pl->phi1;
        c2 = pl->phi2;
    } else {
        const QuadField& K = S.field();
        v = std::make_shared<LocalPlace>(S.phi1.field_ptr(), P, K.mul(K.mul(S.M1, S.M2), S.N));
        c1 = LocalChar::of(S.phi1, *v);
        c2 = LocalChar::of(S.phi2, *v);
    }
    auto e = LocalCharacterPair::make(v, c1, c2);
    out.symbolic = hecke_apply(e, lower_unipotent(*v, e.r));
    out.value = e.value(out.symbolic, 0.0);
    out.cosets = static_cast<int>(v->q()) + (e.s == 0 ? 1 : 0);
    if (e.s == 0) out.closed_form = c2.at_pi + static_cast<double>(v->q()) * c1.at_pi;
    return out;
}

ConstantTerm constant_term_c(const EisensteinSetup& S, double z)
{
    const WeightParams& w = S.w;
    ConstantTerm c;
    c.z = z;
    double d = static_cast<double>(std::abs(S.field().dF()));
    c.archimedean = std::pow(d, -0.5) * 2 * M_PI / (z + w.m + 1) * double(pm1(w.n + 1));
    LValue Lm = l_value(S.chi, z - 1), L0 = l_value(S.chi, z);
    c.l_ratio = Lm.value / L0.value;
    c.l_error = std::abs(c.l_ratio) * (rel_err(Lm) + rel_err(L0));
    for (auto& pl : S.places) {
        if (!pl.chi_ramified) continue;
        LocalConstant lc;
        lc.P = pl.P;
        lc.supported = (pl.r > 0) != (pl.t > 0);
        if (lc.supported) {
            lc.sign = sign_at_minus_one(pl.phi2, *pl.place);
            lc.nm_m1 = 1;
            for (int i = 0; i < pl.r; ++i) lc.nm_m1 *= pl.place->q();
            lc.value = mpq_class(mpz_class(static_cast<long>(lc.sign)), mpz_class(static_cast<long>(lc.nm_m1)));
            c.local_product *= lc.value;
        } else {
            c.partial = true;
        }
        c.locals.push_back(lc);
    }
    c.value = c.archimedean * c.l_ratio * c.local_product.get_d();
    if (z == 0) {
        LValue r = l_alg_ratio(S.chi.twist_norm(-1), S.chi);
        c.alg_ratio = r.value;
        c.alg_assembly = double(pm1(w.n + 1)) * r.value * c.local_product.get_d();
    }
    return c;
}

ConstantTermPrime constant_term_cprime(const EisensteinSetup& S, double z)
{
    ConstantTermPrime out;
    out.c = constant_term_c(S, z);
    out.value = out.c.value;
    std::optional<PrimeIdeal> Pp;
    if (S.p > 1 && S.field().dF() % S.p != 0) Pp = p_adic_prime(S.field(), S.p);
    for (auto& pl : S.places) {
        if (!pl.in_S) continue;
        SFactor f;
        f.P = pl.P;
        i64 q = pl.place->q();
        f.one_minus_q = 1 - q;
        cplx chi_v = S.chi.idelic_at(pl.P, pl.place->uniformizer());
        f.chi_over_nm = std::pow(chi_v, pl.r) * std::pow(static_cast<double>(q), -pl.r);
        f.l_v = euler_factor(S.chi, *pl.place, z);
        if (Pp) {
            f.ord_p_one_minus_q = vp(f.one_minus_q, S.p);
            try {
                mpq_class o = ord_p_of_value(S.chi, *Pp, S.field().pow(pl.P.ideal, pl.r));
                o -= pl.r * vp(q, S.p);
                f.ord_p_chi_over_nm = o;
            } catch (const Error&) {
            }
        }
        out.value *= static_cast<double>(f.one_minus_q) * f.chi_over_nm * f.l_v;
        out.factors.push_back(f);
    }
    return out;
}

ToroidalValue toroidal_value(const EisensteinSetup& S, double z, int truncation, double tol)
{
    ToroidalValue tv;
    tv.z = z;
    DisplayParts d = display_parts(S, z);
    tv.L1 = d.L1.value;
    tv.L2 = d.L2.value;
    tv.L3 = d.L3;
    tv.l_error = rel_err(d.L1) + rel_err(d.L2) + rel_err(d.L3full);
    tv.gamma_ratio = d.gamma_ratio;
    tv.units = d.units;
    tv.explicit_factor = d.explicit_factor;
    tv.sign_printed = d.sign_printed;
    tv.sign_local = d.sign_local;
    tv.theta_inf_minus_one = d.theta_inf;
    cplx base = tv.L1 * tv.L2 / tv.L3 * tv.gamma_ratio * static_cast<double>(tv.units) * tv.explicit_factor / 2.0;
    tv.display_printed = base * double(tv.sign_printed);
    tv.display = base * double(tv.sign_local);

    HeckeChar A = S.phi1 * S.theta, B = (S.phi2 * S.theta).inverse();
    cplx prod = d.L1.value * d.L2.value / d.L3full.value;
    // ramified places plus a few unramified ones, whose Euler factors are
    // traded for the case (1) local factor
    std::vector<SetupPlace> sigma = S.places;
    const QuadField& K = S.field();
    IdealHNF all = K.mul(K.mul(S.M1, S.M2), S.N);
    for (auto& P : K.primes_upto(13)) {
        if (S.find(P)) continue;
        SetupPlace pl;
        pl.P = P;
        pl.place = std::make_shared<LocalPlace>(S.phi1.field_ptr(), P, all);
        pl.phi1 = LocalChar::of(S.phi1, *pl.place);
        pl.phi2 = LocalChar::of(S.phi2, *pl.place);
        pl.theta = LocalChar::of(S.theta, *pl.place);
        sigma.push_back(std::move(pl));
    }
    for (auto& pl : sigma) {
        const LocalPlace& v = *pl.place;
        prod /= euler_factor(A, v, z / 2) * euler_factor(B, v, z / 2);
        prod *= euler_factor(S.chi, v, z);
        auto t = ToroidalLocal::make(pl.place, pl.phi1, pl.phi2, pl.theta);
        ToroidalPlace tp;
        tp.P = pl.P;
        tp.case_no = t.natural_case();
        tp.formula = local_toroidal_formula(tp.case_no);
        tp.local = local_toroidal_factor(t, tp.case_no, z);
        if (truncation > 0) tp.truncation = toroidal_truncation(t, z, truncation);
        prod *= tp.local;
        tv.places.push_back(tp);
    }
    tv.archimedean = archimedean_factor(S.w.m, S.w.mp, z);
    tv.product = prod * tv.archimedean;
    tv.rel_diff = std::abs(tv.product - tv.display) / std::max(std::abs(tv.display), 1e-300);
    tv.pass = tv.rel_diff < tol;
    for (auto& tp : tv.places)
        if (tp.truncation && std::abs(*tp.truncation - tp.local) > tol * std::max(1.0, std::abs(tp.local))) tv.pass = false;
    return tv;
}

TorintZero torint_zero(const EisensteinSetup& S)
{
    const WeightParams& w = S.w;
    TorintZero t;
    DisplayParts d = display_parts(S, 0.0);
    t.L1 = d.L1.value;
    t.L2 = d.L2.value;
    t.L3 = d.L3full.value;
    t.l_error = rel_err(d.L1) + rel_err(d.L2) + rel_err(d.L3full);
    t.gamma_ratio = std::tgamma(w.m - w.mp + 1) * std::tgamma(w.mp + 1) / std::tgamma(w.m + 2);

    cplx C = static_cast<double>(d.units) / 2.0;
    cplx twist = 1.0;
    for (auto& pl : S.places) {
        cplx tp = pl.theta.at_pi * pl.phi2.at_pi;
        C *= std::pow(tp, -(pl.r + pl.kN));
        cplx chi_v = pl.phi1.at_pi / pl.phi2.at_pi;
        if (pl.kN > 0) C *= std::pow(chi_v, -pl.kN);
        if (pl.in_S) {
            int mu = sign_at_minus_one(pl.phi2, *pl.place);
            C *= double(mu) * std::pow(chi_v, -pl.r);
            cplx X1 = pl.phi1.at_pi, X2 = pl.phi2.at_pi;
            twist *= double(mu) * std::pow(X2 / X1, pl.r) * (1.0 - X1 / X2);
        }
    }
    t.C = C * double(d.sign_local);
    t.C_printed = C * double(d.sign_printed);
    cplx Lpart = t.L1 * t.L2 / t.L3 * t.gamma_ratio;
    t.value = Lpart * t.C;
    t.value_printed = Lpart * t.C_printed;
    t.error = std::abs(t.value) * t.l_error;
    cplx disp = d.L1.value * d.L2.value / d.L3 * d.gamma_ratio * static_cast<double>(d.units) * d.explicit_factor *
                double(d.sign_local) / 2.0;
    t.from_display = disp * twist;

    std::ostringstream os;
    os << "L(0, phi1 theta) L(0, (phi2 theta)^-1) / L(0, chi) * Gamma(" << w.m - w.mp + 1 << ") Gamma(" << w.mp + 1
       << ") / Gamma(" << w.m + 2 << ") * C(M1, S, N)";
    t.symbolic = os.str();

    if (S.p > 1 && S.field().dF() % S.p != 0 && is_prime(S.p)) {
        const QuadField& K = S.field();
        PrimeIdeal Pp = p_adic_prime(K, S.p);
        auto add_int = [&](std::string name, mpq_class o) {
            AuditEntry a;
            a.factor = std::move(name);
            a.ord_p = o;
            a.is_unit = (o == 0);
            t.audit.push_back(a);
        };
        auto add_char = [&](std::string name, const HeckeChar& lam, const IdealHNF& J) {
            AuditEntry a;
            a.factor = std::move(name);
            try {
                a.ord_p = ord_p_of_value(lam, Pp, J);
                a.ord_p_trick = ord_p_class_number_trick(lam, Pp, J);
                a.is_unit = (a.ord_p == 0) && (*a.ord_p_trick == a.ord_p);
            } catch (const Error&) {
                a.is_unit = false;
            }
            t.audit.push_back(a);
        };
        add_int("1/2", mpq_class(-vp(2, S.p)));
        add_int("sign", 0);
        add_int("#(O/N)^*", mpq_class(vp(d.units, S.p)));
        HeckeChar tp_inv = (S.theta * S.phi2).inverse();
        for (auto& pl : S.places) {
            int e1 = pl.r + pl.kN;
            if (e1 > 0)
                add_char("(theta phi2)^-1 at " + pl.P.ideal.str() + "^" + std::to_string(e1), tp_inv,
                         K.pow(pl.P.ideal, e1));
            if (pl.kN > 0)
                add_char("chi^-1 at " + pl.P.ideal.str() + "^" + std::to_string(pl.kN), S.chi.inverse(),
                         K.pow(pl.P.ideal, pl.kN));
            if (pl.in_S) {
                add_int("mu2^-1(-1) at " + pl.P.ideal.str(), 0);
                add_char("chi^-1 at " + pl.P.ideal.str() + "^" + std::to_string(pl.r), S.chi.inverse(),
                         K.pow(pl.P.ideal, pl.r));
            }
        }
    }
    return t;
}

HeckeChar complex_conjugate(const HeckeChar& chi) { return chi.inverse().twist_norm(chi.a() + chi.b()); }

bool is_anticyclotomic(const HeckeChar& chi, int n_ideals)
{
    const QuadField& K = chi.field();
    if (K.conj(chi.conductor()) != chi.conductor()) return false;
    return same_character(chi.conj_c(), complex_conjugate(chi), n_ideals);
}

IntegralityResult integrality_criterion(const EisensteinSetup& S)
{
    const WeightParams& w = S.w;
    const QuadField& K = S.field();
    IntegralityResult out;
    bool havep = S.p > 1;
    out.hypotheses.push_back({"p > m+1", havep && S.p > w.m + 1, "integrality criterion"});
    out.hypotheses.push_back({"cond(phi1) coprime to cond(chi)", K.coprime(S.M1, S.M), "integrality criterion"});
    out.hypotheses.push_back({"M coprime to p", havep && S.M.norm() % S.p != 0, "integrality criterion"});

    ConstantTerm c0 = constant_term_c(S, 0.0);
    out.ratio = *c0.alg_ratio;
    out.ratio_token = "L^alg(-1,chi)/L^alg(0,chi) in O_phi";
    bool hyp = true;
    for (auto& h : out.hypotheses) hyp = hyp && h.status;

    if (w.m == w.n) {
        out.branch_c = is_anticyclotomic(S.chi);
        LValue a = l_value(complex_conjugate(S.chi), 0.0), b = l_value(S.chi, 0.0);
        out.conj_ratio = a.value / b.value;
        out.root_number = root_number(S.chi).value;
        double sgn = pm1(w.n + 1);
        out.c0_from_a = *c0.alg_assembly;
        out.c0_from_b = *out.conj_ratio * sgn * *out.root_number * std::sqrt(static_cast<double>(S.M.norm())) *
                        c0.local_product.get_d();
        out.branches_agree = std::abs(*out.c0_from_a - *out.c0_from_b) < 1e-8 * std::max(1.0, std::abs(*out.c0_from_a));
        out.branch_b = std::abs(*out.conj_ratio - 1.0) < 1e-8;
        if (out.branch_c && !out.branch_b) out.branches_agree = false;
        out.ratio_token = "L(0,chi bar)/L(0,chi) in O_phi";
    }
    if (!hyp)
        out.verdict = Integrality::Fails;
    else if (w.m == w.n && out.branch_c)
        out.verdict = Integrality::Integral;
    else
        out.verdict = Integrality::Conditional;
    return out;
}

Thm02Result thm02_search(const HeckeChar& chi, i64 p)
{
    Thm02Result res;
    const QuadField& K = chi.field();
    FieldPtr F = chi.field_ptr();
    int m = chi.a() - 2, n = -chi.b();
    auto hyp = [&res](std::string name, bool ok, std::string src) {
        res.hypotheses.push_back({std::move(name), ok, std::move(src)});
        return ok;
    };
    auto check = [&res](std::string name, bool ok, std::string detail) {
        res.audit.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };
    bool ok = true;
    ok &= hyp("infinity type z^{m+2} zbar^{-n}, m >= n >= 0", m >= n && n >= 0, "input");
    ok &= hyp("p prime", is_prime(p), "input");
    ok &= hyp("p unramified in F", p > 1 && K.dF() % p != 0, "input");
    ok &= hyp("M coprime to p", p > 1 && chi.conductor().norm() % p != 0, "input");
    ok &= hyp("p > m", p > m, "input");
    if (!ok) {
        res.obstruction = "input hypotheses fail";
        return res;
    }
    PrimeFactor pf = K.split_prime(p);
    bool p_split = pf.kind == SplitKind::Split;
    auto facs = K.factor(chi.conductor());
    bool split_cond = true;
    for (auto& [Q, e] : facs) split_cond = split_cond && Q.kind == SplitKind::Split;

    bool anti = is_anticyclotomic(chi);
    if (m == n && anti) {
        res.case_used = 2;
        bool h = true;
        h &= hyp("p split when m > 0", m == 0 || p_split, "case (ii)");
        bool no_ram = true, no_bad_inert = true;
        for (auto& [Q, e] : facs) {
            if (Q.kind == SplitKind::Ramified) no_ram = false;
            if (K.D() == 3 && Q.p == 2) no_ram = false;
            if (Q.kind == SplitKind::Inert && e == 1 && (Q.p + 1) % p == 0) no_bad_inert = false;
        }
        h &= hyp("no ramified prime divides M", no_ram, "case (ii)");
        h &= hyp("no inert prime = -1 mod p divides M exactly once", no_bad_inert, "case (ii)");
        // M = M bar with no ramified factor, so M = (r) for a rational r
        const IdealHNF& M = chi.conductor();
        IdealHNF Mr = K.principal_int(M.a);
        if (!(Mr == M)) {
            hyp("M generated by a rational integer", false, "case (ii)");
            res.obstruction = "conductor is not generated by a rational integer";
            return res;
        }
        if (!h) {
            res.obstruction = "hypotheses of case (ii) fail";
            return res;
        }
        int omega = kronecker(-K.dF(), M.a);
        RootNumber rn = root_number(chi);
        res.condition = double(omega) * rn.tau_product * rn.norm_factor;
        bool cond_ok = std::abs(res.condition - 1.0) < 1e-9;
        h &= hyp("omega(M) tau(chi~)/sqrt Nm(M) = 1", cond_ok, "case (ii)");
        if (!cond_ok) {
            std::ostringstream os;
            double re = res.condition.real() + 0.0, im = res.condition.imag() + 0.0;
            os << "root-number condition fails: omega(M) tau/sqrt Nm(M) = " << re << (im < 0 ? " - " : " + ")
               << std::abs(im) << "i";
            res.obstruction = os.str();
            return res;
        }
        HeckeChar phi1 = construct_greenchar(F, 1);
        cplx W = root_number(phi1).value;
        if (std::abs(W + 1.0) < 1e-9) {
            for (i64 Q = 3; Q < 400 && !res.twist; Q += 2) {
                if (!is_prime(Q) || K.split_prime(Q).kind != SplitKind::Inert) continue;
                if (Q == p || M.norm() % Q == 0 || (Q + 1) % p == 0) continue;
                res.twist = construct_anticyclotomic(F, Q, 1);
            }
            if (!res.twist) {
                res.obstruction = "no inert anticyclotomic twist found";
                return res;
            }
            phi1 = phi1 * *res.twist;
        }
        HeckeChar phi2inv = chi * phi1.inverse();
        res.phi1 = phi1;
        res.phi2 = phi2inv.inverse();
        bool all = true;
        all &= check("chi = phi1/phi2", same_character(phi1 * res.phi2->inverse(), chi), "100 ideals");
        all &= check("star(phi1) = phi1", same_character(phi1.star(), phi1), "100 ideals");
        all &= check("star(phi2^-1) = phi2^-1", same_character(phi2inv.star(), phi2inv), "100 ideals");
        cplx W1 = root_number(phi1).value, W2 = root_number(phi2inv).value;
        std::ostringstream d1, d2;
        d1 << W1.real() << " + " << W1.imag() << "i";
        d2 << W2.real() << " + " << W2.imag() << "i";
        all &= check("W(phi1) = 1", std::abs(W1 - 1.0) < 1e-9, d1.str());
        all &= check("W(phi2^-1) = 1", std::abs(W2 - 1.0) < 1e-9, d2.str());
        IdealHNF c1 = phi1.conductor();
        all &= check("cond(phi1) coprime to (p) M", c1.norm() % p != 0 && K.coprime(c1, M), c1.str());
        res.found = all;
        if (!all) res.obstruction = "verification failed";
        return res;
    }
    if (p_split && split_cond) {
        res.case_used = 1;
        hyp("p split and chi of split conductor", true, "case (i)");
        const IdealHNF& M = chi.conductor();
        std::optional<HeckeChar> phi1;
        for (auto& Q : K.primes_upto(2000)) {
            if (Q.kind != SplitKind::Split || Q.p < 5 || Q.p == p || M.norm() % Q.p == 0) continue;
            phi1 = construct_minram(F, Q);
            break;
        }
        if (!phi1) {
            res.obstruction = "no auxiliary split prime";
            return res;
        }
        res.phi1 = phi1;
        res.phi2 = *phi1 * chi.inverse();
        bool all = true;
        all &= check("chi = phi1/phi2", same_character(*phi1 * res.phi2->inverse(), chi), "100 ideals");
        IdealHNF c1 = phi1->conductor();
        all &= check("cond(phi1) coprime to (p) M", c1.norm() % p != 0 && K.coprime(c1, M), c1.str());
        all &= check("phi1 of type z", phi1->a() == 1 && phi1->b() == 0, "");
        res.found = all;
        if (!all) res.obstruction = "verification failed";
        return res;
    }
    hyp("case (i) or case (ii) applies", false, "input");
    res.obstruction = "neither case (i) nor case (ii) applies";
    return res;
}

DenominatorReport denominator_bound(const EisensteinSetup& S, bool assert_nonvanishing)
{
    DenominatorReport r;
    r.c_phi0 = constant_term_c(S, 0.0);
    r.c_prime = constant_term_cprime(S, 0.0);
    r.torint = torint_zero(S);
    r.unit_audit = r.torint.audit;
    r.hypotheses = S.hypotheses;
    bool units_ok = !r.unit_audit.empty();
    for (auto& a : r.unit_audit) units_ok = units_ok && a.is_unit;
    r.hypotheses.push_back({"C(M1,S,N) is a p-adic unit", units_ok, "unit audit"});
    r.hypotheses.push_back({"L^alg(0, phi1 theta) is a p-adic unit", assert_nonvanishing,
                            "asserted by configuration"});
    r.hypotheses.push_back({"L^alg(0, (phi2 theta)^-1) is a p-adic unit", assert_nonvanishing,
                            "asserted by configuration"});
    bool all = true;
    std::string missing;
    for (auto& h : r.hypotheses)
        if (!h.status) {
            all = false;
            missing += (missing.empty() ? "" : "; ") + h.name;
        }
    r.bound_asserted = all;
    r.predicted_bound = all ? "delta(Eis(Psi^0)) in L^alg(0,chi) O_phi"
                            : "conditional: delta(Eis(Psi^0)) in L^alg(0,chi) O_phi provided " + missing;
    return r;
}

} // namespace qh
