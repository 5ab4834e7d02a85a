#include "qh/analytic.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

namespace qh {

namespace {

CycloZ cyclo_of(const std::vector<RootU>& terms)
{
    i64 N = 1;
    for (auto& t : terms) N = lcm(N, t.den);
    CycloZ c(N);
    for (auto& t : terms) c.add_root(t.num * (N / t.den), 1);
    c.reduce();
    return c;
}

// level of u - 1 for a unit residue u mod P^e, capped at e
int level_of(const LocalPlace& v, const IdealHNF& Pe, int e, const OElem& u)
{
    OElem y{u.x - 1, u.y};
    if (v.field().contains(Pe, y)) return e;
    return v.ord(y);
}

// T_j = sum over units delta of e_v(delta pi^{j-k}); an integer
std::vector<i64> level_sums(const LocalPlace& v, int e, int k, const std::vector<OElem>& units, bool& ok)
{
    std::vector<i64> T(e + 1, 0);
    ok = true;
    for (int j = 0; j <= e; ++j) {
        std::vector<RootU> terms;
        terms.reserve(units.size());
        for (auto& d : units) terms.push_back(v.additive(v.shift(QuadField::to_fe(d), j - k)));
        i64 val = 0;
        if (!cyclo_of(terms).as_rational(val)) ok = false;
        T[j] = val;
    }
    return T;
}

bool is_trivial_char(const HeckeChar& lam)
{
    if (lam.a() != 0 || lam.b() != 0 || !lam.conductor().is_one()) return false;
    for (auto& v : lam.class_gen_values())
        if (std::abs(v - cplx(1, 0)) > 1e-12) return false;
    return true;
}

double gamma_q(double a, double x)
{
    if (x <= 0) return 1.0;
    return boost::math::gamma_q(a, x);
}

struct AfeData {
    std::vector<cplx> a;
    double s = 0, kappa = 0, A = 1;
    cplx W;
};

cplx afe_sum(const AfeData& d, double c, i64 X, cplx* S1out = nullptr, cplx* S2out = nullptr)
{
    double a1 = d.s + d.kappa, a2 = 1 - d.s + d.kappa;
    cplx S1 = 0, S2 = 0;
    i64 n_max = std::min<i64>(X, static_cast<i64>(d.a.size()) - 1);
    for (i64 n = 1; n <= n_max; ++n) {
        if (d.a[n] == cplx(0, 0)) continue;
        double ln = std::log(static_cast<double>(n));
        S1 += d.a[n] * std::exp(-d.s * ln) * gamma_q(a1, n * c / d.A);
        S2 += std::conj(d.a[n]) * std::exp((d.s - 1) * ln) * gamma_q(a2, n / (c * d.A));
    }
    if (S1out) *S1out = S1;
    if (S2out) *S2out = S2;
    double pref = std::pow(d.A, 1 - 2 * d.s) * std::tgamma(a2) / std::tgamma(a1);
    return S1 + d.W * pref * S2;
}

i64 afe_bound(double A, double a1, double a2, double c)
{
    double need = std::max((a1 + 50) / c, (a2 + 50) * c);
    return static_cast<i64>(std::ceil(A * need)) + 20;
}

double conductor_norm(const HeckeChar& lam) { return static_cast<double>(lam.conductor().norm()); }

} // namespace

LocalGaussSum local_gauss_sum(const LocalPlace& v, int e, const std::function<RootU(const OElem&)>& chi)
{
    LocalGaussSum out;
    int k = e + v.diff_exp();
    IdealHNF Pe = v.power(e);
    ResidueRing R(v.field_ptr(), Pe);
    auto units = R.units();
    std::vector<RootU> terms;
    std::vector<RootU> cv;
    terms.reserve(units.size());
    for (auto& u : units) {
        RootU c = chi(u);
        cv.push_back(c);
        terms.push_back(c + v.additive(v.shift(QuadField::to_fe(u), -k)));
    }
    out.S = to_q(cyclo_of(terms));

    bool ok = true;
    auto T = level_sums(v, e, k, units, ok);
    i64 N = 1;
    for (auto& c : cv) N = lcm(N, c.den);
    CycloZ acc(N);
    for (size_t i = 0; i < units.size(); ++i)
        acc.add_root(cv[i].num * (N / cv[i].den), T[level_of(v, Pe, e, units[i])]);
    i64 val = 0;
    out.abs2_exact = ok && acc.as_rational(val);
    out.abs2 = val;
    return out;
}

GaussSumResult gauss_sum(const HeckeChar& lam, const PrimeIdeal& P)
{
    const QuadField& K = lam.field();
    GaussSumResult r;
    r.place = P;
    int e = lam.cond_exponent(P);
    r.cond_exp = e;
    IdealHNF Pe = K.pow(P.ideal, e);
    LocalPlace v(lam.field_ptr(), P, K.quotient(lam.conductor(), Pe));
    r.uniformizer = v.uniformizer();
    r.modulus_order = e + v.diff_exp();
    double w2 = (lam.a() + lam.b()) / 2.0;
    if (e == 0) {
        r.correction = true;
        int d = v.diff_exp();
        r.exact = Cyclo::scalar(1);
        r.abs2 = 1;
        r.abs2_exact = true;
        r.value = d ? std::pow(lam.eval(P.ideal), d) : cplx(1, 0);
        r.unitary_value = d ? std::pow(lam.eval_unitary(P.ideal), d) : cplx(1, 0);
        return r;
    }
    auto g = local_gauss_sum(v, e, [&](const OElem& u) { return lam.eps_local(P, u); });
    r.exact = g.S;
    r.abs2 = g.abs2;
    r.abs2_exact = g.abs2_exact;
    cplx lpi = lam.idelic_at(P, v.uniformizer());
    cplx S = g.S.value();
    int k = r.modulus_order;
    r.value = std::pow(lpi, -k) * S;
    r.unitary_value = std::pow(lpi * std::pow(static_cast<double>(P.norm()), w2), -k) * S;
    return r;
}

RootNumber root_number(const HeckeChar& lam)
{
    const QuadField& K = lam.field();
    RootNumber W;
    W.m = lam.m();
    static const cplx ipow4[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}}; // i^{-|m|}
    W.i_factor = ipow4[mod(std::abs(W.m), 4)];
    W.norm_factor = 1.0 / std::sqrt(conductor_norm(lam));
    std::vector<PrimeIdeal> places;
    for (auto& [P, e] : K.factor(lam.conductor())) places.push_back(P);
    for (auto& [P, e] : K.factor(K.different()))
        if (lam.cond_exponent(P) == 0) places.push_back(P);
    for (auto& P : places) {
        GaussSumResult g = gauss_sum(lam, P);
        if (g.correction)
            W.correction_product *= g.unitary_value;
        else
            W.tau_product *= g.unitary_value;
        W.taus.push_back(g);
    }
    // the Gauss sums use e_v = exp(-2 pi i {.}_p); the root number of
    // Lambda(s) = W conj(Lambda)(1-s) is the conjugate of their product
    W.value = W.i_factor * std::conj(W.norm_factor * W.tau_product * W.correction_product);
    return W;
}

RootProdResult rootprod_check(const HeckeChar& l1, const HeckeChar& l2)
{
    const QuadField& K = l1.field();
    if (!K.coprime(l1.conductor(), l2.conductor())) throw Error("rootprod: conductors are not coprime");
    RootProdResult r;
    cplx W1 = root_number(l1).value, W2 = root_number(l2).value, W12 = root_number(l1 * l2).value;
    auto val = [](const HeckeChar& l, const IdealHNF& I) {
        return I.is_one() ? cplx(1, 0) : 1.0 / l.eval_unitary(I);
    };
    r.lhs = W1 * W2 * val(l1, l2.conductor()) * val(l2, l1.conductor());
    int m1 = l1.m(), m2 = l2.m();
    r.sign_case = m1 * m2 < 0;
    r.nu = std::min(std::abs(m1), std::abs(m2));
    r.rhs = (r.sign_case && (r.nu % 2)) ? -W12 : W12;
    r.pass = std::abs(r.lhs - r.rhs) < 1e-9;
    return r;
}

GaussMagnitudeReport check_gauss_magnitudes(FieldPtr F, i64 max_norm)
{
    GaussMagnitudeReport rep;
    const QuadField& K = *F;
    for (auto& P : K.primes_upto(max_norm)) {
        LocalPlace v(F, P);
        i64 q = P.norm();
        i64 qe = 1;
        for (int e = 1; qe * q <= max_norm; ++e) {
            qe *= q;
            ++rep.places;
            IdealHNF Pe = v.power(e), Pe1 = v.power(e - 1);
            ResidueRing R(F, Pe);
            if (R.unit_order() == 1) continue;
            auto units = R.units();
            const auto& ord = R.orders();
            i64 N = ord.back();
            size_t ng = ord.size();
            std::vector<std::vector<i64>> w(units.size(), std::vector<i64>(ng));
            std::vector<int> lev(units.size());
            std::vector<char> deep(units.size());
            for (size_t i = 0; i < units.size(); ++i) {
                auto dl = R.dlog(units[i]);
                for (size_t j = 0; j < ng; ++j) w[i][j] = dl[j] * (N / ord[j]);
                lev[i] = level_of(v, Pe, e, units[i]);
                deep[i] = (e == 1) || K.contains(Pe1, OElem{units[i].x - 1, units[i].y});
            }
            bool ok = true;
            auto T = level_sums(v, e, e + v.diff_exp(), units, ok);
            std::vector<i64> k(ng, 0);
            std::vector<i64> cnt(N);
            while (true) {
                bool prim = false;
                for (size_t i = 0; i < units.size() && !prim; ++i) {
                    if (!deep[i]) continue;
                    i64 s = 0;
                    for (size_t j = 0; j < ng; ++j) s += k[j] * w[i][j];
                    if (s % N) prim = true;
                }
                if (prim) {
                    std::fill(cnt.begin(), cnt.end(), 0);
                    for (size_t i = 0; i < units.size(); ++i) {
                        i64 s = 0;
                        for (size_t j = 0; j < ng; ++j) s += k[j] * w[i][j];
                        cnt[s % N] += T[lev[i]];
                    }
                    CycloZ c(N);
                    c.coeffs() = cnt;
                    i64 val = 0;
                    ++rep.characters;
                    if (ok && c.as_rational(val) && val == qe)
                        ++rep.passed;
                    else if (rep.failures.size() < 10)
                        rep.failures.push_back("P=" + P.ideal.str() + " e=" + std::to_string(e));
                }
                size_t j = 0;
                while (j < ng && ++k[j] == ord[j]) k[j++] = 0;
                if (j == ng) break;
            }
        }
    }
    return rep;
}

std::vector<cplx> dirichlet_coefficients(const HeckeChar& lam, i64 X)
{
    const QuadField& K = lam.field();
    std::vector<cplx> a(X + 1, cplx(0, 0));
    if (X >= 1) a[1] = 1;
    std::vector<int> pk(X + 1, 0); // largest prime power dividing n at its smallest prime
    std::vector<int> spf(X + 1, 0);
    for (i64 i = 2; i <= X; ++i)
        if (!spf[i])
            for (i64 j = i; j <= X; j += i)
                if (!spf[j]) spf[j] = static_cast<int>(i);
    for (i64 p = 2; p <= X; ++p) {
        if (spf[p] != p) continue;
        PrimeFactor pf = K.split_prime(p);
        auto alpha = [&](const PrimeIdeal& P) {
            return lam.coprime_to_conductor(P.ideal) ? 1.0 / lam.eval_unitary(P.ideal) : cplx(0, 0);
        };
        std::vector<cplx> c{1};
        i64 pp = 1;
        while (pp <= X / p) {
            pp *= p;
            c.push_back(0);
        }
        size_t kmax = c.size() - 1;
        if (pf.kind == SplitKind::Split) {
            cplx a1 = alpha(pf.primes_above[0]), a2 = alpha(pf.primes_above[1]);
            cplx pw = 1;
            for (size_t k = 1; k <= kmax; ++k) {
                pw *= a1;
                c[k] = pw + a2 * c[k - 1];
            }
        } else if (pf.kind == SplitKind::Ramified) {
            cplx al = alpha(pf.primes_above[0]);
            for (size_t k = 1; k <= kmax; ++k) c[k] = c[k - 1] * al;
        } else {
            cplx al = kmax >= 2 ? alpha(pf.primes_above[0]) : cplx(0, 0);
            for (size_t k = 2; k <= kmax; k += 2) c[k] = c[k - 2] * al;
        }
        pp = 1;
        for (size_t k = 1; k <= kmax; ++k) {
            pp *= p;
            a[pp] = c[k];
        }
    }
    for (i64 n = 2; n <= X; ++n) {
        i64 p = spf[n], m = n / p;
        pk[n] = (m % p == 0) ? pk[m] * static_cast<int>(p) : static_cast<int>(p);
        if (pk[n] != n) a[n] = a[pk[n]] * a[n / pk[n]];
    }
    return a;
}

cplx euler_product(const HeckeChar& lam, cplx s, i64 X)
{
    cplx r = 1;
    for (auto& P : lam.field().primes_upto(X)) {
        if (!lam.coprime_to_conductor(P.ideal)) continue;
        cplx lp = 1.0 / lam.eval(P.ideal);
        r /= (1.0 - lp * std::pow(static_cast<double>(P.norm()), -s));
    }
    return r;
}

LValue l_value(const HeckeChar& lam, cplx s, const LOptions& opt)
{
    LValue out;
    const QuadField& K = lam.field();
    cplx su = s + (lam.a() + lam.b()) / 2.0;
    if (su.real() > 1.5) {
        double sig = su.real();
        auto tail = [sig](double X) {
            return std::pow(X, 1 - sig) * (std::log(X) / (sig - 1) + 1 / ((sig - 1) * (sig - 1)) + 1.2 / (sig - 1));
        };
        i64 X = opt.bound;
        if (X == 0) {
            X = 1000;
            while (tail(static_cast<double>(X)) > 1e-13 && X < 2000000) X *= 2;
        }
        auto a = dirichlet_coefficients(lam, X);
        cplx full = 0;
        for (i64 n = 1; n <= X; ++n)
            if (a[n] != cplx(0, 0)) full += a[n] * std::exp(-su * std::log(static_cast<double>(n)));
        out.value = full;
        // sum over n > X of d(n) n^{-sigma} bounds the tail
        out.error = tail(static_cast<double>(X));
        out.method = "dirichlet";
        out.bound = X;
        return out;
    }
    if (su.imag() != 0) throw Error("l_value: complex s left of absolute convergence is not supported");
    if (is_trivial_char(lam)) throw Error("l_value: pole of the Dedekind zeta function; use Re(s) > 1");
    AfeData d;
    d.s = su.real();
    d.kappa = std::abs(lam.m()) / 2.0;
    double a1 = d.s + d.kappa, a2 = 1 - d.s + d.kappa;
    if (a1 <= 0 || a2 <= 0) throw Error("l_value: Gamma factor pole or outside the smoothed range");
    d.A = std::sqrt(static_cast<double>(std::abs(K.dF())) * conductor_norm(lam)) / (2 * M_PI);
    d.W = root_number(lam).value;
    double c1 = opt.cut, c2 = opt.cut * 1.15;
    i64 X = opt.bound ? opt.bound : std::max(afe_bound(d.A, a1, a2, c1), afe_bound(d.A, a1, a2, c2));
    d.a = dirichlet_coefficients(lam, 2 * X);
    cplx v1 = afe_sum(d, c1, X), v2 = afe_sum(d, c1, 2 * X), v3 = afe_sum(d, c2, X);
    out.value = v1;
    out.error = std::abs(v1 - v2) + std::abs(v1 - v3) + 1e-14 * (1 + std::abs(v1));
    out.method = "smoothed";
    out.bound = X;
    return out;
}

cplx afe_root_number(const HeckeChar& lam, double s_unitary)
{
    const QuadField& K = lam.field();
    AfeData d;
    d.s = s_unitary;
    d.kappa = std::abs(lam.m()) / 2.0;
    d.A = std::sqrt(static_cast<double>(std::abs(K.dF())) * conductor_norm(lam)) / (2 * M_PI);
    d.W = 0;
    double a1 = d.s + d.kappa, a2 = 1 - d.s + d.kappa;
    double c1 = 1.0, c2 = 1.3;
    i64 X = std::max(afe_bound(d.A, a1, a2, c1), afe_bound(d.A, a1, a2, c2));
    d.a = dirichlet_coefficients(lam, X);
    cplx A1, B1, A2, B2;
    afe_sum(d, c1, X, &A1, &B1);
    afe_sum(d, c2, X, &A2, &B2);
    double pref = std::pow(d.A, 1 - 2 * d.s) * std::tgamma(a2) / std::tgamma(a1);
    return (A1 - A2) / (pref * (B2 - B1));
}

LValue l_alg(const HeckeChar& lam, std::optional<cplx> Omega)
{
    if (!(lam.a() > 0 && lam.b() <= 0)) throw Error("l_alg: infinity type is not critical (need a > 0 >= b)");
    if (!Omega) throw Error("l_alg: Omega-dependent request in RATIO_MODE");
    double sd = std::sqrt(static_cast<double>(std::abs(lam.field().dF())));
    LValue L = l_value(lam, 0);
    cplx f = std::pow(*Omega, lam.b() - lam.a()) * std::pow(2 * M_PI / sd, -lam.b()) * std::tgamma(lam.a());
    L.value *= f;
    L.error *= std::abs(f);
    return L;
}

LValue l_alg_ratio(const HeckeChar& l1, const HeckeChar& l2)
{
    for (auto* l : {&l1, &l2})
        if (!(l->a() > 0 && l->b() <= 0)) throw Error("l_alg_ratio: infinity type is not critical (need a > 0 >= b)");
    if (l1.b() - l1.a() != l2.b() - l2.a()) throw Error("l_alg_ratio: the period does not cancel");
    double sd = std::sqrt(static_cast<double>(std::abs(l1.field().dF())));
    LValue L1 = l_value(l1, 0), L2 = l_value(l2, 0);
    cplx f = std::pow(2 * M_PI / sd, l2.b() - l1.b()) * std::tgamma(l1.a()) / std::tgamma(l2.a());
    LValue r;
    r.value = f * L1.value / L2.value;
    r.error = std::abs(r.value) * (L1.error / std::abs(L1.value) + L2.error / std::abs(L2.value));
    r.method = "ratio";
    r.bound = std::max(L1.bound, L2.bound);
    return r;
}

} // namespace qh
