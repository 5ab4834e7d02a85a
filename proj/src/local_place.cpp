#include "qh/local_place.hpp"

#include <cmath>

namespace qh {

namespace {

i64 mpz_mod_i64(const mpz_class& x, i64 m)
{
    mpz_class r = x % mpz_class(static_cast<long>(m));
    if (r < 0) r += mpz_class(static_cast<long>(m));
    return r.get_si();
}

int mpz_vp(mpz_class n, i64 p)
{
    if (n == 0) throw Error("valuation of zero");
    int v = 0;
    mpz_class P(static_cast<long>(p));
    while (mpz_divisible_p(n.get_mpz_t(), P.get_mpz_t())) {
        n /= P;
        ++v;
    }
    return v;
}

FieldElement fe_pow(const QuadField& K, FieldElement x, int k)
{
    FieldElement r{1, 0};
    if (k < 0) {
        x = K.inverse(x);
        k = -k;
    }
    while (k) {
        if (k & 1) r = K.mul(r, x);
        x = K.mul(x, x);
        k >>= 1;
    }
    return r;
}

} // namespace

SplitElem split_elem(const FieldElement& x)
{
    SplitElem s;
    mpz_lcm(s.den.get_mpz_t(), x.x.get_den_mpz_t(), x.y.get_den_mpz_t());
    s.X = mpz_class(mpq_class(x.x * s.den));
    s.Y = mpz_class(mpq_class(x.y * s.den));
    return s;
}

LocalPlace::LocalPlace(FieldPtr F, const PrimeIdeal& P, const IdealHNF& avoid)
    : F_(std::move(F)), P_(P)
{
    const QuadField& K = *F_;
    d_ = K.ord(P_, K.different());
    auto ok = [&](const OElem& c) {
        if (c.is_zero() || K.ord(P_, c) != 1) return false;
        IdealHNF rest = K.quotient(K.principal(c), P_.ideal);
        return K.coprime(rest, avoid) && K.ord(P_, rest) == 0;
    };
    bool found = false;
    if (P_.kind != SplitKind::Ramified && ok(OElem{P_.p, 0})) {
        pi_ = {P_.p, 0};
        found = true;
    }
    for (i64 r = 1; !found && r < 200; ++r)
        for (i64 y = 0; y <= r && !found; ++y)
            for (i64 x : {r, -r}) {
                OElem c{x, y};
                if (ok(c)) {
                    pi_ = c;
                    found = true;
                    break;
                }
            }
    if (!found) throw Error("LocalPlace: no uniformizer found");
    pi_fe_ = QuadField::to_fe(pi_);
    pi_inv_ = K.inverse(pi_fe_);
}

IdealHNF LocalPlace::power(int E) const { return F_->pow(P_.ideal, E); }

int LocalPlace::ord_int(const mpz_class& X, const mpz_class& Y) const
{
    if (X == 0 && Y == 0) throw Error("valuation of zero");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
    int v = P_.e * mpz_vp(g, P_.p);
    if (P_.kind == SplitKind::Inert) return v;
    mpz_class X0 = X / g, Y0 = Y / g;
    i64 a = P_.ideal.a;
    if (!F_->reduce(P_.ideal, mpz_mod_i64(X0, a), mpz_mod_i64(Y0, a)).is_zero()) return v;
    if (P_.kind == SplitKind::Ramified) return v + 1;
    mpz_class t(static_cast<long>(F_->t())), n(static_cast<long>(F_->n()));
    mpz_class N = X0 * X0 + t * X0 * Y0 + n * Y0 * Y0;
    return v + mpz_vp(N, P_.p);
}

int LocalPlace::ord(const FieldElement& x) const
{
    SplitElem s = split_elem(x);
    return ord_int(s.X, s.Y) - P_.e * mpz_vp(s.den, P_.p);
}

FieldElement LocalPlace::shift(const FieldElement& x, int k) const
{
    if (k == 0) return x;
    return F_->mul(x, fe_pow(*F_, k > 0 ? pi_fe_ : pi_inv_, std::abs(k)));
}

OElem LocalPlace::unit_residue(const FieldElement& x, int E) const
{
    if (E <= 0) return {1, 0};
    const QuadField& K = *F_;
    FieldElement u = shift(x, -ord(x));
    SplitElem s = split_elem(u);
    i64 p = P_.p;
    int t = mpz_vp(s.den, p);
    mpz_class pt;
    mpz_ui_pow_ui(pt.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(t));
    mpz_class dprime = s.den / pt;
    IdealHNF PE = power(E);
    i64 aE = PE.a;
    if (P_.kind == SplitKind::Split) {
        IdealHNF Q = power(E + t);
        i64 r = K.reduce(Q, mpz_mod_i64(s.X, Q.a), mpz_mod_i64(s.Y, Q.a)).x;
        i64 ptl = ipow(p, t);
        if (r % ptl != 0) throw Error("unit_residue: element is not a unit");
        r /= ptl;
        i64 inv = invmod(mpz_mod_i64(dprime, aE), aE);
        return K.reduce(PE, (i128)r * inv, 0);
    }
    if (!mpz_divisible_p(s.X.get_mpz_t(), pt.get_mpz_t()) || !mpz_divisible_p(s.Y.get_mpz_t(), pt.get_mpz_t()))
        throw Error("unit_residue: element is not a unit");
    i64 X = mpz_mod_i64(s.X / pt, aE), Y = mpz_mod_i64(s.Y / pt, aE);
    i64 inv = invmod(mpz_mod_i64(dprime, aE), aE);
    return K.reduce(PE, (i128)X * inv, (i128)Y * inv);
}

RootU LocalPlace::additive(const FieldElement& x) const
{
    SplitElem s = split_elem(x);
    i64 p = P_.p;
    int t = mpz_vp(s.den, p);
    if (t == 0) return RootU();
    i64 pt = ipow(p, t);
    mpz_class ptz(static_cast<long>(pt));
    i64 inv = invmod(mpz_mod_i64(s.den / ptz, pt), pt);
    i64 r;
    if (P_.kind == SplitKind::Split) {
        IdealHNF Q = power(t);
        r = F_->reduce(Q, mpz_mod_i64(s.X, Q.a), mpz_mod_i64(s.Y, Q.a)).x;
    } else {
        mpz_class tr = 2 * s.X + mpz_class(static_cast<long>(F_->t())) * s.Y;
        r = mpz_mod_i64(tr, pt);
    }
    return RootU(-mod128((i128)r * inv, pt), pt);
}

cplx LocalChar::operator()(const LocalPlace& v, const FieldElement& x) const
{
    int k = v.ord(x);
    cplx r = std::pow(at_pi, k);
    if (cond > 0 && unit) r *= std::polar(1.0, on_unit(v, v.shift(x, -k)).angle());
    return r;
}

LocalChar LocalChar::from_residue(std::shared_ptr<const ResidueRing> R, const std::vector<i64>& k, cplx at_pi)
{
    LocalChar c;
    auto fac = R->field().factor(R->modulus());
    c.cond = fac.empty() ? 0 : fac[0].second;
    c.at_pi = at_pi;
    c.unit = [R, k](const OElem& u) { return residue_char(*R, k, u); };
    return c;
}

LocalChar LocalChar::of(const HeckeChar& lam, const LocalPlace& v)
{
    LocalChar c;
    c.cond = lam.cond_exponent(v.prime());
    c.at_pi = lam.idelic_at(v.prime(), v.uniformizer());
    if (c.cond > 0) {
        HeckeChar l = lam;
        PrimeIdeal P = v.prime();
        c.unit = [l, P](const OElem& u) { return l.eps_local(P, u); };
    }
    return c;
}

LocalChar LocalChar::inverse() const
{
    LocalChar c;
    c.cond = cond;
    c.at_pi = 1.0 / at_pi;
    if (unit) {
        auto f = unit;
        c.unit = [f](const OElem& u) { return -f(u); };
    }
    return c;
}

LocalChar LocalChar::operator*(const LocalChar& o) const
{
    LocalChar c;
    c.cond = std::max(cond, o.cond);
    c.at_pi = at_pi * o.at_pi;
    auto f = unit, g = o.unit;
    int cf = cond, cg = o.cond;
    if (f || g) {
        // residues are taken mod P^max; reduce for the smaller factor
        c.unit = [f, g, cf, cg](const OElem& u) {
            RootU r;
            if (f && cf > 0) r = r + f(u);
            if (g && cg > 0) r = r + g(u);
            return r;
        };
    }
    return c;
}

int LocalChar::exact_conductor(const LocalPlace& v) const
{
    if (cond == 0 || !unit) return 0;
    ResidueRing R(v.field_ptr(), v.power(cond));
    auto us = R.units();
    for (int j = 0; j < cond; ++j) {
        IdealHNF Pj = v.power(j);
        bool triv = true;
        for (auto& u : us) {
            if (j > 0 && !v.field().contains(Pj, OElem{u.x - 1, u.y})) continue;
            if (!unit(u).is_one()) {
                triv = false;
                break;
            }
        }
        if (triv) return j;
    }
    return cond;
}

} // namespace qh
