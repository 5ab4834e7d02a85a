#include "qh/hecke_char.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qh {

namespace {

cplx cpow_int(cplx z, i64 e)
{
    if (e < 0) return 1.0 / cpow_int(z, -e);
    cplx r = 1;
    while (e > 0) {
        if (e & 1) r *= z;
        e >>= 1;
        if (e) z *= z;
    }
    return r;
}

cplx root_val(const RootU& r) { return std::polar(1.0, r.angle()); }

std::vector<IdealHNF> small_ideals(const QuadField& F, i64 B)
{
    std::vector<IdealHNF> out;
    for (i64 a = 1; a <= B; ++a)
        for (i64 c = 1; c * a <= B; ++c) {
            if (a % c) continue;
            for (i64 b = 0; b < a; b += c) {
                // omega (b + c omega) must lie in the lattice
                i128 r = -(i128)c * F.n() - (i128)b * (b / c + F.t());
                if (r % a == 0) out.push_back({a, b, c});
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

// enumerate exponent vectors in lexicographic order
template <class Fn>
bool for_each_exponent(const std::vector<i64>& orders, Fn fn)
{
    std::vector<i64> k(orders.size(), 0);
    for (;;) {
        if (fn(k)) return true;
        size_t i = orders.size();
        for (;;) {
            if (i == 0) return false;
            --i;
            if (++k[i] < orders[i]) break;
            k[i] = 0;
        }
    }
}

} // namespace

RootU residue_char(const ResidueRing& R, const std::vector<i64>& k, const OElem& x)
{
    auto dl = R.dlog(x);
    RootU s;
    for (size_t i = 0; i < dl.size(); ++i) s = s + RootU(mod128((i128)k[i] * dl[i], R.orders()[i]), R.orders()[i]);
    return s;
}

IdealHNF conductor_of(const ResidueRing& R, const EpsFn& eps)
{
    const QuadField& F = R.field();
    IdealHNF m = R.modulus(), cond{1, 0, 1};
    auto units = R.units();
    for (auto& [P, e] : R.primes()) {
        for (int ep = 0; ep <= e; ++ep) {
            IdealHNF mp = F.quotient(m, F.pow(P.ideal, e - ep));
            bool trivial = true;
            for (auto& u : units) {
                if (!F.contains(mp, {u.x - 1, u.y})) continue;
                if (!eps(u).is_one()) {
                    trivial = false;
                    break;
                }
            }
            if (trivial) {
                cond = F.mul(cond, F.pow(P.ideal, ep));
                break;
            }
        }
    }
    return cond;
}

HeckeChar HeckeChar::build(FieldPtr F, int a, int b, const IdealHNF& modulus,
                           const std::vector<RootU>& eps_gen_values,
                           const std::vector<i64>& class_value_choices)
{
    auto R = std::make_shared<ResidueRing>(F, modulus);
    if (eps_gen_values.size() != R->orders().size())
        throw Error("build_char: expected " + std::to_string(R->orders().size()) + " generator images");
    for (size_t i = 0; i < eps_gen_values.size(); ++i)
        if (!(eps_gen_values[i] * R->orders()[i]).is_one())
            throw Error("build_char: generator image order does not divide the generator order");
    std::vector<i64> k;
    for (size_t i = 0; i < eps_gen_values.size(); ++i)
        k.push_back(eps_gen_values[i].num * (R->orders()[i] / eps_gen_values[i].den));
    return from_parts(F, a, b, modulus, [R, k](const OElem& x) { return residue_char(*R, k, x); }, {},
                      class_value_choices);
}

HeckeChar HeckeChar::from_parts(FieldPtr F, int a, int b, const IdealHNF& modulus, const EpsFn& eps,
                                const std::function<cplx(const IdealHNF&)>& gen_value,
                                const std::vector<i64>& class_value_choices)
{
    HeckeChar L;
    L.F_ = F;
    L.a_ = a;
    L.b_ = b;
    const QuadField& K = *F;
    ResidueRing Rm(F, modulus);
    std::vector<RootU> vals;
    for (auto& g : Rm.generators()) vals.push_back(eps(g));
    std::vector<i64> km;
    for (size_t i = 0; i < vals.size(); ++i) km.push_back(vals[i].num * (Rm.orders()[i] / vals[i].den));
    EpsFn epsm = [&Rm, km](const OElem& x) { return residue_char(Rm, km, x); };
    L.cond_ = conductor_of(Rm, epsm);
    L.R_ = std::make_shared<ResidueRing>(F, L.cond_);

    IdealHNF rest{1, 0, 1};
    for (auto& [P, e] : Rm.primes())
        if (!K.divides(P.ideal, L.cond_)) rest = K.mul(rest, K.pow(P.ideal, e));
    OElem E1 = rest.is_one() ? OElem{1, 0} : K.crt_idempotent(L.cond_, rest);
    for (auto& g : L.R_->generators()) {
        OElem gE = K.mul(g, E1);
        OElem x = Rm.reduce({gE.x + 1 - E1.x, gE.y - E1.y});
        L.eps_gens_.push_back(epsm(x));
    }
    L.check_units();

    // class group generators coprime to the modulus, in the classes of the
    // field's Smith generators
    i64 Nm = modulus.norm();
    for (auto& cg : K.class_group()) {
        int target = K.class_index(cg.ideal);
        IdealHNF g;
        bool ok = false;
        for (i64 X = 50; !ok; X *= 2)
            for (auto& P : K.primes_upto(X)) {
                if (gcd(P.norm(), Nm) != 1) continue;
                if (K.class_index(P.ideal) == target) {
                    g = P.ideal;
                    ok = true;
                    break;
                }
            }
        L.cls_gens_.push_back(g);
        L.cls_orders_.push_back(cg.order);
    }
    for (size_t j = 0; j < L.cls_gens_.size(); ++j) {
        if (gen_value) {
            L.cls_vals_.push_back(gen_value(L.cls_gens_[j]));
            continue;
        }
        i64 n = L.cls_orders_[j];
        auto al = K.principal_test(K.pow(L.cls_gens_[j], n));
        if (!al) throw Error("class generator power is not principal");
        cplx v = L.eval_principal(QuadField::to_fe(*al));
        i64 ch = j < class_value_choices.size() ? class_value_choices[j] : 0;
        double r = std::pow(std::abs(v), 1.0 / static_cast<double>(n));
        double th = (std::arg(v) + 2.0 * std::numbers::pi * static_cast<double>(ch)) / static_cast<double>(n);
        L.cls_vals_.push_back(std::polar(r, th));
    }
    return L;
}

HeckeChar HeckeChar::trivial(FieldPtr F) { return from_parts(F, 0, 0, {1, 0, 1}, [](const OElem&) { return RootU(); }); }

HeckeChar HeckeChar::norm_power(FieldPtr F, int k) { return trivial(F).twist_norm(k); }

void HeckeChar::check_units() const
{
    OElem u = F_->unit_gen();
    RootU need(b_ - a_, F_->num_units());
    if (eps(u) != need)
        throw Error("inconsistent eps: eps(u) u^a ubar^b != 1 for the unit generator (eps(u) = " + eps(u).str() +
                    ", required " + need.str() + ")");
}

RootU HeckeChar::eps(const OElem& x) const
{
    RootU s;
    if (!R_->is_unit(x)) throw Error("eps: argument not coprime to the conductor");
    auto dl = R_->dlog(x);
    for (size_t i = 0; i < dl.size(); ++i) s = s + eps_gens_[i] * dl[i];
    return s;
}

RootU HeckeChar::eps(const FieldElement& x) const
{
    mpz_class d;
    mpz_lcm(d.get_mpz_t(), x.x.get_den_mpz_t(), x.y.get_den_mpz_t());
    mpz_class X(mpq_class(x.x * d)), Y(mpq_class(x.y * d)), A(static_cast<long>(cond_.a));
    mpz_class xm = X % A, ym = Y % A, dm = d % A;
    return eps(F_->reduce(cond_, xm.get_si(), ym.get_si())) - eps(OElem{dm.get_si(), 0});
}

cplx HeckeChar::eval_principal(const FieldElement& beta) const
{
    cplx z = F_->embed(beta);
    return root_val(eps(beta)) * cpow_int(z, a_) * cpow_int(std::conj(z), b_);
}

cplx HeckeChar::eval(const IdealHNF& I) const
{
    if (!coprime_to_conductor(I)) throw Error("eval: ideal " + I.str() + " not coprime to the conductor " + cond_.str());
    const QuadField& K = *F_;
    const auto& e = K.class_dlog(I);
    IdealHNF J = I;
    for (size_t j = 0; j < e.size(); ++j)
        if (e[j]) J = K.mul(J, K.pow(K.conj(cls_gens_[j]), e[j]));
    auto bp = K.principal_test(J);
    if (!bp) throw Error("eval: class bookkeeping failed");
    cplx z = K.embed(*bp);
    RootU ep = eps(*bp);
    cplx val = cpow_int(z, a_) * cpow_int(std::conj(z), b_);
    for (size_t j = 0; j < e.size(); ++j) {
        if (!e[j]) continue;
        i64 N = cls_gens_[j].norm();
        ep = ep - eps(OElem{N, 0}) * e[j];
        val *= cpow_int(cls_vals_[j], e[j]) / std::pow(static_cast<double>(N), static_cast<double>((a_ + b_) * e[j]));
    }
    return root_val(ep) * val;
}

cplx HeckeChar::eval_unitary(const IdealHNF& I) const
{
    return eval(I) / std::pow(static_cast<double>(I.norm()), (a_ + b_) / 2.0);
}

int HeckeChar::cond_exponent(const PrimeIdeal& P) const { return F_->ord(P, cond_); }

RootU HeckeChar::eps_local(const PrimeIdeal& P, const OElem& x) const
{
    int e = cond_exponent(P);
    if (e == 0) return RootU();
    const QuadField& K = *F_;
    IdealHNF Q = K.pow(P.ideal, e), rest = K.quotient(cond_, Q);
    OElem E = rest.is_one() ? OElem{1, 0} : K.crt_idempotent(Q, rest);
    OElem xE = K.mul(K.reduce(cond_, x), E);
    return eps(OElem{xE.x + 1 - E.x, xE.y - E.y});
}

cplx HeckeChar::idelic_at(const PrimeIdeal& P, const OElem& pi) const
{
    const QuadField& K = *F_;
    if (K.ord(P, pi) != 1) throw Error("idelic_at: element is not a uniformizer");
    cplx z = K.embed(pi);
    cplx v = cpow_int(z, -a_) * cpow_int(std::conj(z), -b_);
    RootU s;
    for (auto& [Q, e] : K.factor(cond_))
        if (!(Q == P)) s = s - eps_local(Q, pi);
    IdealHNF rest = K.quotient(K.principal(pi), P.ideal);
    return v * root_val(s) * eval(rest);
}

HeckeChar HeckeChar::conj_c() const
{
    HeckeChar self = *this;
    const QuadField& K = *F_;
    return from_parts(F_, b_, a_, K.conj(cond_), [self, &K](const OElem& x) { return self.eps(K.conj(x)); },
                      [self, &K](const IdealHNF& g) { return self.eval(K.conj(g)); });
}

HeckeChar HeckeChar::star() const
{
    HeckeChar self = *this;
    const QuadField& K = *F_;
    return from_parts(F_, 1 - b_, 1 - a_, K.conj(cond_), [self, &K](const OElem& x) { return -self.eps(K.conj(x)); },
                      [self, &K](const IdealHNF& g) { return static_cast<double>(g.norm()) / self.eval(K.conj(g)); });
}

HeckeChar HeckeChar::inverse() const
{
    HeckeChar self = *this;
    return from_parts(F_, -a_, -b_, cond_, [self](const OElem& x) { return -self.eps(x); },
                      [self](const IdealHNF& g) { return 1.0 / self.eval(g); });
}

HeckeChar HeckeChar::operator*(const HeckeChar& o) const
{
    if (F_->D() != o.F_->D()) throw Error("character product: different fields");
    HeckeChar x = *this, y = o;
    IdealHNF m = F_->intersect_lcm(cond_, o.cond_);
    return from_parts(F_, a_ + o.a_, b_ + o.b_, m, [x, y](const OElem& u) { return x.eps(u) + y.eps(u); },
                      [x, y](const IdealHNF& g) { return x.eval(g) * y.eval(g); });
}

HeckeChar HeckeChar::twist_norm(int k) const
{
    HeckeChar self = *this;
    return from_parts(F_, a_ + k, b_ + k, cond_, [self](const OElem& x) { return self.eps(x); },
                      [self, k](const IdealHNF& g) { return self.eval(g) * std::pow(static_cast<double>(g.norm()), k); });
}

std::string HeckeChar::describe() const
{
    std::ostringstream os;
    os << "D=" << F_->D() << " type=(" << a_ << "," << b_ << ") conductor=" << cond_.str() << " eps=[";
    for (size_t i = 0; i < eps_gens_.size(); ++i) os << (i ? "," : "") << eps_gens_[i].str();
    os << "]";
    return os.str();
}

bool same_character(const HeckeChar& x, const HeckeChar& y, int n_ideals, double tol)
{
    if (x.a() != y.a() || x.b() != y.b()) return false;
    const QuadField& K = x.field();
    int n = 0;
    for (auto& I : small_ideals(K, 400)) {
        if (!x.coprime_to_conductor(I) || !y.coprime_to_conductor(I)) continue;
        cplx u = x.eval(I), v = y.eval(I);
        if (std::abs(u - v) > tol * std::max(1.0, std::abs(u))) return false;
        if (++n >= n_ideals) break;
    }
    return true;
}

// ---------------------------------------------------------------- constructions

namespace {

i64 count_points(i64 p, i64 A, i64 B) // y^2 = x^3 + A x + B over F_p
{
    i64 s = p + 1;
    for (i64 x = 0; x < p; ++x) s += kronecker(mod(x * x % p * x + A * x + B, p), p);
    return s;
}

} // namespace

HeckeChar construct_greenchar(FieldPtr F, int k)
{
    const QuadField& K = *F;
    if (k < 1) throw Error("greenchar: k must be positive");
    IdealHNF f = K.different();
    if (K.dF() % 2 == 0 || K.D() == 3) f = K.mul(f, K.principal_int(2));

    if (K.D() == 1 || K.D() == 3) {
        if (k != 1) throw Error("greenchar: for D = 1, 3 only k = 1 is available");
        // inverse of the Groessencharacter of y^2 = x^3 + x, resp. y^2 = x^3 + 1
        i64 A = K.D() == 1 ? 1 : 0, B = K.D() == 1 ? 0 : 1;
        auto R = std::make_shared<ResidueRing>(F, f);
        auto units = R->units();
        std::optional<HeckeChar> found;
        for_each_exponent(R->orders(), [&](const std::vector<i64>& kk) {
            EpsFn e = [R, kk](const OElem& x) { return residue_char(*R, kk, x); };
            if (e(K.unit_gen()) != RootU(-1, K.num_units())) return false;
            for (auto& u : units)
                if (!(e(u) + e(K.conj(u))).is_one()) return false;
            if (conductor_of(*R, e) != f) return false;
            HeckeChar L = HeckeChar::from_parts(F, 1, 0, f, e);
            for (auto& P : K.primes_upto(300)) {
                if (P.kind != SplitKind::Split || P.index != 0 || P.p <= 3) continue;
                cplx ap = L.eval(P.ideal) + L.eval(K.conj(P.ideal));
                double want = static_cast<double>(P.p + 1 - count_points(P.p, A, B));
                if (std::abs(ap - want) > 1e-6) return false;
            }
            found = L;
            return true;
        });
        if (!found) throw Error("greenchar: no character matches the CM curve");
        return *found;
    }

    // odd ramified primes: quadratic character of the residue field
    std::vector<std::pair<PrimeIdeal, int>> fac = K.factor(f);
    std::shared_ptr<ResidueRing> R2;
    std::vector<i64> k2;
    IdealHNF Q2{1, 0, 1};
    for (auto& [P, e] : fac) {
        if (P.p != 2) continue;
        Q2 = K.pow(P.ideal, e);
        R2 = std::make_shared<ResidueRing>(F, Q2);
        i64 odd = K.dF();
        while (odd % 2 == 0) odd /= 2;
        auto chi2 = [&](i64 n) { // 2-part of the Kronecker character at odd n
            i64 m = n;
            while (mod(m, odd) != 1 % odd) m += 1024;
            return kronecker(-K.dF(), m);
        };
        auto units = R2->units();
        bool ok = for_each_exponent(R2->orders(), [&](const std::vector<i64>& kk) {
            EpsFn e2 = [R2, kk](const OElem& x) { return residue_char(*R2, kk, x); };
            for (i64 n = 1; n < 4 * Q2.a; n += 2)
                if (e2({n, 0}) != RootU(chi2(n) == 1 ? 0 : 1, 2)) return false;
            for (auto& u : units)
                if (!(e2(u) + e2(K.conj(u))).is_one()) return false;
            if (conductor_of(*R2, e2) != Q2) return false;
            k2 = kk;
            return true;
        });
        if (!ok) throw Error("greenchar: no admissible character at 2");
    }
    std::vector<PrimeIdeal> odd_primes;
    for (auto& [P, e] : fac)
        if (P.p != 2) odd_primes.push_back(P);
    const QuadField* Kp = &K;
    EpsFn eps = [Kp, odd_primes, R2, k2, Q2](const OElem& x) {
        RootU s;
        for (auto& P : odd_primes) {
            OElem r = Kp->reduce(P.ideal, x);
            s = s + RootU(kronecker(r.x, P.p) == 1 ? 0 : 1, 2);
        }
        if (R2) s = s + residue_char(*R2, k2, Kp->reduce(Q2, x));
        return s;
    };
    return HeckeChar::from_parts(F, k, 1 - k, f, eps);
}

HeckeChar construct_minram(FieldPtr F, const PrimeIdeal& q)
{
    if (q.p < 5) throw Error("minram: q >= 5 required (the prime must separate the roots of unity)");
    auto R = std::make_shared<ResidueRing>(F, q.ideal);
    if (R->orders().size() != 1) throw Error("minram: residue group not cyclic");
    i64 N = R->orders()[0];
    i64 j = R->dlog(F->unit_gen())[0];
    RootU need(-1, F->num_units());
    for (i64 k = 0; k < N; ++k)
        if (RootU(mod128((i128)k * j, N), N) == need) return HeckeChar::build(F, 1, 0, q.ideal, {RootU(k, N)});
    throw Error("minram: no extension of the unit character");
}

std::optional<HeckeChar> construct_anticyclotomic(FieldPtr F, i64 Q, int n, i64 order)
{
    const QuadField& K = *F;
    if (K.split_prime(Q).kind != SplitKind::Inert) throw Error("anticyclotomic: Q must be inert");
    IdealHNF f = K.principal_int(ipow(Q, n));
    auto R = std::make_shared<ResidueRing>(F, f);
    auto units = R->units();
    i64 best_order = 0;
    std::vector<i64> best;
    for_each_exponent(R->orders(), [&](const std::vector<i64>& kk) {
        EpsFn e = [R, kk](const OElem& x) { return residue_char(*R, kk, x); };
        i64 ord = 1;
        for (size_t i = 0; i < kk.size(); ++i) ord = lcm(ord, R->orders()[i] / gcd(kk[i], R->orders()[i]));
        if (ord == 1 || ord % 2 == 0) return false;
        if (order && ord != order) return false;
        if (!order && best_order && ord >= best_order) return false;
        if (!e(K.unit_gen()).is_one()) return false;
        for (i64 z = 1; z < f.a; ++z)
            if (z % Q && !e({z, 0}).is_one()) return false;
        if (conductor_of(*R, e) != f) return false;
        best_order = ord;
        best = kk;
        return order != 0;
    });
    if (!best_order) return std::nullopt;
    std::vector<RootU> vals;
    for (size_t i = 0; i < best.size(); ++i) vals.push_back(RootU(best[i], R->orders()[i]));
    return HeckeChar::build(F, 0, 0, f, vals);
}

RestrictionResult restrict_to_Q_class(const HeckeChar& lam, int nprimes)
{
    const QuadField& K = lam.field();
    RestrictionResult res;
    // hypotheses
    bool star_sym = true, anti = lam.a() + lam.b() == 0;
    int n = 0;
    for (auto& I : small_ideals(K, 200)) {
        if (!lam.coprime_to_conductor(I) || !lam.coprime_to_conductor(K.conj(I))) continue;
        cplx u = lam.eval(I), v = lam.eval(K.conj(I));
        if (std::abs(u * v - static_cast<double>(I.norm())) > 1e-8 * I.norm()) star_sym = false;
        double s = std::pow(static_cast<double>(I.norm()), (lam.a() + lam.b()) / 2.0);
        if (std::abs(v / s - std::conj(u / s)) > 1e-8) anti = false;
        if (++n >= 50) break;
    }
    if (star_sym)
        res.hypothesis = "lambda* = lambda";
    else if (anti)
        res.hypothesis = "unitary with lambda^c = conj(lambda)";
    else
        throw Error("restrict_to_Q_class: character is neither star-symmetric nor unitary anticyclotomic");

    int w = lam.a() + lam.b();
    res.norm_power = w;
    bool triv = true, omega = true;
    int cnt = 0;
    for (i64 q = 2; cnt < nprimes; q = next_prime(q)) {
        if (gcd(q, lam.conductor().norm() * K.dF()) != 1) continue;
        cplx v = lam.eval(K.principal_int(q)) / std::pow(static_cast<double>(q), w);
        if (std::abs(v - 1.0) > 1e-8) triv = false;
        if (std::abs(v - static_cast<double>(kronecker(-K.dF(), q))) > 1e-8) omega = false;
        ++cnt;
    }
    // archimedean sign: lambda_inf(-1) = (-1)^{a+b} must match omega_inf(-1) = -1
    bool odd = (w % 2) != 0;
    if (triv && !odd)
        res.kind = QRestriction::Trivial;
    else if (omega && odd)
        res.kind = QRestriction::OmegaFQ;
    else
        throw Error("restrict_to_Q_class: restriction is not of the expected form");
    return res;
}

mpq_class ord_p_of_value(const HeckeChar& lam, const PrimeIdeal& P, const IdealHNF& J)
{
    const QuadField& K = lam.field();
    if (P.kind == SplitKind::Ramified) throw Error("ord_p_of_value: ramified p not supported");
    if (lam.conductor().norm() % P.p == 0) throw Error("ord_p_of_value: p divides the conductor");
    IdealHNF Pb = K.conj(P.ideal);
    PrimeIdeal Pbar = P;
    Pbar.ideal = Pb;
    int op = K.ord(P, J), opb = K.ord(Pbar, J);
    if (P.kind == SplitKind::Inert) return mpq_class(-(lam.a() + lam.b()) * op);
    return mpq_class(-lam.a() * op - lam.b() * opb);
}

mpq_class ord_p_class_number_trick(const HeckeChar& lam, const PrimeIdeal& P, const IdealHNF& J)
{
    const QuadField& K = lam.field();
    if (P.kind == SplitKind::Ramified) throw Error("ord_p_of_value: ramified p not supported");
    mpq_class total = 0;
    for (auto& [Q, e] : K.factor(J)) {
        // smallest h with Q^h principal
        i64 h = 1;
        IdealHNF Qh = Q.ideal;
        std::optional<OElem> al;
        while (!(al = K.principal_test(Qh))) {
            ++h;
            Qh = K.mul(Qh, Q.ideal);
        }
        // lambda(pi_Q)^h = root of unity * alpha^{-a} conj(alpha)^{-b}
        int oa = K.ord(P, *al), ob = K.ord(P, K.conj(*al));
        total += mpq_class(static_cast<long>(e) * (-lam.a() * oa - lam.b() * ob), static_cast<unsigned long>(h));
    }
    total.canonicalize();
    return total;
}

} // namespace qh
