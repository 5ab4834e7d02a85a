#include "qh/ray_class.hpp"

#include <algorithm>

namespace qh {

namespace {

i64 euler_phi_ideal(const std::vector<std::pair<PrimeIdeal, int>>& fac)
{
    i64 r = 1;
    for (auto& [P, e] : fac) r *= (P.norm() - 1) * ipow(P.norm(), e - 1);
    return r;
}

} // namespace

ResidueRing::ResidueRing(FieldPtr F, const IdealHNF& f) : F_(std::move(F)), f_(f)
{
    primes_ = F_->factor(f_);
    i64 target = euler_phi_ideal(primes_);
    i64 one = key({1, 0});
    std::vector<i64> cand;
    cand.reserve(target);
    for (i64 k = 0; k < f_.norm(); ++k)
        if (is_unit(elem(k))) cand.push_back(k);
    G_ = AbelianGroup(one, [this](i64 x, i64 y) { return key(mul(elem(x), elem(y))); }, cand, target);
}

std::vector<OElem> ResidueRing::generators() const
{
    std::vector<OElem> g;
    for (i64 k : G_.gen_keys()) g.push_back(elem(k));
    return g;
}

i64 ResidueRing::key(const OElem& u) const
{
    OElem r = F_->reduce(f_, u);
    return r.y * f_.a + r.x;
}

OElem ResidueRing::elem(i64 key) const { return {key % f_.a, key / f_.a}; }

bool ResidueRing::is_unit(const OElem& u) const
{
    for (auto& [P, e] : primes_)
        if (F_->contains(P.ideal, u)) return false;
    return true;
}

std::vector<i64> ResidueRing::dlog(const OElem& u) const
{
    if (!is_unit(u)) throw Error("dlog: element is not a unit modulo " + f_.str());
    return G_.dlog(key(u));
}

std::vector<OElem> ResidueRing::units() const
{
    std::vector<i64> ks = G_.keys();
    std::sort(ks.begin(), ks.end());
    std::vector<OElem> out;
    out.reserve(ks.size());
    for (i64 k : ks) out.push_back(elem(k));
    return out;
}

OElem ResidueRing::mul(const OElem& u, const OElem& v) const
{
    OElem a = reduce(u), b = reduce(v);
    i128 x = (i128)a.x * b.x - (i128)F_->n() * a.y * b.y;
    i128 y = (i128)a.x * b.y + (i128)b.x * a.y + (i128)F_->t() * a.y * b.y;
    return F_->reduce(f_, x, y);
}

RayClassGroup::RayClassGroup(FieldPtr F, const IdealHNF& f) : F_(std::move(F)), f_(f)
{
    R_ = std::make_unique<ResidueRing>(F_, f_);
    const QuadField& K = *F_;
    i64 h = K.class_number();
    i64 Nf = f_.norm();

    // class representatives with norm coprime to Nm(f)
    reps_.assign(h, IdealHNF{});
    std::vector<bool> have(h, false);
    int found = 0;
    int c0 = K.class_index({1, 0, 1});
    have[c0] = true;
    ++found;
    for (i64 X = 50; found < h; X *= 2) {
        for (auto& P : K.primes_upto(X)) {
            if (gcd(P.norm(), Nf) != 1) continue;
            int c = K.class_index(P.ideal);
            if (!have[c]) {
                have[c] = true;
                reps_[c] = P.ideal;
                ++found;
            }
        }
    }
    reps_inv_.resize(h);
    for (i64 c = 0; c < h; ++c) reps_inv_[c] = invmod(reps_[c].norm(), f_.a);

    unit_res_.clear();
    for (auto& u : K.units()) unit_res_.push_back(R_->reduce(u));
    {
        std::vector<i64> ks;
        for (auto& u : unit_res_) ks.push_back(R_->key(u));
        std::sort(ks.begin(), ks.end());
        unit_image_ = std::unique(ks.begin(), ks.end()) - ks.begin();
    }

    // R_c1 R_c2 = (gamma) R_{c1 c2}
    gamma_.assign(h, std::vector<i64>(h, 0));
    for (i64 c1 = 0; c1 < h; ++c1)
        for (i64 c2 = 0; c2 < h; ++c2) {
            IdealHNF P = K.mul(reps_[c1], reps_[c2]);
            int c = K.class_index(P);
            auto g = K.principal_test(K.mul(P, K.conj(reps_[c])));
            if (!g) throw Error("RayClassGroup: class representatives inconsistent");
            OElem r = R_->mul(*g, {reps_inv_[c] * 1, 0});
            gamma_[c1][c2] = R_->key(r);
        }

    i64 target = h * R_->unit_order() / unit_image_;
    std::vector<PrimeIdeal> pool;
    i64 X = 100;
    auto refill = [&]() {
        pool.clear();
        for (auto& P : K.primes_upto(X))
            if (P.kind == SplitKind::Split && gcd(P.norm(), Nf * K.dF()) == 1) pool.push_back(P);
        X *= 4;
    };
    refill();
    std::vector<IdealHNF> used;
    size_t pos = 0;
    G_ = AbelianGroup(key({1, 0, 1}), [this](i64 x, i64 y) { return mul_keys(x, y); },
        std::function<i64(i64)>([&](i64) {
            while (pos >= pool.size()) {
                size_t old = pool.size();
                refill();
                pos = old;
            }
            used.push_back(pool[pos].ideal);
            return key(pool[pos++].ideal);
        }),
        target);
    build_primes_ = used;

    // a prime ideal in each Smith generator class
    for (i64 gk : G_.gen_keys()) {
        bool ok = false;
        for (i64 Y = 100; !ok; Y *= 4) {
            for (auto& P : K.primes_upto(Y)) {
                if (gcd(P.norm(), Nf) != 1) continue;
                if (key(P.ideal) == gk) {
                    gen_primes_.push_back(P.ideal);
                    ok = true;
                    break;
                }
            }
            if (Y > 100000000) throw Error("RayClassGroup: no prime found in generator class");
        }
    }
}

i64 RayClassGroup::orbit_key(int c, const OElem& r) const
{
    i64 best = -1;
    for (auto& u : unit_res_) {
        i64 k = R_->key(R_->mul(u, r));
        if (best < 0 || k < best) best = k;
    }
    return static_cast<i64>(c) * f_.norm() + best;
}

i64 RayClassGroup::mul_keys(i64 x, i64 y) const
{
    i64 N = f_.norm();
    int c1 = static_cast<int>(x / N), c2 = static_cast<int>(y / N);
    OElem r1 = R_->elem(x % N), r2 = R_->elem(y % N);
    int c = F_->class_index(F_->mul(reps_[c1], reps_[c2]));
    OElem r = R_->mul(R_->mul(r1, r2), R_->elem(gamma_[c1][c2]));
    return orbit_key(c, r);
}

i64 RayClassGroup::key(const IdealHNF& I) const
{
    if (!F_->coprime(I, f_)) throw Error("ray class: ideal not coprime to the modulus");
    int c = F_->class_index(I);
    auto g = F_->principal_test(F_->mul(I, F_->conj(reps_[c])));
    if (!g) throw Error("ray class: principal test failed");
    OElem r = R_->mul(*g, {reps_inv_[c], 0});
    return orbit_key(c, r);
}

std::vector<i64> RayClassGroup::dlog(const IdealHNF& I) const { return G_.dlog(key(I)); }

IMat RayClassGroup::relations() const
{
    size_t k = G_.invariants().size();
    IMat M(k, std::vector<i64>(k, 0));
    for (size_t i = 0; i < k; ++i) M[i][i] = G_.invariants()[i];
    return M;
}

} // namespace qh
