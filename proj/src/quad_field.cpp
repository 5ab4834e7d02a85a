#include "qh/quad_field.hpp"
#include "qh/abelian.hpp"

#include <algorithm>
#include <cmath>

namespace qh {

std::string IdealHNF::str() const
{
    return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

std::array<i64, 3> reduce_form(i64 A, i64 B, i64 C)
{
    for (;;) {
        // B into (-A, A]
        i64 k = fdiv(A - B, 2 * A);
        C = A * k * k + B * k + C;
        B = B + 2 * A * k;
        if (A > C) {
            std::swap(A, C);
            B = -B;
            continue;
        }
        if (A == C && B < 0) B = -B;
        return {A, B, C};
    }
}

std::vector<std::array<i64, 3>> reduced_forms(i64 disc)
{
    // disc < 0
    i64 d = -disc;
    std::vector<std::array<i64, 3>> out;
    for (i64 A = 1; 3 * A * A <= d; ++A)
        for (i64 B = -A + 1; B <= A; ++B) {
            i64 num = B * B + d;
            if (num % (4 * A)) continue;
            i64 C = num / (4 * A);
            if (C < A) continue;
            if (C == A && B < 0) continue;
            if (gcd(gcd(A, B), C) != 1) continue;
            out.push_back({A, B, C});
        }
    std::sort(out.begin(), out.end());
    return out;
}

QuadField::QuadField(i64 D) : D_(D)
{
    if (D < 1 || !is_squarefree(D)) throw Error("make_field: D must be a squarefree positive integer");
    if (mod(-D, 4) == 1) {
        dF_ = D;
        t_ = 1;
        n_ = (1 + D) / 4;
    } else {
        dF_ = 4 * D;
        t_ = 0;
        n_ = D;
    }
    w_ = D == 1 ? 4 : (D == 3 ? 6 : 2);
    diff_ = principal({-t_, 2});
    build_class_group();
}

FieldPtr make_field(i64 D) { return std::make_shared<const QuadField>(D); }

OElem QuadField::unit_gen() const
{
    if (D_ == 1 || D_ == 3) return {0, 1};
    return {-1, 0};
}

std::vector<OElem> QuadField::units() const
{
    std::vector<OElem> u;
    OElem x{1, 0}, g = unit_gen();
    for (int i = 0; i < w_; ++i) {
        u.push_back(x);
        x = mul(x, g);
    }
    return u;
}

OElem QuadField::mul(const OElem& u, const OElem& v) const
{
    i128 x = (i128)u.x * v.x - (i128)n_ * u.y * v.y;
    i128 y = (i128)u.x * v.y + (i128)v.x * u.y + (i128)t_ * u.y * v.y;
    const i128 lim = (i128)1 << 62;
    if (x > lim || x < -lim || y > lim || y < -lim) throw Error("element overflow");
    return {static_cast<i64>(x), static_cast<i64>(y)};
}

i64 QuadField::norm(const OElem& u) const
{
    i128 r = (i128)u.x * u.x + (i128)t_ * u.x * u.y + (i128)n_ * u.y * u.y;
    return static_cast<i64>(r);
}

OElem QuadField::pow(OElem u, i64 e) const
{
    OElem r{1, 0};
    while (e > 0) {
        if (e & 1) r = mul(r, u);
        e >>= 1;
        if (e) u = mul(u, u);
    }
    return r;
}

std::complex<double> QuadField::embed(const OElem& u) const
{
    double im = std::sqrt(static_cast<double>(4 * n_ - t_ * t_)) / 2.0;
    return {static_cast<double>(u.x) + static_cast<double>(u.y) * t_ / 2.0, static_cast<double>(u.y) * im};
}

std::complex<double> QuadField::embed(const FieldElement& u) const
{
    double im = std::sqrt(static_cast<double>(4 * n_ - t_ * t_)) / 2.0;
    double y = u.y.get_d();
    return {u.x.get_d() + y * t_ / 2.0, y * im};
}

FieldElement QuadField::mul(const FieldElement& u, const FieldElement& v) const
{
    mpq_class n(static_cast<long>(n_)), t(static_cast<long>(t_));
    return {u.x * v.x - n * u.y * v.y, u.x * v.y + v.x * u.y + t * u.y * v.y};
}

FieldElement QuadField::conj(const FieldElement& u) const
{
    return {u.x + mpq_class(static_cast<long>(t_)) * u.y, -u.y};
}

mpq_class QuadField::norm(const FieldElement& u) const
{
    mpq_class n(static_cast<long>(n_)), t(static_cast<long>(t_));
    return u.x * u.x + t * u.x * u.y + n * u.y * u.y;
}

FieldElement QuadField::inverse(const FieldElement& u) const
{
    mpq_class N = norm(u);
    if (N == 0) throw Error("inverse of zero");
    FieldElement c = conj(u);
    return {c.x / N, c.y / N};
}

IdealHNF QuadField::hnf(std::vector<OElem> gens) const
{
    // Z-span of gens and omega*gens
    std::vector<std::array<i128, 2>> rows;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        rows.push_back({g.x, g.y});
        OElem w = mul(g, {0, 1});
        rows.push_back({w.x, w.y});
    }
    if (rows.empty()) throw Error("zero ideal");
    i128 px = 0, py = 0, a = 0;
    auto red = [&](i128 v) {
        if (a == 0) return v;
        v %= a;
        return v;
    };
    for (auto& r : rows) {
        i128 x = r[0], y = r[1];
        if (y == 0) {
            a = gcd(static_cast<i64>(a), static_cast<i64>(red(x)));
            px = red(px);
            continue;
        }
        if (py == 0) {
            px = x;
            py = y;
            continue;
        }
        i64 u, v;
        i64 g = xgcd(static_cast<i64>(py), static_cast<i64>(y), u, v);
        i128 nx = u * px + v * x;
        i128 zx = (y / g) * px - (py / g) * x; // y-component vanishes
        px = nx;
        py = g;
        a = gcd(static_cast<i64>(a), static_cast<i64>(red(zx)));
        px = red(px);
    }
    if (py < 0) {
        py = -py;
        px = -px;
    }
    if (a == 0 || py == 0) throw Error("hnf: lattice is not of full rank");
    IdealHNF I{static_cast<i64>(a), mod128(px, static_cast<i64>(a)), static_cast<i64>(py)};
    if (I.a % I.c || I.b % I.c) throw Error("hnf: not an ideal");
    return I;
}

IdealHNF QuadField::mul(const IdealHNF& I, const IdealHNF& J) const
{
    OElem u1{I.a, 0}, v1{I.b, I.c}, u2{J.a, 0}, v2{J.b, J.c};
    return hnf({mul(u1, u2), mul(u1, v2), mul(v1, u2), mul(v1, v2)});
}

IdealHNF QuadField::pow(const IdealHNF& I, i64 e) const
{
    IdealHNF r{1, 0, 1}, b = I;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

IdealHNF QuadField::conj(const IdealHNF& I) const
{
    return hnf({conj(OElem{I.a, 0}), conj(OElem{I.b, I.c})});
}

IdealHNF QuadField::add(const IdealHNF& I, const IdealHNF& J) const
{
    return hnf({{I.a, 0}, {I.b, I.c}, {J.a, 0}, {J.b, J.c}});
}

IdealHNF QuadField::intersect_lcm(const IdealHNF& I, const IdealHNF& J) const
{
    return quotient(mul(I, J), add(I, J));
}

bool QuadField::contains(const IdealHNF& I, const OElem& u) const
{
    if (u.y % I.c) return false;
    i128 k = u.y / I.c;
    return ((i128)u.x - k * I.b) % I.a == 0;
}

bool QuadField::divides(const IdealHNF& I, const IdealHNF& J) const
{
    return contains(I, {J.a, 0}) && contains(I, {J.b, J.c});
}

IdealHNF QuadField::quotient(const IdealHNF& J, const IdealHNF& I) const
{
    IdealHNF K = mul(J, conj(I));
    i64 N = I.norm();
    if (K.a % N || K.b % N || K.c % N) throw Error("quotient: ideal does not divide");
    return {K.a / N, K.b / N, K.c / N};
}

OElem QuadField::reduce(const IdealHNF& I, i128 x, i128 y) const
{
    i128 yr = y % I.c;
    if (yr < 0) yr += I.c;
    i128 k = (y - yr) / I.c;
    i128 xr = (x - k * I.b) % I.a;
    if (xr < 0) xr += I.a;
    return {static_cast<i64>(xr), static_cast<i64>(yr)};
}

PrimeFactor QuadField::split_prime(i64 p) const
{
    if (!is_prime(p)) throw Error("split_prime: not a prime");
    PrimeFactor pf;
    pf.p = p;
    int k = kronecker(-dF_, p);
    std::vector<i64> roots;
    if (k != -1) {
        if (p == 2) {
            for (i64 r = 0; r < 2; ++r)
                if (mod(r * r - t_ * r + n_, 2) == 0) roots.push_back(r);
        } else {
            i64 s = sqrtmod(mod(-dF_, p), p), inv2 = (p + 1) / 2;
            roots.push_back(mod128((i128)(t_ + s) * inv2, p));
            if (k == 1) roots.push_back(mod128((i128)(t_ - s + p) * inv2, p));
        }
    }
    if (k == 1) {
        pf.kind = SplitKind::Split;
        std::vector<i64> bs;
        for (i64 r : roots) bs.push_back(mod(-r, p));
        std::sort(bs.begin(), bs.end());
        for (int i = 0; i < 2; ++i) {
            PrimeIdeal P;
            P.p = p;
            P.index = i;
            P.kind = SplitKind::Split;
            P.ideal = {p, bs[i], 1};
            pf.primes_above.push_back(P);
        }
    } else if (k == 0) {
        pf.kind = SplitKind::Ramified;
        PrimeIdeal P;
        P.p = p;
        P.kind = SplitKind::Ramified;
        P.ideal = {p, mod(-roots.at(0), p), 1};
        P.e = 2;
        pf.primes_above.push_back(P);
    } else {
        pf.kind = SplitKind::Inert;
        PrimeIdeal P;
        P.p = p;
        P.kind = SplitKind::Inert;
        P.ideal = {p, 0, p};
        P.f = 2;
        pf.primes_above.push_back(P);
    }
    return pf;
}

PrimeIdeal QuadField::prime(i64 p, int index) const
{
    PrimeFactor pf = split_prime(p);
    if (index < 0 || index >= static_cast<int>(pf.primes_above.size())) throw Error("prime: bad index");
    return pf.primes_above[index];
}

int QuadField::ord(const PrimeIdeal& P, const IdealHNF& I) const
{
    int k = 0;
    IdealHNF Q = P.ideal;
    // test divisibility by powers; stop once the norm exceeds Nm(I)
    while (Q.norm() <= I.norm() && divides(Q, I)) {
        ++k;
        Q = mul(Q, P.ideal);
    }
    return k;
}

int QuadField::ord(const PrimeIdeal& P, const OElem& u) const
{
    if (u.is_zero()) throw Error("ord of zero");
    return ord(P, principal(u));
}

std::vector<std::pair<PrimeIdeal, int>> QuadField::factor(const IdealHNF& I) const
{
    std::vector<std::pair<PrimeIdeal, int>> out;
    for (auto [p, e] : qh::factor(I.norm())) {
        for (auto& P : split_prime(p).primes_above) {
            int k = ord(P, I);
            if (k > 0) out.emplace_back(P, k);
        }
    }
    return out;
}

std::vector<PrimeIdeal> QuadField::primes_upto(i64 X) const
{
    std::vector<PrimeIdeal> out;
    for (i64 p : qh::primes_upto(X)) {
        PrimeFactor pf = split_prime(p);
        for (auto& P : pf.primes_above)
            if (P.norm() <= X) out.push_back(P);
    }
    std::stable_sort(out.begin(), out.end(), [](const PrimeIdeal& A, const PrimeIdeal& B) {
        return A.norm() < B.norm();
    });
    return out;
}

int QuadField::class_index(const IdealHNF& I) const
{
    i64 a = I.a / I.c, b = I.b / I.c;
    i128 nb = (i128)b * b + (i128)t_ * b + n_;
    auto f = reduce_form(a, 2 * b + t_, static_cast<i64>(nb / a));
    auto it = std::lower_bound(forms_.begin(), forms_.end(), f);
    if (it == forms_.end() || *it != f) throw Error("class_index: form not found");
    return static_cast<int>(it - forms_.begin());
}

IdealHNF QuadField::class_rep(int idx) const
{
    auto& f = forms_.at(idx);
    return {f[0], mod((f[1] - t_) / 2, f[0]), 1};
}

void QuadField::build_class_group()
{
    forms_ = reduced_forms(-dF_);
    h_ = static_cast<i64>(forms_.size());
    std::vector<i64> cand;
    for (i64 i = 0; i < h_; ++i) cand.push_back(i);
    AbelianGroup G(class_index({1, 0, 1}), [this](i64 x, i64 y) {
        return static_cast<i64>(class_index(mul(class_rep(static_cast<int>(x)), class_rep(static_cast<int>(y)))));
    }, cand, h_);
    cgens_.clear();
    for (size_t i = 0; i < G.invariants().size(); ++i)
        cgens_.push_back({class_rep(static_cast<int>(G.gen_keys()[i])), G.invariants()[i]});
    cdlog_.resize(h_);
    for (i64 i = 0; i < h_; ++i) cdlog_[i] = G.dlog(i);
}

std::optional<OElem> QuadField::principal_test(const IdealHNF& I) const
{
    OElem u{I.a, 0}, v{I.b, I.c};
    auto B2 = [&](const OElem& p, const OElem& q) { // Tr(p * conj q)
        return static_cast<i128>(trace(mul(p, conj(q))));
    };
    for (;;) {
        if (norm(v) < norm(u)) std::swap(u, v);
        i128 num = B2(u, v), den = 2 * (i128)norm(u);
        // round(num/den)
        i128 q = num * 2 + den;
        i128 d2 = den * 2;
        i128 mu = q / d2;
        if ((q % d2 != 0) && (q < 0)) --mu;
        if (mu == 0) break;
        v = {static_cast<i64>(v.x - mu * u.x), static_cast<i64>(v.y - mu * u.y)};
    }
    if (norm(u) != I.norm()) return std::nullopt;
    OElem best{0, 0};
    bool have = false;
    for (auto& e : units()) {
        OElem c = mul(u, e);
        bool pos = c.x > 0 || (c.x == 0 && c.y > 0);
        if (!pos) continue;
        if (!have || best < c) {
            best = c;
            have = true;
        }
    }
    return best;
}

OElem QuadField::crt_idempotent(const IdealHNF& I, const IdealHNF& J) const
{
    // rows g_i with coefficient vectors; find combination equal to 1
    struct Row {
        i128 x, y;
        std::array<i128, 4> k;
    };
    std::vector<Row> rows = {
        {I.a, 0, {1, 0, 0, 0}}, {I.b, I.c, {0, 1, 0, 0}},
        {J.a, 0, {0, 0, 1, 0}}, {J.b, J.c, {0, 0, 0, 1}}};
    auto comb = [](const Row& r, i128 s, const Row& t, i128 u) {
        Row o;
        o.x = s * r.x + u * t.x;
        o.y = s * r.y + u * t.y;
        for (int i = 0; i < 4; ++i) o.k[i] = s * r.k[i] + u * t.k[i];
        return o;
    };
    // eliminate y
    Row piv{0, 0, {0, 0, 0, 0}};
    std::vector<Row> xs;
    for (auto& r : rows) {
        if (r.y == 0) {
            xs.push_back(r);
            continue;
        }
        if (piv.y == 0) {
            piv = r;
            continue;
        }
        i64 s, t;
        i64 g = xgcd(static_cast<i64>(piv.y), static_cast<i64>(r.y), s, t);
        Row np = comb(piv, s, r, t);
        Row z = comb(piv, r.y / g, r, -(piv.y / g));
        piv = np;
        xs.push_back(z);
    }
    Row acc{0, 0, {0, 0, 0, 0}};
    for (auto& r : xs) {
        if (r.x == 0) continue;
        if (acc.x == 0) {
            acc = r;
            continue;
        }
        i64 s, t;
        xgcd(static_cast<i64>(acc.x), static_cast<i64>(r.x), s, t);
        acc = comb(acc, s, r, t);
    }
    if (acc.x != 1 && acc.x != -1) throw Error("crt_idempotent: ideals are not coprime");
    i128 sg = acc.x;
    i128 ex = sg * (acc.k[2] * J.a + acc.k[3] * J.b);
    i128 ey = sg * (acc.k[3] * J.c);
    IdealHNF IJ = mul(I, J);
    return reduce(IJ, ex, ey);
}

std::string QuadField::elem_str(const OElem& u) const
{
    std::string w = t_ == 1 ? "w" : "sqrt(-" + std::to_string(D_) + ")";
    if (u.y == 0) return std::to_string(u.x);
    std::string s = u.x ? std::to_string(u.x) + (u.y > 0 ? "+" : "-") : (u.y < 0 ? "-" : "");
    i64 ay = u.y < 0 ? -u.y : u.y;
    return s + (ay == 1 ? "" : std::to_string(ay) + "*") + w;
}

} // namespace qh
