#include "qh/local_models.hpp"

#include "qh/ray_class.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <optional>
#include <random>

namespace qh {

// ---------------------------------------------------------------- Laurent2

Laurent2 Laurent2::mono(int i, int j, const RootU& c, i64 coef)
{
    Laurent2 r;
    r.add(i, j, c, coef);
    return r;
}

void Laurent2::add(int i, int j, const RootU& c, i64 coef)
{
    auto it = t_.find({i, j});
    if (it == t_.end()) {
        t_.emplace(Key{i, j}, CycloZ::root(c, coef));
        return;
    }
    CycloZ& x = it->second;
    if (x.order() % c.den == 0)
        x.add_root(c.num * (x.order() / c.den), coef);
    else
        x += CycloZ::root(c, coef);
}

Laurent2& Laurent2::operator+=(const Laurent2& o)
{
    for (auto& [k, c] : o.t_) {
        auto it = t_.find(k);
        if (it == t_.end())
            t_.emplace(k, c);
        else
            it->second += c;
    }
    return *this;
}

Laurent2 Laurent2::operator-() const
{
    Laurent2 r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

Laurent2 Laurent2::operator*(const Laurent2& o) const
{
    Laurent2 r;
    for (auto& [k1, c1] : t_)
        for (auto& [k2, c2] : o.t_) {
            Key k{k1.first + k2.first, k1.second + k2.second};
            CycloZ p = c1 * c2;
            auto it = r.t_.find(k);
            if (it == r.t_.end())
                r.t_.emplace(k, p);
            else
                it->second += p;
        }
    return r;
}

Laurent2 Laurent2::times_root(const RootU& c) const
{
    Laurent2 r;
    for (auto& [k, x] : t_) r.t_.emplace(k, x.times_root(c));
    return r;
}

Laurent2 Laurent2::shift(int di, int dj) const
{
    Laurent2 r;
    for (auto& [k, x] : t_) r.t_.emplace(Key{k.first + di, k.second + dj}, x);
    return r;
}

bool Laurent2::is_zero() const
{
    for (auto& [k, c] : t_)
        if (!c.is_zero()) return false;
    return true;
}

cplx Laurent2::value(cplx X1, cplx X2) const
{
    cplx s = 0;
    for (auto& [k, c] : t_) s += c.value() * std::pow(X1, k.first) * std::pow(X2, k.second);
    return s;
}

std::string Laurent2::str() const
{
    std::string s;
    for (auto& [k, c] : t_) {
        if (c.is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "[" + c.str() + "]";
        if (k.first) s += "*X1^" + std::to_string(k.first);
        if (k.second) s += "*X2^" + std::to_string(k.second);
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- matrices

namespace {

FieldElement fe(i64 x) { return {mpq_class(static_cast<long>(x)), 0}; }
FieldElement add(const FieldElement& a, const FieldElement& b) { return {a.x + b.x, a.y + b.y}; }
FieldElement sub(const FieldElement& a, const FieldElement& b) { return {a.x - b.x, a.y - b.y}; }
FieldElement neg(const FieldElement& a) { return {-a.x, -a.y}; }
bool is_zero(const FieldElement& a) { return a.x == 0 && a.y == 0; }
FieldElement fdiv(const QuadField& K, const FieldElement& a, const FieldElement& b) { return K.mul(a, K.inverse(b)); }

bool integral_at(const LocalPlace& v, const FieldElement& x) { return is_zero(x) || v.ord(x) >= 0; }

RootU unit_value(const LocalChar& c, const LocalPlace& v, const FieldElement& x)
{
    if (c.cond == 0 || !c.unit) return RootU();
    return c.on_unit(v, x);
}

// (a, d) of g = (a *; 0 d) (1 0; pi^r 1) k, k in K^1(P^s), when g lies in that coset.
// Entries whose character is unramified are only determined up to units.
std::optional<std::pair<FieldElement, FieldElement>> newvector_ad(const LocalPlace& v, int r, int s,
                                                                  const LocalMatrix& g, int& coset)
{
    const QuadField& K = v.field();
    const FieldElement &gam = g[2], &del = g[3];
    FieldElement det = mat_det(K, g);
    if (is_zero(det)) throw Error("newvector: singular matrix");
    if (is_zero(gam))
        coset = s;
    else if (is_zero(del))
        coset = 0;
    else
        coset = std::clamp(v.ord(gam) - v.ord(del), 0, s);
    if (coset != r) return std::nullopt;
    if (r == s) {
        FieldElement piv = del;
        if (s == 0 && (is_zero(del) || (!is_zero(gam) && v.ord(gam) < v.ord(del)))) piv = gam;
        return std::make_pair(fdiv(K, det, piv), piv);
    }
    if (r == 0) return std::make_pair(fdiv(K, det, gam), gam);
    return std::make_pair(fdiv(K, det, del), v.shift(gam, -r));
}

struct SphericalData {
    FieldElement a, d, detk;
};

SphericalData spherical_ad(const LocalPlace& v, const LocalMatrix& g)
{
    Iwasawa w = iwasawa(v, g);
    return {w.b[0], w.b[3], mat_det(v.field(), w.k)};
}

} // namespace

LocalMatrix mat(const FieldElement& a, const FieldElement& b, const FieldElement& c, const FieldElement& d)
{
    return {a, b, c, d};
}

LocalMatrix mat_int(i64 a, i64 b, i64 c, i64 d) { return {fe(a), fe(b), fe(c), fe(d)}; }

LocalMatrix mat_mul(const QuadField& K, const LocalMatrix& x, const LocalMatrix& y)
{
    return {add(K.mul(x[0], y[0]), K.mul(x[1], y[2])), add(K.mul(x[0], y[1]), K.mul(x[1], y[3])),
            add(K.mul(x[2], y[0]), K.mul(x[3], y[2])), add(K.mul(x[2], y[1]), K.mul(x[3], y[3]))};
}

FieldElement mat_det(const QuadField& K, const LocalMatrix& g) { return sub(K.mul(g[0], g[3]), K.mul(g[1], g[2])); }

LocalMatrix lower_unipotent(const LocalPlace& v, int j)
{
    return {fe(1), fe(0), v.shift(fe(1), j), fe(1)};
}

LocalMatrix upper_unipotent(const FieldElement& x) { return {fe(1), x, fe(0), fe(1)}; }

Iwasawa iwasawa(const LocalPlace& v, const LocalMatrix& g)
{
    const QuadField& K = v.field();
    FieldElement det = mat_det(K, g);
    if (is_zero(det)) throw Error("iwasawa: singular matrix");
    const FieldElement &al = g[0], &be = g[1], &ga = g[2], &de = g[3];
    if (is_zero(ga)) return {g, mat_int(1, 0, 0, 1), IwasawaBranch::Upper};
    if (is_zero(de) || v.ord(ga) <= v.ord(de))
        return {{fdiv(K, det, ga), al, fe(0), ga}, {fe(0), fe(-1), fe(1), fdiv(K, de, ga)}, IwasawaBranch::GammaPivot};
    return {{fdiv(K, det, de), be, fe(0), de}, {fe(1), fe(0), fdiv(K, ga, de), fe(1)}, IwasawaBranch::DeltaPivot};
}

bool in_gl2_o(const LocalPlace& v, const LocalMatrix& k)
{
    for (auto& x : k)
        if (!integral_at(v, x)) return false;
    FieldElement d = mat_det(v.field(), k);
    return !is_zero(d) && v.ord(d) == 0;
}

// ---------------------------------------------------------------- induced vectors

LocalCharacterPair LocalCharacterPair::make(PlacePtr v, LocalChar eta1, LocalChar eta2)
{
    LocalCharacterPair e;
    e.r = eta1.exact_conductor(*v);
    e.s = e.r + eta2.exact_conductor(*v);
    e.place = std::move(v);
    e.eta1 = std::move(eta1);
    e.eta2 = std::move(eta2);
    return e;
}

cplx LocalCharacterPair::X1(cplx z) const
{
    return eta1.at_pi * std::pow(cplx(static_cast<double>(place->q())), -z / 2.0);
}

cplx LocalCharacterPair::X2(cplx z) const
{
    return eta2.at_pi * std::pow(cplx(static_cast<double>(place->q())), z / 2.0);
}

int newvector_coset(const LocalCharacterPair& e, const LocalMatrix& g)
{
    int j = 0;
    newvector_ad(*e.place, e.r, e.s, g, j);
    return j;
}

Laurent2 eval_newvector(const LocalCharacterPair& e, const LocalMatrix& g)
{
    const LocalPlace& v = *e.place;
    int j = 0;
    auto ad = newvector_ad(v, e.r, e.s, g, j);
    if (!ad) return {};
    auto& [a, d] = *ad;
    RootU c = unit_value(e.eta1, v, a) + unit_value(e.eta2, v, d);
    return Laurent2::mono(v.ord(a), v.ord(d), c);
}

Laurent2 eval_spherical(const LocalCharacterPair& e, const LocalChar& mu, const LocalMatrix& g)
{
    if (!e.unramified()) throw Error("eval_spherical: eta must be unramified");
    const LocalPlace& v = *e.place;
    SphericalData sd = spherical_ad(v, g);
    RootU c = unit_value(mu, v, sd.a) + unit_value(mu, v, sd.d) + unit_value(mu, v, sd.detk);
    return Laurent2::mono(v.ord(sd.a), v.ord(sd.d), c);
}

IdentityCheck twist_l32(const LocalCharacterPair& e, const LocalChar& mu, const LocalMatrix& g)
{
    if (!e.unramified()) throw Error("twist_l32: eta must be unramified");
    IdentityCheck r;
    r.lhs = eval_newvector(e, g).times_root(unit_value(mu, *e.place, mat_det(e.place->field(), g)));
    r.rhs = eval_spherical(e, mu, g);
    r.pass = r.lhs == r.rhs;
    return r;
}

LocalCharacterPair twisted_pair(const LocalCharacterPair& e, const LocalChar& mu)
{
    LocalCharacterPair t;
    t.place = e.place;
    t.eta1 = e.eta1 * mu;
    t.eta2 = e.eta2 * mu;
    t.r = mu.cond;
    t.s = 2 * mu.cond;
    return t;
}

namespace {

// (eta2/eta1)(pi^r) (1 - (eta1/eta2)(pi))
Laurent2 l_factor(int r)
{
    Laurent2 f = Laurent2::mono(-r, r);
    f.add(1 - r, r - 1, RootU(), -1);
    return f;
}

} // namespace

IdentityCheck twisted_sum_p32(const LocalCharacterPair& e, const LocalChar& mu, const LocalMatrix& g)
{
    if (!e.unramified()) throw Error("twisted_sum_p32: eta must be unramified");
    const LocalPlace& v = *e.place;
    const QuadField& K = v.field();
    int r = mu.cond;
    if (r <= 0 || mu.exact_conductor(v) != r) throw Error("twisted_sum_p32: mu must have exact conductor P^r, r > 0");
    ResidueRing R(v.field_ptr(), v.power(r));
    IdentityCheck c;
    for (auto& x : R.units()) {
        FieldElement xr = v.shift(QuadField::to_fe(x), -r);
        Laurent2 t = eval_spherical(e, mu, mat_mul(K, g, upper_unipotent(xr)));
        c.lhs += t.times_root(-unit_value(mu, v, QuadField::to_fe(x)));
    }
    RootU mu_m1 = -unit_value(mu, v, fe(-1));
    c.rhs = (eval_newvector(twisted_pair(e, mu), g) * l_factor(r)).times_root(mu_m1);
    c.pass = c.lhs == c.rhs;
    return c;
}

std::vector<LocalChar> primitive_characters(PlacePtr v, int r)
{
    auto R = std::make_shared<ResidueRing>(v->field_ptr(), v->power(r));
    const auto& ord = R->orders();
    std::vector<std::vector<i64>> deep; // dlogs of units = 1 mod P^{r-1}
    for (auto& u : R->units())
        if (r == 1 || v->field().contains(v->power(r - 1), OElem{u.x - 1, u.y})) deep.push_back(R->dlog(u));
    std::vector<LocalChar> out;
    std::vector<i64> k(ord.size(), 0);
    while (true) {
        bool prim = false;
        for (auto& d : deep) {
            RootU s;
            for (size_t i = 0; i < k.size(); ++i) s = s + RootU(mod128((i128)k[i] * d[i], ord[i]), ord[i]);
            if (!s.is_one()) {
                prim = true;
                break;
            }
        }
        if (prim) out.push_back(LocalChar::from_residue(R, k, 1.0));
        size_t i = 0;
        while (i < k.size() && ++k[i] == ord[i]) k[i++] = 0;
        if (i == k.size()) break;
    }
    return out;
}

std::vector<LocalMatrix> coset_sample(const LocalPlace& v, int r, int n_random, unsigned seed)
{
    const QuadField& K = v.field();
    std::vector<LocalMatrix> gs;
    for (int j = 0; j <= 2 * r; ++j) gs.push_back(lower_unipotent(v, j));
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> small(-4, 4), ex(-2, 2);
    auto elem = [&] { return FieldElement{mpq_class(small(rng)), mpq_class(small(rng))}; };
    auto unit = [&] {
        while (true) {
            FieldElement u = elem();
            if (!is_zero(u) && v.ord(u) == 0) return u;
        }
    };
    FieldElement pis = v.shift(fe(1), 2 * r);
    for (int n = 0; n < n_random; ++n) {
        LocalMatrix b{v.shift(unit(), ex(rng)), elem(), fe(0), v.shift(unit(), ex(rng))};
        LocalMatrix k{add(fe(1), K.mul(pis, elem())), elem(), K.mul(pis, elem()), unit()};
        gs.push_back(mat_mul(K, mat_mul(K, b, lower_unipotent(v, n % (2 * r + 1))), k));
    }
    return gs;
}

TwistedSumBatch twisted_sum_batch(PlacePtr vp, int r, const std::vector<LocalMatrix>& gs)
{
    const LocalPlace& v = *vp;
    const QuadField& K = v.field();
    auto R = std::make_shared<ResidueRing>(v.field_ptr(), v.power(r));
    const auto& ord = R->orders();
    size_t n = ord.size();
    auto dl = [&](const FieldElement& x) { return R->dlog(v.unit_residue(x, r)); };
    auto vsub = [&](std::vector<i64> a, const std::vector<i64>& b) {
        for (size_t i = 0; i < n; ++i) a[i] = mod(a[i] - b[i], ord[i]);
        return a;
    };
    auto vadd = [&](std::vector<i64> a, const std::vector<i64>& b) {
        for (size_t i = 0; i < n; ++i) a[i] = mod(a[i] + b[i], ord[i]);
        return a;
    };

    // Psi^0_{eta mu}(g n_x) = X1^i X2^j mu(a) mu(d) mu(det k), from the Iwasawa decomposition
    struct Term {
        int i, j;
        std::vector<i64> e; // exponents of mu(a d det k / x)
    };
    struct GData {
        std::vector<Term> lhs;
        bool nonzero = false;
        int i = 0, j = 0;
        std::vector<i64> e; // exponents of mu(a) mu(d) / mu(-1) for the newvector
    };
    auto units = R->units();
    std::vector<GData> data;
    std::vector<i64> m1 = R->dlog(K.reduce(R->modulus(), OElem{-1, 0}));
    for (auto& g : gs) {
        GData gd;
        for (auto& x : units) {
            FieldElement xf = QuadField::to_fe(x);
            SphericalData sd = spherical_ad(v, mat_mul(K, g, upper_unipotent(v.shift(xf, -r))));
            std::vector<i64> e = vadd(vadd(dl(sd.a), dl(sd.d)), dl(sd.detk));
            gd.lhs.push_back({v.ord(sd.a), v.ord(sd.d), vsub(e, R->dlog(x))});
        }
        int j = 0;
        auto ad = newvector_ad(v, r, 2 * r, g, j);
        if (ad) {
            gd.nonzero = true;
            gd.i = v.ord(ad->first);
            gd.j = v.ord(ad->second);
            gd.e = vsub(vadd(dl(ad->first), dl(ad->second)), m1);
        }
        data.push_back(std::move(gd));
    }

    TwistedSumBatch out;
    auto chars = primitive_characters(vp, r);
    // recover exponent vectors: evaluate on the Smith generators
    auto gens = R->generators();
    Laurent2 lf = l_factor(r);
    for (auto& mu : chars) {
        std::vector<i64> k(n);
        for (size_t i = 0; i < n; ++i) {
            RootU z = mu.unit(gens[i]);
            k[i] = mod128((i128)z.num * (ord[i] / z.den), ord[i]);
        }
        auto val = [&](const std::vector<i64>& e) {
            RootU s;
            for (size_t i = 0; i < n; ++i) s = s + RootU(mod128((i128)k[i] * e[i], ord[i]), ord[i]);
            return s;
        };
        ++out.characters;
        for (size_t gi = 0; gi < data.size(); ++gi) {
            const GData& gd = data[gi];
            Laurent2 lhs, rhs;
            for (auto& t : gd.lhs) lhs.add(t.i, t.j, val(t.e));
            if (gd.nonzero) rhs = lf.shift(gd.i, gd.j).times_root(val(gd.e));
            ++out.checks;
            if (lhs == rhs)
                ++out.passed;
            else if (out.failures.size() < 20) {
                std::string ks;
                for (auto x : k) ks += std::to_string(x) + " ";
                out.failures.push_back("P=" + v.prime().ideal.str() + " r=" + std::to_string(r) + " mu=[" + ks +
                                       "] g#" + std::to_string(gi) + ": " + lhs.str() + " vs " + rhs.str());
            }
        }
    }
    return out;
}

ThetaTwistCheck theta_twist_newvector(const LocalCharacterPair& e, const LocalChar& theta, const LocalMatrix& g)
{
    if (!e.unramified()) throw Error("theta_twist_newvector: eta must be unramified");
    const LocalPlace& v = *e.place;
    const QuadField& K = v.field();
    int k = theta.cond;
    if (k <= 0 || theta.exact_conductor(v) != k) throw Error("theta_twist_newvector: theta must be ramified");
    ResidueRing R(v.field_ptr(), v.power(k));
    ThetaTwistCheck c;
    for (auto& y : R.units()) {
        FieldElement yk = neg(v.shift(QuadField::to_fe(y), -k));
        Laurent2 t = eval_newvector(e, mat_mul(K, g, upper_unipotent(yk)));
        c.lhs += t.times_root(-unit_value(theta, v, QuadField::to_fe(y)));
    }
    c.factor = l_factor(k);
    c.theta_minus_one = unit_value(theta, v, fe(-1));
    FieldElement det = mat_det(K, g);
    Laurent2 base = eval_newvector(twisted_pair(e, theta), g) * c.factor;
    c.rhs_minus = base.times_root(-unit_value(theta, v, neg(det)));
    c.rhs_plus = base.times_root(-unit_value(theta, v, det));
    c.pass_minus = c.lhs == c.rhs_minus;
    c.pass_plus = c.lhs == c.rhs_plus;
    return c;
}

// ---------------------------------------------------------------- toroidal factors

ToroidalLocal ToroidalLocal::make(PlacePtr v, LocalChar phi1, LocalChar phi2, LocalChar theta)
{
    ToroidalLocal t;
    t.r = phi1.exact_conductor(*v);
    t.s = t.r + phi2.exact_conductor(*v);
    t.k = theta.exact_conductor(*v);
    t.place = std::move(v);
    t.phi1 = std::move(phi1);
    t.phi2 = std::move(phi2);
    t.theta = std::move(theta);
    return t;
}

int ToroidalLocal::natural_case() const
{
    if (k > 0) {
        if (s > 0) throw Error("toroidal: theta ramified at a place where phi is ramified");
        return 5;
    }
    if (s == 0) return 1;
    if (r == s) return 2;
    if (r == 0) return 3;
    return 4;
}

std::string local_toroidal_formula(int case_no)
{
    switch (case_no) {
    case 1: return "L_v(z/2, phi1 theta) L_v(z/2, (phi2 theta)^-1) / L_v(z, phi1/phi2)";
    case 2: return "(phi2 theta)^-r(pi) q^(-rz/2) L_v(z/2, (phi2 theta)^-1)";
    case 3: return "L_v(z/2, phi1 theta)";
    case 4: return "(phi2 theta)^-r(pi) q^(-rz/2)";
    case 5: return "L_v(z, phi1/phi2)^-1 (phi1 theta)^-k(pi) q^(kz/2) #(O/P^k)^*";
    }
    throw Error("local_toroidal_formula: case must be 1..5");
}

cplx local_toroidal_factor(const ToroidalLocal& t, int case_no, double z)
{
    if (case_no != t.natural_case()) throw Error("local_toroidal_factor: case does not match the ramification");
    double q = static_cast<double>(t.place->q());
    cplx A = t.phi1.at_pi * t.theta.at_pi, B = t.phi2.at_pi * t.theta.at_pi;
    double h = std::pow(q, -z / 2);
    switch (case_no) {
    case 1: {
        cplx chi = t.phi1.at_pi / t.phi2.at_pi;
        return (1.0 - chi * h * h) / ((1.0 - A * h) * (1.0 - h / B));
    }
    case 2: return std::pow(B, -t.r) * std::pow(h, t.r) / (1.0 - h / B);
    case 3: return 1.0 / (1.0 - A * h);
    case 4: return std::pow(B, -t.r) * std::pow(h, t.r);
    default: {
        const LocalPlace& v = *t.place;
        cplx chi = t.phi1.at_pi / t.phi2.at_pi;
        double units = static_cast<double>(ResidueRing(v.field_ptr(), v.power(t.k)).unit_order());
        return (1.0 - chi * h * h) * std::pow(A, -t.k) * std::pow(h, -t.k) * units;
    }
    }
}

cplx toroidal_truncation(const ToroidalLocal& t, double z, int T)
{
    const LocalPlace& v = *t.place;
    const QuadField& K = v.field();
    int cs = t.natural_case();
    LocalCharacterPair e{t.place, t.phi1, t.phi2, t.r, t.s};
    cplx X1 = e.X1(z), X2 = e.X2(z);
    int c = std::max(t.s, t.k);
    std::vector<OElem> eps{{1, 0}};
    if (c > 0) eps = ResidueRing(v.field_ptr(), v.power(c)).units();
    std::vector<OElem> ys;
    double vol = 1;
    if (cs == 5) {
        ResidueRing Rk(v.field_ptr(), v.power(t.k));
        ys = Rk.units();
        vol = static_cast<double>(Rk.unit_order());
    }
    double w = vol / static_cast<double>(eps.size());
    cplx total = 0;
    for (int tt = -T; tt <= T; ++tt)
        for (auto& u : eps) {
            FieldElement x = v.shift(QuadField::to_fe(u), tt);
            LocalMatrix g{fe(1), fe(0), fe(1), x};
            cplx psi;
            if (cs == 5) {
                Laurent2 s;
                for (auto& y : ys) {
                    FieldElement yk = neg(v.shift(QuadField::to_fe(y), -t.k));
                    s += eval_newvector(e, mat_mul(K, g, upper_unipotent(yk)))
                             .times_root(-unit_value(t.theta, v, QuadField::to_fe(y)));
                }
                psi = s.value(X1, X2);
            } else {
                psi = eval_newvector(e, g).value(X1, X2);
            }
            if (psi != 0.0) total += w * t.theta(v, x) * psi;
        }
    return total;
}

double archimedean_factor(int m, int mp, double z)
{
    if (mp < 0 || mp > m) throw Error("archimedean_factor: need 0 <= m' <= m");
    if (!(z / 2 > -(m - mp + 1)) || !(z / 2 > -(mp + 1))) throw Error("archimedean_factor: outside the convergence strip");
    double sgn = ((m - mp) % 2) ? -1.0 : 1.0;
    return sgn / 2 * std::tgamma(z / 2 + m - mp + 1) * std::tgamma(z / 2 + mp + 1) / std::tgamma(z + m + 2);
}

double archimedean_quadrature(int m, int mp, double z)
{
    if (mp < 0 || mp > m) throw Error("archimedean_quadrature: need 0 <= m' <= m");
    if (!(z / 2 > -(m - mp + 1)) || !(z / 2 > -(mp + 1)))
        throw Error("archimedean_quadrature: outside the convergence strip");
    double a = z + 1 + 2.0 * (m - mp), b = z + 2 + m;
    auto f = [a, b](double rho) { return std::exp(a * std::log(rho) - b * std::log1p(rho * rho)); };
    boost::math::quadrature::exp_sinh<double> integrator;
    double val = integrator.integrate(f, 1e-13);
    double sgn = ((m - mp) % 2) ? -1.0 : 1.0;
    return sgn * val;
}

} // namespace qh
