#include "doctest.h"

#include "qh/local_models.hpp"

#include <cmath>
#include <random>

using namespace qh;

namespace {

FieldElement add(const FieldElement& a, const FieldElement& b) { return {a.x + b.x, a.y + b.y}; }
FieldElement sub(const FieldElement& a, const FieldElement& b) { return {a.x - b.x, a.y - b.y}; }
FieldElement fe(i64 n) { return {mpq_class(static_cast<long>(n)), mpq_class(0)}; }
bool zero(const FieldElement& a) { return a.x == 0 && a.y == 0; }

bool same(const LocalMatrix& x, const LocalMatrix& y)
{
    for (int i = 0; i < 4; ++i)
        if (!(x[i] == y[i])) return false;
    return true;
}

PlacePtr place(i64 D, i64 p, int idx = 0)
{
    auto F = make_field(D);
    return std::make_shared<LocalPlace>(F, F->prime(p, idx));
}

struct Rand {
    std::mt19937 gen;
    explicit Rand(unsigned seed) : gen(seed) {}
    i64 small(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
    FieldElement o() { return QuadField::to_fe(OElem{small(-6, 6), small(-6, 6)}); }
    FieldElement nonzero(const LocalPlace& v, int lo, int hi)
    {
        FieldElement x;
        do x = o();
        while (zero(x));
        return v.shift(x, static_cast<int>(small(lo, hi)));
    }
    LocalMatrix gl2(const LocalPlace& v)
    {
        const QuadField& K = v.field();
        for (;;) {
            LocalMatrix g{nonzero(v, -2, 2), nonzero(v, -2, 2), nonzero(v, -2, 2), nonzero(v, -2, 2)};
            if (small(0, 5) == 0) g[2] = fe(0);
            if (small(0, 5) == 0) g[3] = fe(0);
            if (!zero(mat_det(K, g))) return g;
        }
    }
    // element of K^1(P^s): a = 1 mod P^s, c = 0 mod P^s, det a unit
    LocalMatrix k1(const LocalPlace& v, int s)
    {
        const QuadField& K = v.field();
        for (;;) {
            LocalMatrix k{add(fe(1), v.shift(o(), s)), o(), v.shift(o(), s), o()};
            FieldElement dk = mat_det(K, k);
            if (!zero(dk) && v.ord(dk) == 0) return k;
        }
    }
};

Laurent2 left_factor(const LocalCharacterPair& e, const FieldElement& a, const FieldElement& d)
{
    const LocalPlace& v = *e.place;
    return Laurent2::mono(v.ord(a), v.ord(d), e.eta1.on_unit(v, a) + e.eta2.on_unit(v, d));
}

std::vector<LocalCharacterPair> pairs_at(PlacePtr v)
{
    std::vector<LocalCharacterPair> out;
    auto U = LocalChar::unramified(1.0);
    auto m1 = primitive_characters(v, 1);
    auto m2 = primitive_characters(v, 2);
    out.push_back(LocalCharacterPair::make(v, U, U));
    out.push_back(LocalCharacterPair::make(v, m1[0], U));
    out.push_back(LocalCharacterPair::make(v, U, m1.back()));
    out.push_back(LocalCharacterPair::make(v, m1[0], m1.back()));
    out.push_back(LocalCharacterPair::make(v, m1[0], m2[0]));
    out.push_back(LocalCharacterPair::make(v, U, m2.back()));
    return out;
}

} // namespace

TEST_CASE("Iwasawa decomposition: upper triangular and the lower unipotent example")
{
    auto v = place(1, 5);
    const QuadField& K = v->field();
    LocalMatrix g = mat_int(2, 3, 0, 7);
    auto I = iwasawa(*v, g);
    CHECK(I.branch == IwasawaBranch::Upper);
    CHECK(same(I.b, g));
    CHECK(same(I.k, mat_int(1, 0, 0, 1)));

    // (1 0; 1 x) = (1/1, 1; 0, 1)(0 -1; 1 x) when ord x >= 0
    LocalMatrix h = mat_int(1, 0, 1, 10);
    auto J = iwasawa(*v, h);
    CHECK(J.branch == IwasawaBranch::GammaPivot);
    CHECK(same(mat_mul(K, J.b, J.k), h));
    CHECK(in_gl2_o(*v, J.k));
    // ord x < 0: the delta pivot
    LocalMatrix h2{fe(1), fe(0), fe(1), v->shift(fe(3), -2)};
    auto J2 = iwasawa(*v, h2);
    CHECK(J2.branch == IwasawaBranch::DeltaPivot);
    CHECK(same(mat_mul(K, J2.b, J2.k), h2));
    CHECK(in_gl2_o(*v, J2.k));
    CHECK(zero(J2.b[2]));
}

TEST_CASE("Iwasawa decomposition reconstructs random matrices")
{
    Rand R(2024);
    int n = 0;
    for (auto v : {place(1, 5), place(1, 3), place(5, 5), place(2, 3), place(7, 2), place(3, 7)}) {
        const QuadField& K = v->field();
        for (int i = 0; i < 1700; ++i) {
            LocalMatrix g = R.gl2(*v);
            auto I = iwasawa(*v, g);
            REQUIRE(same(mat_mul(K, I.b, I.k), g));
            REQUIRE(zero(I.b[2]));
            REQUIRE(in_gl2_o(*v, I.k));
            ++n;
        }
    }
    CHECK(n >= 10000);
}

TEST_CASE("newvector: normalization and support")
{
    for (auto v : {place(1, 5), place(1, 3), place(5, 5)}) {
        for (auto& e : pairs_at(v)) {
            CHECK(eval_newvector(e, lower_unipotent(*v, e.r)) == Laurent2::mono(0, 0));
            if (e.unramified()) CHECK(eval_newvector(e, mat_int(1, 0, 0, 1)) == Laurent2::mono(0, 0));
            for (int j = 0; j <= e.s; ++j) {
                CHECK(newvector_coset(e, lower_unipotent(*v, j)) == j);
                if (j != e.r) CHECK(eval_newvector(e, lower_unipotent(*v, j)).is_zero());
            }
        }
    }
}

TEST_CASE("newvector: right K^1(P^s) invariance and left B-equivariance")
{
    Rand R(77);
    for (auto v : {place(1, 5), place(1, 3), place(5, 5), place(2, 3)}) {
        const QuadField& K = v->field();
        for (auto& e : pairs_at(v)) {
            // exhaustive over beta mod P^s and delta over units when P^s is small
            std::vector<OElem> units{{1, 0}}, betas{{0, 0}};
            bool exhaustive = v->power(e.s).norm() <= 81;
            if (e.s > 0 && exhaustive) {
                ResidueRing Rs(v->field_ptr(), v->power(e.s));
                units = Rs.units();
                betas.clear();
                for (i64 key = 0; key < Rs.size(); ++key) betas.push_back(Rs.elem(key));
            }
            for (int trial = 0; trial < 3; ++trial) {
                LocalMatrix g = R.gl2(*v);
                Laurent2 base = eval_newvector(e, g);
                if (!exhaustive)
                    for (int i = 0; i < 300; ++i) REQUIRE(eval_newvector(e, mat_mul(K, g, R.k1(*v, e.s))) == base);
                for (auto& b : betas)
                    for (auto& d : units) {
                        LocalMatrix k{add(fe(1), v->shift(R.o(), e.s)), QuadField::to_fe(b), v->shift(R.o(), e.s),
                                      QuadField::to_fe(d)};
                        FieldElement dk = mat_det(K, k);
                        if (zero(dk) || v->ord(dk) != 0) continue;
                        REQUIRE(eval_newvector(e, mat_mul(K, g, k)) == base);
                    }
            }
            for (int trial = 0; trial < 40; ++trial) {
                LocalMatrix g = R.gl2(*v);
                FieldElement a = R.nonzero(*v, -2, 2), d = R.nonzero(*v, -2, 2);
                LocalMatrix b{a, R.o(), fe(0), d};
                Laurent2 lhs = eval_newvector(e, mat_mul(K, mat_mul(K, b, g), R.k1(*v, e.s)));
                Laurent2 rhs = left_factor(e, a, d) * eval_newvector(e, g);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("spherical vector: diag(pi,1) gives X1 and left equivariance")
{
    Rand R(5);
    for (auto v : {place(1, 5), place(1, 3), place(7, 7)}) {
        const QuadField& K = v->field();
        auto e = LocalCharacterPair::make(v, LocalChar::unramified(1.0), LocalChar::unramified(1.0));
        LocalMatrix dg{QuadField::to_fe(v->uniformizer()), fe(0), fe(0), fe(1)};
        CHECK(eval_spherical(e, dg) == Laurent2::mono(1, 0));
        auto mus = primitive_characters(v, 1);
        for (auto& mu : {LocalChar::unramified(1.0), mus[0]}) {
            for (int i = 0; i < 60; ++i) {
                LocalMatrix g = R.gl2(*v);
                FieldElement a = R.nonzero(*v, -2, 2), d = R.nonzero(*v, -2, 2);
                LocalMatrix b{a, R.o(), fe(0), d};
                Laurent2 f = Laurent2::mono(v->ord(a), v->ord(d), mu.on_unit(*v, a) + mu.on_unit(*v, d));
                LocalMatrix k = R.k1(*v, 0);
                REQUIRE(eval_spherical(e, mu, mat_mul(K, mat_mul(K, b, g), k)) ==
                        f * eval_spherical(e, mu, g).times_root(mu.on_unit(*v, mat_det(K, k))));
            }
        }
    }
}

TEST_CASE("twist of the spherical vector by an unramified-at-pi character")
{
    Rand R(9);
    auto v = place(1, 5);
    auto e = LocalCharacterPair::make(v, LocalChar::unramified(1.0), LocalChar::unramified(1.0));
    for (auto& mu : primitive_characters(v, 1))
        for (int i = 0; i < 10; ++i) {
            LocalMatrix g = R.gl2(*v);
            CHECK(twist_l32(e, mu, g).pass);
        }
}

TEST_CASE("twisted sum of the spherical vector at norm 5, r = 1")
{
    auto v = place(1, 5);
    auto e = LocalCharacterPair::make(v, LocalChar::unramified(1.0), LocalChar::unramified(1.0));
    auto mus = primitive_characters(v, 1);
    CHECK(mus.size() == 3);
    for (auto& mu : mus) {
        auto tp = twisted_pair(e, mu);
        CHECK(tp.r == 1);
        CHECK(tp.s == 2);
        for (int j = 0; j <= 2; ++j) {
            auto c = twisted_sum_p32(e, mu, lower_unipotent(*v, j));
            CHECK(c.pass);
            // the twisted newvector lives on the coset j = r only
            if (j != 1) CHECK(c.lhs.is_zero());
            else CHECK(!c.lhs.is_zero());
        }
    }
}

TEST_CASE("twisted sum batch over all primitive characters")
{
    for (auto [D, p, r] : std::vector<std::tuple<i64, i64, int>>{{1, 5, 1}, {1, 3, 2}, {5, 5, 2}, {7, 7, 1}, {2, 3, 1}}) {
        auto v = place(D, p);
        auto b = twisted_sum_batch(v, r, coset_sample(*v, r, 3, 13));
        CHECK(b.characters > 0);
        CHECK(b.checks > 0);
        CHECK(b.passed == b.checks);
        CHECK(b.failures.empty());
    }
}

TEST_CASE("twisted sum does not depend on residue representatives")
{
    // shifting the summation variable x by pi^r y leaves g (1 x/pi^r; 0 1) in the same K-orbit
    auto v = place(1, 3);
    const QuadField& K = v->field();
    auto e = LocalCharacterPair::make(v, LocalChar::unramified(1.0), LocalChar::unramified(1.0));
    auto mu = primitive_characters(v, 1)[0];
    ResidueRing R1(v->field_ptr(), v->power(1));
    Rand Rg(4);
    for (int i = 0; i < 5; ++i) {
        LocalMatrix g = Rg.gl2(*v);
        Laurent2 s1, s2;
        for (auto& x : R1.units()) {
            FieldElement x1 = v->shift(QuadField::to_fe(x), -1);
            FieldElement x2 = add(x1, Rg.o());
            RootU w = -mu.on_unit(*v, QuadField::to_fe(x));
            s1 += eval_spherical(e, mu, mat_mul(K, g, upper_unipotent(x1))).times_root(w);
            s2 += eval_spherical(e, mu, mat_mul(K, g, upper_unipotent(x2))).times_root(w);
        }
        CHECK(s1 == s2);
        CHECK(s1 == twisted_sum_p32(e, mu, g).lhs);
    }
}

TEST_CASE("theta twist of the newvector carries theta^-1(det g)")
{
    auto v = place(1, 5);
    auto e = LocalCharacterPair::make(v, LocalChar::unramified(1.0), LocalChar::unramified(1.0));
    bool saw_odd = false;
    for (auto& th : primitive_characters(v, 1)) {
        RootU m1 = th.on_unit(*v, fe(-1));
        int pm = 0, n = 0;
        for (auto& g : coset_sample(*v, 1, 6, 11)) {
            auto c = theta_twist_newvector(e, th, g);
            CHECK(c.pass_plus);
            pm += c.pass_minus;
            ++n;
        }
        if (m1.is_one()) CHECK(pm == n);
        else {
            saw_odd = true;
            CHECK(pm < n);
        }
    }
    CHECK(saw_odd);
    CHECK_THROWS(theta_twist_newvector(e, LocalChar::unramified(1.0), mat_int(1, 0, 0, 1)));
}

TEST_CASE("toroidal local factors agree with truncated integrals")
{
    auto v = place(1, 5);
    auto m1 = primitive_characters(v, 1);
    auto m2 = primitive_characters(v, 2);
    auto U = [](cplx c) { return LocalChar::unramified(c); };
    auto with = [](LocalChar c, cplx a) {
        c.at_pi = a;
        return c;
    };
    cplx a(0.6, 0.3), b(1.3, -0.4), th(0.8, 0.5);
    std::vector<std::pair<ToroidalLocal, int>> ts = {
        {ToroidalLocal::make(v, U(a), U(b), U(th)), 1},
        {ToroidalLocal::make(v, with(m1[0], a), U(b), U(th)), 2},
        {ToroidalLocal::make(v, with(m2[3], a), U(b), U(th)), 2},
        {ToroidalLocal::make(v, U(a), with(m1[1], b), U(th)), 3},
        {ToroidalLocal::make(v, with(m1[0], a), with(m1[2], b), U(th)), 4},
        {ToroidalLocal::make(v, U(a), U(b), with(m1[0], th)), 5},
        {ToroidalLocal::make(v, U(a), U(b), with(m1[1], th)), 5},
        {ToroidalLocal::make(v, U(a), U(b), with(m2[2], th)), 5},
    };
    for (auto& [t, cs] : ts) {
        CHECK(t.natural_case() == cs);
        CHECK(!local_toroidal_formula(cs).empty());
        for (double z : {4.0, 5.5}) {
            cplx cf = local_toroidal_factor(t, cs, z), tr = toroidal_truncation(t, z, 30);
            CHECK(std::abs(cf - tr) < 1e-9 * std::max(1.0, std::abs(cf)));
        }
        CHECK_THROWS(local_toroidal_factor(t, cs == 1 ? 2 : 1, 4.0));
    }
    CHECK_THROWS(local_toroidal_formula(6));
}

TEST_CASE("archimedean factor: closed form and quadrature")
{
    CHECK(std::abs(archimedean_factor(0, 0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(archimedean_factor(2, 1, 0) + 1.0 / 12) < 1e-14);
    for (auto [m, mp, z] : std::vector<std::tuple<int, int, double>>{{3, 1, 0.5}, {0, 0, 0}, {2, 1, 0}, {4, 4, 1.5}, {5, 0, 3}})
        CHECK(std::abs(archimedean_factor(m, mp, z) - archimedean_quadrature(m, mp, z)) < 1e-6);
    CHECK(std::abs(archimedean_quadrature(3, 1, 0.5) - 0.0275904) < 1e-6);
    CHECK_THROWS(archimedean_factor(1, 2, 0));
    CHECK_THROWS(archimedean_quadrature(2, 1, -8));
}
