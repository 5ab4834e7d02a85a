#include "doctest.h"

#include "qh/suite.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace qh;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

FieldElement fe(i64 x, i64 y = 0) { return {mpq_class(static_cast<long>(x)), mpq_class(static_cast<long>(y))}; }

} // namespace

TEST_CASE("setup rejects wrong infinity types and bad weights")
{
    auto F = make_field(1);
    auto m5 = construct_minram(F, F->prime(5, 0));
    WeightParams w;
    CHECK_THROWS_AS(EisensteinSetup::make(w, m5, m5, std::nullopt, 7), Error); // phi2 must have type (-1, 0)
    WeightParams bad;
    bad.m = 0;
    bad.n = 1;
    CHECK_THROWS_AS(bad.validate(), Error);
    WeightParams bad2;
    bad2.m = 2;
    bad2.mp = 3;
    CHECK_THROWS_AS(bad2.validate(), Error);
}

TEST_CASE("setup bookkeeping: places, S, T and p-adic hypotheses")
{
    auto S = audit_setup();
    CHECK(S.M1 == S.phi1.conductor());
    CHECK(S.N.is_one());
    CHECK(S.places.size() == 3);
    int in_S = 0;
    for (auto& pl : S.places) in_S += pl.in_S;
    CHECK(in_S == 1); // P5 divides both conductors
    CHECK(S.hypotheses_hold());

    // p dividing a conductor and p | #(O/N)^* are flagged
    auto F7 = make_field(7);
    WeightParams w;
    w.k = 1;
    auto bad = EisensteinSetup::make(w, *construct_anticyclotomic(F7, 5, 1), HeckeChar::build(F7, -2, 0, {1, 0, 1}, {}, {0}),
                                     construct_minram(F7, F7->prime(11, 0)), 5);
    auto fails = bad.hypothesis_failures();
    CHECK(std::find(fails.begin(), fails.end(), "conductors of phi_i coprime to p") != fails.end());
    CHECK(std::find(fails.begin(), fails.end(), "#(O/N)^* coprime to p") != fails.end());
}

TEST_CASE("Hecke eigenvalues: closed form at unramified places and U_P at ramified ones")
{
    auto S = audit_setup();
    const QuadField& K = S.field();
    int unram = 0, ram = 0;
    for (auto& P : K.primes_upto(30)) {
        if (S.in_S(P)) continue;
        auto h = hecke_eigenvalue(S, P);
        if (h.closed_form) {
            ++unram;
            CHECK(close(h.value, *h.closed_form, 1e-10));
            CHECK(h.cosets == static_cast<int>(P.norm()) + 1);
        } else {
            ++ram;
            // U_P: q cosets, the newvector line is still preserved
            CHECK(h.cosets == static_cast<int>(P.norm()));
            CHECK(h.symbolic.terms().size() == 1);
        }
    }
    CHECK(unram > 5);
    CHECK(ram == 2);

    // trivial characters: a_v = 1 + q
    auto F = make_field(2);
    auto v = std::make_shared<LocalPlace>(F, F->prime(3, 0));
    auto U = LocalChar::unramified(1.0);
    auto e = LocalCharacterPair::make(v, U, U);
    Laurent2 T = hecke_apply(e, mat_int(1, 0, 0, 1));
    CHECK(close(e.value(T, 0.0), 1.0 + double(v->q()), 1e-12));
}

TEST_CASE("Hecke operator preserves the newvector line at random g")
{
    auto F = make_field(1);
    auto v = std::make_shared<LocalPlace>(F, F->prime(5, 0));
    auto mus = primitive_characters(v, 1);
    auto e = LocalCharacterPair::make(v, mus[0], LocalChar::unramified(1.0));
    // eigenvalue read at the coset representative (1 0; pi^r 1)
    Laurent2 lam = hecke_apply(e, lower_unipotent(*v, e.r));
    Laurent2 base = eval_newvector(e, lower_unipotent(*v, e.r));
    REQUIRE(base == Laurent2::mono(0, 0));
    std::vector<LocalMatrix> gs{mat_int(1, 0, 0, 1), mat_int(2, 1, 0, 3), mat(fe(1), fe(0, 1), fe(5), fe(1)),
                                mat(fe(5), fe(2), fe(0), fe(1)), mat(fe(1, 1), fe(3), fe(10), fe(7))};
    for (auto& g : gs) CHECK(hecke_apply(e, g) == lam * eval_newvector(e, g));
}

TEST_CASE("constant term: archimedean factor and local constants")
{
    auto S = audit_setup();
    auto c = constant_term_c(S, 0.0);
    // m = n = 0: -2 pi / sqrt(|d_F|) with |d_F| = 4
    CHECK(close(c.archimedean, cplx(-M_PI, 0), 1e-12));
    CHECK(!c.partial);
    REQUIRE(c.locals.size() == 2);
    for (auto& l : c.locals) {
        CHECK(l.supported);
        CHECK(l.nm_m1 == 1);
        CHECK(abs(l.value) == 1);
    }
    REQUIRE(c.alg_assembly);
    REQUIRE(c.alg_ratio);
    CHECK(close(*c.alg_assembly, -*c.alg_ratio * c.local_product.get_d(), 1e-12));

    // c' adds the S factors; at P5 the factor (1 - q) = -4 is a 7-adic unit
    auto cp = constant_term_cprime(S, 0.0);
    REQUIRE(cp.factors.size() == 1);
    CHECK(cp.factors[0].one_minus_q == -4);
    REQUIRE(cp.factors[0].ord_p_one_minus_q);
    CHECK(*cp.factors[0].ord_p_one_minus_q == 0);
    cplx prod = double(cp.factors[0].one_minus_q) * cp.factors[0].chi_over_nm * cp.factors[0].l_v;
    CHECK(close(cp.value, c.value * prod, 1e-10));
}

TEST_CASE("constant term at z > 0 agrees with L(z-1)/L(z)")
{
    auto sets = toroidal_setups();
    auto& S = sets[3].S; // D = 5, S place
    double z = 3.0;
    auto c = constant_term_c(S, z);
    cplx ratio = l_value(S.chi, z - 1).value / l_value(S.chi, z).value;
    CHECK(close(c.l_ratio, ratio, 1e-8));
    cplx arch = -2 * M_PI / std::sqrt(20.0) / (z + 1);
    CHECK(close(c.archimedean, arch, 1e-12));
}

TEST_CASE("toroidal factorization on the standard setups, with truncations")
{
    std::set<int> cases;
    for (auto& [name, S] : toroidal_setups()) {
        CAPTURE(name);
        auto t = toroidal_value(S, 4.0, 12);
        CHECK(t.pass);
        CHECK(t.rel_diff < 1e-10);
        for (auto& p : t.places) {
            cases.insert(p.case_no);
            REQUIRE(p.truncation);
            CHECK(close(*p.truncation, p.local, 1e-6));
        }
        // the printed sign differs from the local one exactly by theta_inf(-1)
        CHECK(close(t.display_printed * double(t.theta_inf_minus_one), t.display, 1e-12));
    }
    CHECK(cases == std::set<int>{1, 2, 3, 4, 5});
}

TEST_CASE("value at z = 0 matches the display times the twist factors")
{
    for (auto& [name, S] : toroidal_setups()) {
        CAPTURE(name);
        if (!S.w.in_window()) continue;
        auto t = torint_zero(S);
        CHECK(close(t.value, t.from_display, 1e-8));
        CHECK(!t.audit.empty());
        for (auto& a : t.audit)
            if (a.ord_p_trick) CHECK(*a.ord_p_trick == a.ord_p);
    }
}

TEST_CASE("integrality criterion: anticyclotomic chi takes branch (c), branches agree")
{
    auto F5 = make_field(5);
    auto xi = HeckeChar::build(F5, 2, 0, {1, 0, 1}, {}, {0});
    auto q7 = construct_minram(F5, F5->prime(7, 0));
    auto S = EisensteinSetup::make(WeightParams{}, q7, q7 * xi.inverse(), std::nullopt, 11);
    auto r = integrality_criterion(S);
    CHECK(r.verdict == Integrality::Integral);
    CHECK(r.branch_c);
    REQUIRE(r.conj_ratio);
    CHECK(close(*r.conj_ratio, 1.0, 1e-8));
    CHECK(r.branches_agree);

    // non-anticyclotomic chi: only conditional
    auto r2 = integrality_criterion(audit_setup());
    CHECK(r2.verdict == Integrality::Conditional);
    CHECK(r2.branches_agree);
    REQUIRE(r2.c0_from_a);
    REQUIRE(r2.c0_from_b);
    CHECK(close(*r2.c0_from_a, *r2.c0_from_b, 1e-8));
}

TEST_CASE("complex conjugate and anticyclotomy")
{
    auto F = make_field(7);
    auto g = construct_greenchar(F, 1);
    auto chi = g * g;
    auto cc = complex_conjugate(chi);
    CHECK(cc.a() == chi.b());
    CHECK(cc.b() == chi.a());
    for (auto& P : F->primes_upto(40))
        if (chi.coprime_to_conductor(P.ideal)) CHECK(close(cc.eval(P.ideal), std::conj(chi.eval(P.ideal)), 1e-10));
    CHECK(is_anticyclotomic(chi));
    CHECK(!is_anticyclotomic(construct_minram(make_field(1), make_field(1)->prime(5, 0))));
}

TEST_CASE("thm02 search: found cases, twist branch and obstructions")
{
    for (i64 D : {5, 6, 10}) {
        auto F = make_field(D);
        auto chi = HeckeChar::build(F, 2, 0, {1, 0, 1}, {}, {0});
        auto t = thm02_search(chi, 7);
        CAPTURE(D);
        CHECK(t.found);
        for (auto& a : t.audit) CHECK(a.pass);
    }
    // W(greenchar) = -1 for D = 11: needs the inert twist
    auto F11 = make_field(11);
    auto g = construct_greenchar(F11, 1);
    auto t11 = thm02_search(g * g, 17);
    CHECK(t11.found);
    CHECK(t11.twist.has_value());

    // sign flip
    auto F2 = make_field(2);
    auto g2 = construct_greenchar(F2, 1);
    auto flip = thm02_search(g2 * g2 * *construct_anticyclotomic(F2, 5, 1), 7);
    CHECK(!flip.found);
    CHECK(close(flip.condition, -1.0, 1e-9));
    CHECK(flip.obstruction.find("root-number condition") == 0);

    // ramified p is rejected before anything else
    auto F7 = make_field(7);
    auto g7 = construct_greenchar(F7, 1);
    auto r7 = thm02_search(g7 * g7, 7);
    CHECK(!r7.found);
    CHECK(r7.obstruction == "input hypotheses fail");
}

TEST_CASE("denominator report: asserted and conditional bounds")
{
    auto S = audit_setup();
    auto a = denominator_bound(S, true);
    CHECK(a.bound_asserted);
    CHECK(a.predicted_bound.find("conditional") == std::string::npos);
    auto b = denominator_bound(S, false);
    CHECK(!b.bound_asserted);
    CHECK(b.predicted_bound.find("conditional") == 0);
    CHECK(b.predicted_bound.find("L^alg(0, phi1 theta)") != std::string::npos);

    // p | #(O/N)^*: with theta of conductor P11 in D = 7, #(O/N)^* = 10 and p = 5
    auto F7 = make_field(7);
    WeightParams w;
    w.k = 1;
    auto S7 = EisensteinSetup::make(w, *construct_anticyclotomic(F7, 5, 1), HeckeChar::build(F7, -2, 0, {1, 0, 1}, {}, {0}),
                                    construct_minram(F7, F7->prime(11, 0)), 5);
    auto c = denominator_bound(S7, true);
    CHECK(!c.bound_asserted);
}
