#pragma once

#include "qh/hecke_char.hpp"

#include <functional>
#include <memory>

namespace qh {

// numerator/denominator split x = (X + Y omega) / den with integral X, Y
struct SplitElem {
    mpz_class X, Y, den;
};
SplitElem split_elem(const FieldElement& x);

// The completion F_v at a finite prime, with a fixed uniformizer pi in O.
// Elements are exact elements of F; valuations and unit residues are
// computed from the global representative.
class LocalPlace {
public:
    // pi = p when P is unramified and (p)/P is coprime to avoid, otherwise the
    // first small element of valuation one whose cofactor is coprime to avoid
    LocalPlace(FieldPtr F, const PrimeIdeal& P, const IdealHNF& avoid = {1, 0, 1});

    const QuadField& field() const { return *F_; }
    FieldPtr field_ptr() const { return F_; }
    const PrimeIdeal& prime() const { return P_; }
    const OElem& uniformizer() const { return pi_; }
    i64 q() const { return P_.norm(); }
    i64 p() const { return P_.p; }
    // exponent of P in the different
    int diff_exp() const { return d_; }

    int ord(const FieldElement& x) const;
    int ord(const OElem& x) const { return ord(QuadField::to_fe(x)); }
    // x * pi^k
    FieldElement shift(const FieldElement& x, int k) const;
    // residue of the unit x / pi^{ord x} modulo P^E (canonical representative)
    OElem unit_residue(const FieldElement& x, int E) const;
    OElem unit_residue(const OElem& x, int E) const { return unit_residue(QuadField::to_fe(x), E); }
    // e_v(x) = exp(-2 pi i {Tr_{F_v/Q_p} x}_p) as an element of Q/Z
    RootU additive(const FieldElement& x) const;

    IdealHNF power(int E) const;

private:
    FieldPtr F_;
    PrimeIdeal P_;
    OElem pi_;
    FieldElement pi_fe_, pi_inv_;
    int d_ = 0;

    int ord_int(const mpz_class& X, const mpz_class& Y) const;
};

using PlacePtr = std::shared_ptr<const LocalPlace>;

// Character of F_v^*: a character of (O/P^cond)^* on units and a complex
// value on the fixed uniformizer.
struct LocalChar {
    int cond = 0;
    std::function<RootU(const OElem&)> unit; // empty: trivial on units
    cplx at_pi{1.0, 0.0};

    RootU on_unit(const LocalPlace& v, const FieldElement& u) const
    {
        if (cond == 0 || !unit) return RootU();
        return unit(v.unit_residue(u, cond));
    }
    cplx operator()(const LocalPlace& v, const FieldElement& x) const;

    static LocalChar unramified(cplx value) { return {0, {}, value}; }
    // character of (O/P^e)^* given by exponents on the Smith generators
    static LocalChar from_residue(std::shared_ptr<const ResidueRing> R, const std::vector<i64>& k, cplx at_pi = 1.0);
    // local component at v of a global character (conductor exponent, eps_local,
    // value on pi from the idelic character)
    static LocalChar of(const HeckeChar& lam, const LocalPlace& v);

    LocalChar inverse() const;
    LocalChar operator*(const LocalChar& o) const;
    // exact conductor exponent (cond is only an upper bound after products)
    int exact_conductor(const LocalPlace& v) const;
};

} // namespace qh
