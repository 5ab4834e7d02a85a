#pragma once

#include "qh/cyclo.hpp"
#include "qh/ray_class.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qh {

using EpsFn = std::function<RootU(const OElem&)>;

// value of the character of (O/f)^* with exponents k on the Smith generators
RootU residue_char(const ResidueRing& R, const std::vector<i64>& k, const OElem& x);

// smallest divisor c of R.modulus() such that eps factors through (O/c)^*
IdealHNF conductor_of(const ResidueRing& R, const EpsFn& eps);

// Algebraic Hecke character on ideals.  On principal ideals coprime to the
// conductor eval((alpha)) = eps(alpha) alpha^a conj(alpha)^b.  The idelic
// character has archimedean component z^a zbar^b and takes the value
// 1/eval(P) on a uniformizer at an unramified prime P.
class HeckeChar {
public:
    HeckeChar() = default;

    // eps given by its values on the Smith generators of (O/modulus)^*;
    // class values are the principal n-th roots times zeta_n^{choice}
    static HeckeChar build(FieldPtr F, int a, int b, const IdealHNF& modulus,
                           const std::vector<RootU>& eps_gen_values,
                           const std::vector<i64>& class_value_choices = {});
    // eps given on units mod modulus; class generator values by callback
    // (empty callback: principal roots with the given choices)
    static HeckeChar from_parts(FieldPtr F, int a, int b, const IdealHNF& modulus, const EpsFn& eps,
                                const std::function<cplx(const IdealHNF&)>& gen_value = {},
                                const std::vector<i64>& class_value_choices = {});
    static HeckeChar trivial(FieldPtr F);
    static HeckeChar norm_power(FieldPtr F, int k);

    const QuadField& field() const { return *F_; }
    FieldPtr field_ptr() const { return F_; }
    int a() const { return a_; }
    int b() const { return b_; }
    // unitary exponent m = a - b
    int m() const { return a_ - b_; }
    const IdealHNF& conductor() const { return cond_; }
    const ResidueRing& residue_ring() const { return *R_; }
    const std::vector<RootU>& eps_gen_values() const { return eps_gens_; }
    const std::vector<IdealHNF>& class_gens() const { return cls_gens_; }
    const std::vector<cplx>& class_gen_values() const { return cls_vals_; }

    RootU eps(const OElem& x) const;
    RootU eps(const FieldElement& x) const;
    bool coprime_to_conductor(const IdealHNF& I) const { return F_->coprime(I, cond_); }
    cplx eval(const IdealHNF& I) const;
    cplx eval_principal(const FieldElement& beta) const;
    // lambda~ in the same convention: eval / Nm^{(a+b)/2}, of absolute value 1
    cplx eval_unitary(const IdealHNF& I) const;
    // idelic value at a uniformizer of an unramified prime: 1/eval(P)
    cplx idelic(const IdealHNF& P) const { return 1.0 / eval(P); }

    // local component of eps at a prime P | conductor
    RootU eps_local(const PrimeIdeal& P, const OElem& x) const;
    // idelic value lambda_v(pi) for pi in O with ord_v(pi) = 1
    cplx idelic_at(const PrimeIdeal& P, const OElem& pi) const;
    int cond_exponent(const PrimeIdeal& P) const;

    HeckeChar conj_c() const;
    HeckeChar star() const;
    HeckeChar inverse() const;
    HeckeChar operator*(const HeckeChar& o) const;
    HeckeChar twist_norm(int k) const;

    std::string describe() const;

private:
    FieldPtr F_;
    int a_ = 0, b_ = 0;
    IdealHNF cond_;
    std::shared_ptr<const ResidueRing> R_; // (O/conductor)^*
    std::vector<RootU> eps_gens_;
    std::vector<IdealHNF> cls_gens_;
    std::vector<i64> cls_orders_;
    std::vector<cplx> cls_vals_;

    void check_units() const;
};

bool same_character(const HeckeChar& x, const HeckeChar& y, int n_ideals = 100, double tol = 1e-9);

// standard constructions
HeckeChar construct_greenchar(FieldPtr F, int k = 1);
HeckeChar construct_minram(FieldPtr F, const PrimeIdeal& q);
// finite order anticyclotomic character of conductor Q^n at an inert prime,
// of the given order (0: smallest odd prime order available)
std::optional<HeckeChar> construct_anticyclotomic(FieldPtr F, i64 Q, int n = 1, i64 order = 0);

enum class QRestriction { Trivial, OmegaFQ };
struct RestrictionResult {
    QRestriction kind = QRestriction::Trivial;
    int norm_power = 0; // power of |.|
    std::string hypothesis;
};
RestrictionResult restrict_to_Q_class(const HeckeChar& lam, int nprimes = 20);

// ord_p of the idelic value lambda(x) for the finite idele with components
// given by the ideal J (coprime to the conductor); P is the prime above p
// attached to the chosen embedding into C_p
mpq_class ord_p_of_value(const HeckeChar& lam, const PrimeIdeal& P, const IdealHNF& J);
// same quantity via P_v^h = (alpha) for every prime factor of J
mpq_class ord_p_class_number_trick(const HeckeChar& lam, const PrimeIdeal& P, const IdealHNF& J);

} // namespace qh
