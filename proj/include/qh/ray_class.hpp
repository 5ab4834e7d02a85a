#pragma once

#include "qh/abelian.hpp"
#include "qh/quad_field.hpp"

#include <memory>
#include <vector>

namespace qh {

// (O/f)^* with a Smith-form presentation and a full discrete-log table.
class ResidueRing {
public:
    ResidueRing(FieldPtr F, const IdealHNF& f);

    const QuadField& field() const { return *F_; }
    FieldPtr field_ptr() const { return F_; }
    const IdealHNF& modulus() const { return f_; }
    i64 size() const { return f_.norm(); }
    i64 unit_order() const { return G_.order(); }
    const std::vector<i64>& orders() const { return G_.invariants(); }
    std::vector<OElem> generators() const;
    const std::vector<std::pair<PrimeIdeal, int>>& primes() const { return primes_; }

    i64 key(const OElem& u) const;
    OElem elem(i64 key) const;
    bool is_unit(const OElem& u) const;
    std::vector<i64> dlog(const OElem& u) const;
    OElem from_exponents(const std::vector<i64>& e) const { return elem(G_.element(e)); }
    // canonical representatives of all units, ordered by key
    std::vector<OElem> units() const;
    OElem mul(const OElem& u, const OElem& v) const;
    OElem reduce(const OElem& u) const { return F_->reduce(f_, u); }

private:
    FieldPtr F_;
    IdealHNF f_;
    std::vector<std::pair<PrimeIdeal, int>> primes_;
    AbelianGroup G_;
};

using ResiduePtr = std::shared_ptr<const ResidueRing>;

// Ray class group Cl_f(F).  An ideal I in class c is encoded by c and the
// orbit under global units of beta mod f, where (beta) = I R_c^{-1} for a
// fixed representative ideal R_c of class c.
class RayClassGroup {
public:
    RayClassGroup(FieldPtr F, const IdealHNF& f);

    const IdealHNF& modulus() const { return f_; }
    i64 order() const { return G_.order(); }
    const std::vector<i64>& orders() const { return G_.invariants(); }
    // prime ideals representing the Smith generators
    const std::vector<IdealHNF>& generators() const { return gen_primes_; }
    // primes used to build the presentation, and the relation matrix in
    // Smith form (diagonal)
    const std::vector<IdealHNF>& building_primes() const { return build_primes_; }
    IMat relations() const;
    i64 unit_image_order() const { return unit_image_; }
    std::vector<i64> dlog(const IdealHNF& I) const;
    i64 key(const IdealHNF& I) const;

private:
    FieldPtr F_;
    IdealHNF f_;
    std::unique_ptr<ResidueRing> R_;
    std::vector<IdealHNF> reps_; // R_c
    std::vector<i64> reps_inv_;  // residue key of Nm(R_c)^{-1}
    std::vector<std::vector<i64>> gamma_;
    std::vector<OElem> unit_res_;
    i64 unit_image_ = 1;
    AbelianGroup G_;
    std::vector<IdealHNF> build_primes_, gen_primes_;

    i64 orbit_key(int c, const OElem& r) const;
    i64 mul_keys(i64 x, i64 y) const;
};

} // namespace qh
