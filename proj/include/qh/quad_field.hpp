#pragma once

#include "qh/arith.hpp"

#include <gmpxx.h>

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qh {

// x + y*omega with integer coordinates
struct OElem {
    i64 x = 0;
    i64 y = 0;
    bool operator==(const OElem& o) const { return x == o.x && y == o.y; }
    bool operator!=(const OElem& o) const { return !(*this == o); }
    bool operator<(const OElem& o) const { return x != o.x ? x < o.x : y < o.y; }
    bool is_zero() const { return x == 0 && y == 0; }
};

// x + y*omega with rational coordinates
struct FieldElement {
    mpq_class x;
    mpq_class y;
    bool operator==(const FieldElement& o) const { return x == o.x && y == o.y; }
};

// Z*a + Z*(b + c*omega), c | a, c | b, 0 <= b < a
struct IdealHNF {
    i64 a = 1;
    i64 b = 0;
    i64 c = 1;
    i64 norm() const { return a * c; }
    bool operator==(const IdealHNF& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const IdealHNF& o) const { return !(*this == o); }
    bool operator<(const IdealHNF& o) const
    {
        if (norm() != o.norm()) return norm() < o.norm();
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool is_one() const { return a == 1 && c == 1; }
    std::string str() const;
};

enum class SplitKind { Split, Inert, Ramified };

struct PrimeIdeal {
    i64 p = 0;
    int index = 0;
    SplitKind kind = SplitKind::Split;
    IdealHNF ideal;
    int e = 1; // ramification index
    int f = 1; // residue degree
    i64 norm() const { return ideal.norm(); }
    bool operator<(const PrimeIdeal& o) const
    {
        return p != o.p ? p < o.p : index < o.index;
    }
    bool operator==(const PrimeIdeal& o) const { return p == o.p && index == o.index; }
};

struct PrimeFactor {
    i64 p = 0;
    SplitKind kind = SplitKind::Split;
    std::vector<PrimeIdeal> primes_above;
};

struct ClassGroupGen {
    IdealHNF ideal;
    i64 order = 1;
};

class QuadField {
public:
    explicit QuadField(i64 D);

    i64 D() const { return D_; }
    i64 dF() const { return dF_; }
    // omega^2 = t*omega - n
    i64 t() const { return t_; }
    i64 n() const { return n_; }
    const IdealHNF& different() const { return diff_; }
    i64 class_number() const { return h_; }
    const std::vector<ClassGroupGen>& class_group() const { return cgens_; }
    int num_units() const { return w_; }
    // generator of the unit group (a primitive w-th root of unity)
    OElem unit_gen() const;
    std::vector<OElem> units() const;

    // elements
    OElem mul(const OElem& u, const OElem& v) const;
    OElem conj(const OElem& u) const { return {u.x + t_ * u.y, -u.y}; }
    i64 norm(const OElem& u) const;
    i64 trace(const OElem& u) const { return 2 * u.x + t_ * u.y; }
    OElem pow(OElem u, i64 e) const;
    std::complex<double> embed(const OElem& u) const;
    std::complex<double> embed(const FieldElement& u) const;
    FieldElement mul(const FieldElement& u, const FieldElement& v) const;
    FieldElement conj(const FieldElement& u) const;
    mpq_class norm(const FieldElement& u) const;
    FieldElement inverse(const FieldElement& u) const;
    static FieldElement to_fe(const OElem& u) { return {mpq_class(static_cast<long>(u.x)), mpq_class(static_cast<long>(u.y))}; }

    // ideals
    IdealHNF hnf(std::vector<OElem> gens) const;
    IdealHNF principal(const OElem& u) const { return hnf({u}); }
    IdealHNF principal_int(i64 m) const { return {m < 0 ? -m : m, 0, m < 0 ? -m : m}; }
    IdealHNF mul(const IdealHNF& I, const IdealHNF& J) const;
    IdealHNF pow(const IdealHNF& I, i64 e) const;
    IdealHNF conj(const IdealHNF& I) const;
    IdealHNF add(const IdealHNF& I, const IdealHNF& J) const;
    IdealHNF intersect_lcm(const IdealHNF& I, const IdealHNF& J) const;
    bool contains(const IdealHNF& I, const OElem& u) const;
    // I | J  (J subset of I)
    bool divides(const IdealHNF& I, const IdealHNF& J) const;
    // J / I for I | J
    IdealHNF quotient(const IdealHNF& J, const IdealHNF& I) const;
    bool coprime(const IdealHNF& I, const IdealHNF& J) const { return add(I, J).is_one(); }
    bool coprime(const IdealHNF& I, const OElem& u) const { return add(I, principal(u)).is_one(); }
    // canonical representative of u modulo I: 0 <= y < c, 0 <= x < a
    OElem reduce(const IdealHNF& I, i128 x, i128 y) const;
    OElem reduce(const IdealHNF& I, const OElem& u) const { return reduce(I, u.x, u.y); }
    std::vector<OElem> basis(const IdealHNF& I) const
    {
        return {{I.a, 0}, {I.b, I.c}};
    }

    // primes
    PrimeFactor split_prime(i64 p) const;
    PrimeIdeal prime(i64 p, int index) const;
    std::vector<std::pair<PrimeIdeal, int>> factor(const IdealHNF& I) const;
    // all prime ideals of norm <= X, ordered by (norm, p, index)
    std::vector<PrimeIdeal> primes_upto(i64 X) const;
    int ord(const PrimeIdeal& P, const IdealHNF& I) const;
    int ord(const PrimeIdeal& P, const OElem& u) const;

    // class group
    int class_index(const IdealHNF& I) const;
    IdealHNF class_rep(int idx) const;
    // exponents of the class of I on class_group() generators
    const std::vector<i64>& class_dlog(const IdealHNF& I) const { return cdlog_.at(class_index(I)); }
    std::optional<OElem> principal_test(const IdealHNF& I) const;
    // x with x ≡ 1 mod I, x ≡ 0 mod J for coprime I, J
    OElem crt_idempotent(const IdealHNF& I, const IdealHNF& J) const;

    std::string elem_str(const OElem& u) const;

private:
    i64 D_, dF_, t_, n_;
    int w_;
    i64 h_;
    IdealHNF diff_;
    std::vector<std::array<i64, 3>> forms_; // reduced forms (A,B,C)
    std::vector<ClassGroupGen> cgens_;
    std::vector<std::vector<i64>> cdlog_;

    void build_class_group();
};

using FieldPtr = std::shared_ptr<const QuadField>;
FieldPtr make_field(i64 D);

std::array<i64, 3> reduce_form(i64 A, i64 B, i64 C);
std::vector<std::array<i64, 3>> reduced_forms(i64 disc);

} // namespace qh
