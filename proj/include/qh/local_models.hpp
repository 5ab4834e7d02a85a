#pragma once

#include "qh/local_place.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qh {

// Finite sums c_{ij} X1^i X2^j with c_{ij} in Z[zeta].  Values of induced
// vectors for eta = (eta1 |.|^{z/2}, eta2 |.|^{-z/2}) live here with
// X1 = eta1(pi) q^{-z/2}, X2 = eta2(pi) q^{z/2}; the coefficients carry the
// unit parts.
class Laurent2 {
public:
    using Key = std::pair<int, int>;

    static Laurent2 mono(int i, int j, const RootU& c = RootU(), i64 coef = 1);

    void add(int i, int j, const RootU& c, i64 coef = 1);
    Laurent2& operator+=(const Laurent2& o);
    Laurent2 operator+(const Laurent2& o) const { Laurent2 r = *this; r += o; return r; }
    Laurent2 operator-() const;
    Laurent2 operator-(const Laurent2& o) const { return *this + (-o); }
    Laurent2 operator*(const Laurent2& o) const;
    Laurent2 times_root(const RootU& c) const;
    Laurent2 shift(int di, int dj) const;

    bool is_zero() const;
    bool operator==(const Laurent2& o) const { return (*this - o).is_zero(); }
    const std::map<Key, CycloZ>& terms() const { return t_; }
    cplx value(cplx X1, cplx X2) const;
    std::string str() const;

private:
    std::map<Key, CycloZ> t_;
};

// (a b; c d) with entries in F, viewed in GL2(F_v)
using LocalMatrix = std::array<FieldElement, 4>;

LocalMatrix mat(const FieldElement& a, const FieldElement& b, const FieldElement& c, const FieldElement& d);
LocalMatrix mat_int(i64 a, i64 b, i64 c, i64 d);
LocalMatrix mat_mul(const QuadField& K, const LocalMatrix& x, const LocalMatrix& y);
FieldElement mat_det(const QuadField& K, const LocalMatrix& g);
// (1 0; pi^j 1)
LocalMatrix lower_unipotent(const LocalPlace& v, int j);
// (1 x; 0 1)
LocalMatrix upper_unipotent(const FieldElement& x);

enum class IwasawaBranch { Upper, GammaPivot, DeltaPivot };

// g = b k with b upper triangular and k in GL2(O_v).
//   gamma = 0:                 b = g, k = 1
//   ord gamma <= ord delta:    b = (det/gamma, alpha; 0, gamma), k = (0 -1; 1 delta/gamma)
//   otherwise:                 b = (det/delta, beta; 0, delta),  k = (1 0; gamma/delta 1)
struct Iwasawa {
    LocalMatrix b, k;
    IwasawaBranch branch;
};
Iwasawa iwasawa(const LocalPlace& v, const LocalMatrix& g);
bool in_gl2_o(const LocalPlace& v, const LocalMatrix& k);

// eta = (eta1, eta2) at v; P^r || cond(eta1), P^s || cond(eta1) cond(eta2)
struct LocalCharacterPair {
    PlacePtr place;
    LocalChar eta1, eta2;
    int r = 0, s = 0;

    // exponents taken from the exact conductors
    static LocalCharacterPair make(PlacePtr v, LocalChar eta1, LocalChar eta2);
    bool unramified() const { return s == 0; }
    cplx X1(cplx z) const;
    cplx X2(cplx z) const;
    cplx value(const Laurent2& v, cplx z) const { return v.value(X1(z), X2(z)); }
};

// index j in 0..s of the double coset B (1 0; pi^j 1) K^1(P^s) containing g
int newvector_coset(const LocalCharacterPair& e, const LocalMatrix& g);
// g = (a b; 0 d) (1 0; pi^r 1) k with k in K^1(P^s): eta1(a) eta2(d) |a/d|^{z/2}; 0 otherwise
Laurent2 eval_newvector(const LocalCharacterPair& e, const LocalMatrix& g);
// spherical vector of (eta1 mu, eta2 mu) for unramified eta; mu(pi) = 1
Laurent2 eval_spherical(const LocalCharacterPair& e, const LocalChar& mu, const LocalMatrix& g);
inline Laurent2 eval_spherical(const LocalCharacterPair& e, const LocalMatrix& g)
{
    return eval_spherical(e, LocalChar::unramified(1.0), g);
}

struct IdentityCheck {
    Laurent2 lhs, rhs;
    bool pass = false;
};

// Psi^new_eta(g) mu(det g) against Psi^0_{eta mu}(g)
IdentityCheck twist_l32(const LocalCharacterPair& e, const LocalChar& mu, const LocalMatrix& g);

// pair (eta1 mu, eta2 mu) with r = cond mu, s = 2 cond mu
LocalCharacterPair twisted_pair(const LocalCharacterPair& e, const LocalChar& mu);

// sum_{x in (O/P^r)^*} mu^{-1}(x) Psi^0_{eta mu}(g (1 x/pi^r; 0 1))
//   = mu^{-1}(-1) (eta2/eta1)(pi^r) (1 - (eta1/eta2)(pi)) Psi^new_{eta mu}(g)
IdentityCheck twisted_sum_p32(const LocalCharacterPair& e, const LocalChar& mu, const LocalMatrix& g);

// every character of (O/P^r)^* of exact conductor P^r (mu(pi) = 1)
std::vector<LocalChar> primitive_characters(PlacePtr v, int r);

struct TwistedSumBatch {
    i64 characters = 0;
    i64 checks = 0;
    i64 passed = 0;
    std::vector<std::string> failures;
};
// all primitive mu of conductor P^r, all g in gs, unramified eta1 = eta2 = 1
// (X1, X2 stay formal)
TwistedSumBatch twisted_sum_batch(PlacePtr v, int r, const std::vector<LocalMatrix>& gs);
// (1 0; pi^j 1) for j = 0..2r followed by n_random products b (1 0; pi^j 1) k
std::vector<LocalMatrix> coset_sample(const LocalPlace& v, int r, int n_random, unsigned seed);

// Psi^{new,theta}(g) = sum_{y in (O/P^k)^*} theta^{-1}(y) Psi^new_eta(g (1 -y/pi^k; 0 1))
// compared with Psi^new_{eta theta}(g) theta^{-1}(sign det g) (eta2/eta1)(pi^k) L_v^{-1}(eta1/eta2, 0)
// for sign = -1 (as usually stated) and sign = +1.  theta(pi) = 1.
struct ThetaTwistCheck {
    Laurent2 lhs, rhs_minus, rhs_plus;
    Laurent2 factor; // (eta2/eta1)(pi^k) (1 - X1/X2)
    RootU theta_minus_one;
    bool pass_minus = false, pass_plus = false;
};
ThetaTwistCheck theta_twist_newvector(const LocalCharacterPair& e, const LocalChar& theta, const LocalMatrix& g);

// local factors of the toroidal integral at a finite place
struct ToroidalLocal {
    PlacePtr place;
    LocalChar phi1, phi2, theta;
    int r = 0, s = 0, k = 0; // P^r || M1, P^s || M1 M2, P^k || N

    static ToroidalLocal make(PlacePtr v, LocalChar phi1, LocalChar phi2, LocalChar theta);
    int natural_case() const;
};
// closed forms of cases 1..5 at real z; throws if the case does not match
cplx local_toroidal_factor(const ToroidalLocal& t, int case_no, double z);
std::string local_toroidal_formula(int case_no);
// sum over t in [-T, T] and unit classes of theta(x) Psi((1 0; 1 x)); for
// v in T the twisted vector Psi^{new,theta} is summed directly
cplx toroidal_truncation(const ToroidalLocal& t, double z, int T);

// (-1)^{m-m'}/2 Gamma(z/2+m-m'+1) Gamma(z/2+m'+1) / Gamma(z+m+2)
double archimedean_factor(int m, int mp, double z);
// (-1)^{m-m'} int_0^inf rho^{z+2+2(m-m')} / (1+rho^2)^{z+2+m} drho/rho, numerically
double archimedean_quadrature(int m, int mp, double z);

} // namespace qh
