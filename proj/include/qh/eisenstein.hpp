#pragma once

#include "qh/analytic.hpp"
#include "qh/local_models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qh {

// m >= n >= 0, twist indices 0 <= m' <= m, 0 <= n' <= n
struct WeightParams {
    int m = 0, n = 0, k = 0, l = 0;
    int mp = 0, np = 0;

    void validate() const;
    bool in_window() const { return n - 1 < mp + np && mp + np < m + 1; }
};

struct Hypothesis {
    std::string name;
    bool status = false;
    std::string source;
};

// data at a finite place dividing M1 M2 N
struct SetupPlace {
    PrimeIdeal P;
    PlacePtr place;
    int r = 0, t = 0, s = 0, kN = 0; // P^r || M1, P^t || M2, P^s || M1 M2, P^kN || N
    bool chi_ramified = false;
    bool in_S = false, in_T = false;
    LocalChar phi1, phi2, theta;
};

// Case (A): phi1 of type (1-k, -n-l), phi2 of type (-m-k-1, -l), chi = phi1/phi2
// of type (m+2, -n), theta of type (m-m'+k, n-n'+l)
struct EisensteinSetup {
    WeightParams w;
    HeckeChar phi1, phi2, chi, theta;
    IdealHNF M1, M2, M, N;
    i64 p = 0; // 0: no prime fixed, p-adic hypotheses are reported as failing
    std::vector<SetupPlace> places;
    std::vector<Hypothesis> hypotheses;

    static EisensteinSetup make(const WeightParams& w, const HeckeChar& phi1, const HeckeChar& phi2,
                                const std::optional<HeckeChar>& theta = std::nullopt, i64 p = 0);
    const QuadField& field() const { return phi1.field(); }
    const SetupPlace* find(const PrimeIdeal& P) const;
    bool in_S(const PrimeIdeal& P) const;
    bool hypotheses_hold() const;
    std::vector<std::string> hypothesis_failures() const;
};

// smallest prime above p used for ord_p (throws for ramified p)
PrimeIdeal p_adic_prime(const QuadField& K, i64 p);

struct HeckeEigenvalue {
    PrimeIdeal P;
    Laurent2 symbolic; // X1 = phi1_v(pi), X2 = phi2_v(pi)
    cplx value;
    std::optional<cplx> closed_form; // phi2(P) + Nm(P) phi1(P) for v not dividing M1 M2
    int cosets = 0;
};
// (T Psi)(g) = sum_i Psi(g gamma_i) over K (pi 0; 0 1) K = U gamma_i K
Laurent2 hecke_apply(const LocalCharacterPair& e, const LocalMatrix& g);
HeckeEigenvalue hecke_eigenvalue(const EisensteinSetup& S, const PrimeIdeal& P);

struct LocalConstant {
    PrimeIdeal P;
    bool supported = false;
    int sign = 1;        // phi2_v(-1)
    i64 nm_m1 = 1;       // Nm(M1_v)
    mpq_class value = 1; // sign / Nm(M1_v)
};

struct ConstantTerm {
    double z = 0;
    cplx archimedean;   // d_F^{-1/2} 2 pi / (z+m+1) (-1)^{n+1}
    cplx l_ratio;       // L(z-1, chi) / L(z, chi)
    double l_error = 0;
    std::vector<LocalConstant> locals;
    mpq_class local_product = 1;
    bool partial = false; // some c_v unsupported
    cplx value;
    // z = 0 only: Omega-free ratio L^alg(-1, chi)/L^alg(0, chi) and the
    // assembly (-1)^{n+1} ratio prod c_v
    std::optional<cplx> alg_ratio;
    std::optional<cplx> alg_assembly;
};
ConstantTerm constant_term_c(const EisensteinSetup& S, double z);

struct SFactor {
    PrimeIdeal P;
    i64 one_minus_q = 0;
    cplx chi_over_nm; // chi_v(pi)^r / q^r
    cplx l_v;         // L_v(z, chi)
    std::optional<int> ord_p_one_minus_q;
    std::optional<mpq_class> ord_p_chi_over_nm;
};
struct ConstantTermPrime {
    ConstantTerm c;
    std::vector<SFactor> factors;
    cplx value;
};
ConstantTermPrime constant_term_cprime(const EisensteinSetup& S, double z);

struct ToroidalPlace {
    PrimeIdeal P;
    int case_no = 0;
    std::string formula;
    cplx local;
    std::optional<cplx> truncation;
};

// Global value of the toroidal integral of the newvector at real z,
// the display with the printed sign (-1)^{n-n'+k+l}/2 and with the sign
// (-1)^{m-m'}/2 that the local computation produces, against the product of
// local factors.
struct ToroidalValue {
    double z = 0;
    cplx L1, L2, L3; // L(z/2, phi1 theta), L(z/2, (phi2 theta)^-1), L^S(z, chi)
    double l_error = 0;
    double gamma_ratio = 0;
    i64 units = 1; // #(O/N)^*
    cplx explicit_factor; // (theta phi2)^-1(M1 N) Nm(M1 N)^{-z/2} (phi2/phi1)(N) Nm(N)^z
    int sign_printed = 1, sign_local = 1;
    int theta_inf_minus_one = 1;
    cplx display_printed, display;
    cplx product;
    double archimedean = 0;
    std::vector<ToroidalPlace> places;
    double rel_diff = 0;
    bool pass = false;
};
// truncation > 0 also sums the local integrals directly at each place
ToroidalValue toroidal_value(const EisensteinSetup& S, double z, int truncation = 0, double tol = 1e-8);

struct AuditEntry {
    std::string factor;
    mpq_class ord_p;
    std::optional<mpq_class> ord_p_trick; // class-number trick, for character values
    bool is_unit = false;
};

// I(phi, theta, Psi^twist, 0) = L(0, phi1 theta) L(0, (phi2 theta)^-1) / L(0, chi)
//   * Gamma(m-m'+1) Gamma(m'+1) / Gamma(m+2) * C(M1, S, N)
struct TorintZero {
    std::string symbolic;
    cplx L1, L2, L3;
    double l_error = 0;
    double gamma_ratio = 0;
    cplx C, C_printed;
    cplx value, value_printed;
    double error = 0;
    // display at z = 0 times the twist factors mu^-1(-1) (X2/X1)^r (1 - X1/X2) at v in S
    cplx from_display;
    std::vector<AuditEntry> audit;
};
TorintZero torint_zero(const EisensteinSetup& S);

enum class Integrality { Integral, Conditional, Fails };
struct IntegralityResult {
    Integrality verdict = Integrality::Fails;
    std::vector<Hypothesis> hypotheses;
    std::string ratio_token;
    cplx ratio; // L^alg(-1, chi)/L^alg(0, chi)
    bool branch_b = false, branch_c = false;
    std::optional<cplx> conj_ratio;       // L(0, chi bar)/L(0, chi)
    std::optional<cplx> root_number;      // W(chi)
    std::optional<cplx> c0_from_a, c0_from_b; // c(phi, 0) through (a) and through (b)
    bool branches_agree = true;
};
IntegralityResult integrality_criterion(const EisensteinSetup& S);

// chi bar(I) = conj chi(I)
HeckeChar complex_conjugate(const HeckeChar& chi);
bool is_anticyclotomic(const HeckeChar& chi, int n_ideals = 100);

struct Thm02Check {
    std::string name;
    bool pass = false;
    std::string detail;
};
struct Thm02Result {
    bool found = false;
    int case_used = 0; // 1: split conductor, 2: m = n anticyclotomic
    std::optional<HeckeChar> phi1, phi2;
    std::optional<HeckeChar> twist; // anticyclotomic correction of greenchar
    cplx condition{0, 0};            // omega(M) tau(chi~)/sqrt Nm(M)
    std::vector<Hypothesis> hypotheses;
    std::vector<Thm02Check> audit;
    std::string obstruction;
};
Thm02Result thm02_search(const HeckeChar& chi, i64 p);

struct DenominatorReport {
    ConstantTerm c_phi0;
    ConstantTermPrime c_prime;
    TorintZero torint;
    std::vector<AuditEntry> unit_audit;
    std::vector<Hypothesis> hypotheses;
    bool bound_asserted = false;
    std::string predicted_bound;
};
DenominatorReport denominator_bound(const EisensteinSetup& S, bool assert_nonvanishing);

} // namespace qh
