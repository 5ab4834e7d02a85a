#pragma once

#include "qh/local_place.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qh {

// S = sum over (O/P^e)^* of chi(eps) e_v(eps pi^{-k}); chi given on residues
struct LocalGaussSum {
    Cyclo S;
    i64 abs2 = 0;           // |S|^2, computed exactly
    bool abs2_exact = false; // |S|^2 was a rational integer
};
LocalGaussSum local_gauss_sum(const LocalPlace& v, int e, const std::function<RootU(const OElem&)>& chi);

struct GaussSumResult {
    PrimeIdeal place;
    int modulus_order = 0; // ord_v(f D)
    int cond_exp = 0;
    bool correction = false; // v does not divide f: value is lambda(D_v^{-1})
    Cyclo exact;              // the finite sum S (without lambda_v(pi)^{-k})
    i64 abs2 = 0;
    bool abs2_exact = false;
    OElem uniformizer;
    cplx value;         // tau_v(lambda)
    cplx unitary_value; // tau_v(lambda~)
};
GaussSumResult gauss_sum(const HeckeChar& lam, const PrimeIdeal& v);

// W(lambda) = i^{-|m|} conj(Nm(f)^{-1/2} prod tau_v(lambda~) prod lambda~(D_v^{-1})),
// the constant in Lambda(s, lambda~) = W Lambda(1 - s, conj lambda~) with
// Lambda(s) = (sqrt(|d_F| Nm f) / 2 pi)^s Gamma(s + |m|/2) L(s)
struct RootNumber {
    cplx value;
    int m = 0;
    cplx i_factor;
    double norm_factor = 1; // Nm(f)^{-1/2}
    cplx tau_product{1, 0};
    cplx correction_product{1, 0};
    std::vector<GaussSumResult> taus;
};
RootNumber root_number(const HeckeChar& lam);

struct RootProdResult {
    cplx lhs, rhs;
    int nu = 0;
    bool sign_case = false; // (k1 - j1)(k2 - j2) < 0
    bool pass = false;
};
RootProdResult rootprod_check(const HeckeChar& l1, const HeckeChar& l2);

// all primitive characters of (O/P^e)^* with Nm(P)^e <= max_norm
struct GaussMagnitudeReport {
    i64 characters = 0;
    i64 passed = 0;
    i64 places = 0;
    std::vector<std::string> failures;
};
GaussMagnitudeReport check_gauss_magnitudes(FieldPtr F, i64 max_norm);

// Dirichlet coefficients of L(s, lambda~) (unitary normalization), n <= X
std::vector<cplx> dirichlet_coefficients(const HeckeChar& lam, i64 X);

struct LValue {
    cplx value;
    double error = 0;
    std::string method;
    i64 bound = 0;
};
struct LOptions {
    i64 bound = 0;     // truncation; 0 chooses automatically
    double cut = 1.0;  // splitting parameter of the functional equation sums
};
// L(s, lambda) = prod (1 - lambda(P) Nm(P)^{-s})^{-1}, lambda(P) = 1/eval(P)
LValue l_value(const HeckeChar& lam, cplx s, const LOptions& opt = {});
// truncated Euler product over primes of norm <= X
cplx euler_product(const HeckeChar& lam, cplx s, i64 X);
// root number recovered from the functional equation with two cut values
cplx afe_root_number(const HeckeChar& lam, double s_unitary = 0.5);

// L^alg(0, lambda) = Omega^{b-a} (2 pi / sqrt d_F)^{-b} Gamma(a) L(0, lambda).
// Without a period (RATIO_MODE) this throws.
LValue l_alg(const HeckeChar& lam, std::optional<cplx> Omega);
// L^alg(0, l1) / L^alg(0, l2); requires b1 - a1 = b2 - a2 so Omega cancels
LValue l_alg_ratio(const HeckeChar& l1, const HeckeChar& l2);

} // namespace qh
