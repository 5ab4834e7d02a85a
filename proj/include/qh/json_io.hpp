#pragma once

#include "qh/eisenstein.hpp"

#include "json.hpp"

#include <string>

namespace qh {

using json = nlohmann::ordered_json;

// malformed configuration; key is a JSON pointer to the offending entry
struct ConfigError : Error {
    std::string key;
    ConfigError(std::string k, const std::string& msg) : Error(msg), key(std::move(k)) {}
};

json read_json_file(const std::string& path);

// doubles are written with a fixed number of significant digits so that
// reports are byte-stable
json num(double x);
json to_json(cplx z);
json to_json(const RootU& z);
// {cyclotomic_order, coefficients, decimal}
json to_json(const Cyclo& c);
json to_json(const CycloZ& c);
json to_json(const IdealHNF& I);
json to_json(const PrimeIdeal& P);
json to_json(const mpq_class& q);
json to_json(const Laurent2& L);
json to_json(const Hypothesis& h);
json to_json(const std::vector<Hypothesis>& hs);

// Character specs.  Raw form:
//   {D, a, b, modulus: [a,b,c], eps: {order: N, generator_images: [k_i]}, class_values: [m_j]}
// with eps on the Smith generators of (O/modulus)^* equal to zeta_N^{k_i}
// (N defaults to the exponent of the group).  Constructions:
//   {D, construct: "greenchar", k}        {D, construct: "minram", prime: [p, index]}
//   {D, construct: "anticyclotomic", Q, n, order}
//   {D, construct: "trivial"}              {D, construct: "norm_power", k}
//   {D, construct: "product", factors: [spec, ...]}
// followed by optional modifiers inverse, conj, star (bools) and twist_norm (int).
// D may be omitted when a default field is supplied.
HeckeChar char_from_json(const json& j, FieldPtr F = nullptr, const std::string& where = "");

// {D, weights: {m, n, k, l, mp, np}, phi1, phi2, theta?, p?}
EisensteinSetup setup_from_json(const json& j);

json field_report(const QuadField& K);
json char_report(const HeckeChar& lam);
json to_json(const LValue& L);
json to_json(const GaussSumResult& g);
json to_json(const RootNumber& r);
json to_json(const RootProdResult& r);
json to_json(const ConstantTerm& c);
json to_json(const ConstantTermPrime& c);
json to_json(const ToroidalValue& t);
json to_json(const TorintZero& t);
json to_json(const AuditEntry& a);
json to_json(const IntegralityResult& r);
json to_json(const Thm02Result& r);
// {c_phi0, c_prime, torint: {symbolic, numeric, error}, unit_audit, predicted_bound, hypotheses}
json to_json(const DenominatorReport& r);

} // namespace qh
