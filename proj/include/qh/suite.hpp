#pragma once

#include "qh/json_io.hpp"

#include <string>
#include <vector>

namespace qh {

struct SuiteOptions {
    bool quick = false;
    unsigned seed = 17; // random coset samples only
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    json detail;
};

// criteria 1..10; 11 (determinism) is run_suite twice
CriterionResult run_criterion(int id, const SuiteOptions& opt);
// the exact-identity criteria run by verify-all --quick
std::vector<int> quick_criteria();
json suite_report(const std::vector<CriterionResult>& rs);
std::vector<CriterionResult> run_suite(const SuiteOptions& opt, const std::vector<int>& ids);

struct NamedSetup {
    std::string name;
    EisensteinSetup S;
};
// setups for the toroidal factorization, together covering local cases 1..5
// and both signs of theta_inf(-1)
std::vector<NamedSetup> toroidal_setups();
// D = 1, phi1 = minram(5), phi2 = phi1 (minram(13) minram(17))^-1, p = 7:
// one-sided ramification at every place of M
EisensteinSetup audit_setup();

} // namespace qh
