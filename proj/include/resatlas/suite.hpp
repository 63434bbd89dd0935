#pragma once

#include <string>
#include <vector>

#include "resatlas/budget.hpp"

namespace resatlas {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;  // 0 means no wall-clock limit
};

struct SuiteOptions {
    Budget budget;
    // Deliberate defect for exercising the failure path; "monomial-d2-sign"
    // flips one entry of the monomial d_2 before it is verified.
    std::string inject;
};

// The fourteen acceptance checks, in order. A check that throws is reported
// as failed with the exception text in `detail`.
std::vector<CheckResult> run_acceptance_suite(const SuiteOptions& opts = {});
CheckResult run_acceptance_check(int id, const SuiteOptions& opts = {});
int acceptance_check_count();
const std::vector<std::string>& known_injections();

}  // namespace resatlas
