#pragma once

#include "totlab/u128.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace totlab::verify {

// Seed for every randomized property check; fixed so reruns are
// byte-identical.
inline constexpr u64 PROPERTY_SEED = 20260814;

struct CriterionResult {
    int id;
    std::string name;
    bool correct;          // the mathematical check itself
    double seconds;        // wall clock for the check
    double budget_seconds; // per-criterion runtime budget
    bool passed;           // correct && within budget
    std::string detail;    // counts on success, first mismatch on failure
};

// Criterion ids run 1..12.
const std::vector<int>& all_criteria();

// Suites: fermat-power, three-power, bounds, parity, multiplicativity, all.
// Throws InvalidInputError for anything else.
std::vector<int> suite_criteria(std::string_view suite);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(std::string_view suite);

} // namespace totlab::verify
