#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weightlab::suite {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // deterministic numbers only, no timings
};

// Criteria 1-12 under a fixed thread cap (0 keeps the ambient cap). The
// CSV rendering contains nothing thread- or time-dependent, so comparing
// renderings across thread caps is the determinism probe.
struct BatteryResult {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
    std::string csv_text;
};
BatteryResult run_battery(uint64_t seed, const std::string& size, int threads);

// Battery at thread caps 1 and 4 plus the byte-identity comparison as
// criterion 13. size is "small" (full battery) or "tiny" (smoke scale).
struct SuiteResult {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
    std::string summary_csv;
};
SuiteResult run_suite(uint64_t seed, const std::string& size);

}  // namespace weightlab::suite
