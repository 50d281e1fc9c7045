#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eph::verify {

struct CaseResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;

    bool passed() const;
    /// One "PASS|FAIL suite/case value <= threshold" line per case.
    void print(std::ostream& os) const;
};

/// invariance, additivity, ode, metric, region, oracle
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Runs a named suite; randomized cases are driven by seed.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

}  // namespace eph::verify
