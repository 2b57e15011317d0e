#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sobwidth {

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> notes;  // first few failure diagnostics
};

std::vector<std::string> suite_names();

/// Runs one seeded cross-validation suite; `cases` <= 0 picks the suite default.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases);

}  // namespace sobwidth
