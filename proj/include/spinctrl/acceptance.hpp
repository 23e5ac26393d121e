#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinctrl {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct AcceptanceOptions {
    double tolerance = 1e-9;
    std::uint64_t seed = 20240611;
    std::string fixture_path;  // empty: default_fixture_path()
    unsigned threads = 0;
    bool rerun_for_determinism = true;
};

struct AcceptanceSummary {
    std::vector<CriterionResult> criteria;
    double seconds = 0.0;

    bool all_passed() const;
};

constexpr double kTimeBudgetSeconds = 300.0;

// Throws FixtureError when the reference file is missing or malformed.
AcceptanceSummary run_acceptance(const AcceptanceOptions& options = {});

// One line per criterion; contains no timing so repeated runs compare byte for byte.
std::string format_summary(const AcceptanceSummary& summary);

}  // namespace spinctrl
