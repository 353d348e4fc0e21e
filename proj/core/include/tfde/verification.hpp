#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tfde/mittag_leffler.hpp"

namespace tfde {

struct SuiteReport {
    std::string name;
    int checks = 0;
    std::vector<std::string> failures;

    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

struct VerifyOptions {
    /// Thresholds used by the Mittag-Leffler suites; perturb these to check
    /// that the continuity suite notices.
    MittagLeffler::Thresholds ml_thresholds{};
};

/// special-functions, ml-continuity, quadrature, assembly, alpha-one-limit,
/// rate-convention.
[[nodiscard]] std::vector<SuiteReport> run_verification(const VerifyOptions& options = {});

/// One line per suite; returns true when every suite passed.
bool print_verification(std::ostream& out, const std::vector<SuiteReport>& reports);

}  // namespace tfde
