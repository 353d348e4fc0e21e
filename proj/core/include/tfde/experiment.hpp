#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "tfde/error_metrics.hpp"
#include "tfde/errors.hpp"

namespace tfde {

/// Validation failure naming the offending configuration field.
class ConfigError : public InvalidArgument {
public:
    ConfigError(std::string field, const std::string& message)
        : InvalidArgument(field + ": " + message), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/**
 * Parameters of a solve or convergence study. JSON keys match the CLI flag
 * names: alpha, example, M, N, gamma, T, modes, mu, fine-M, out, tol, seed, init.
 */
struct ExperimentConfig {
    double alpha = 0.75;
    std::string example = "example1";
    std::vector<int> M{8};
    std::size_t N = 1000;
    double gamma = 1.6;
    double T = 0.5;
    int modes = 60;
    std::vector<double> mu{0.0};
    int fine_M = 128;
    std::string out = "out";
    double tol = 1e-12;
    std::uint64_t seed = 1;
    /// "l2" (u_h^0 = P_h u0) or "ritz" (u_h^0 = R_h u0).
    std::string init = "l2";

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError on the first out-of-range field.
void validate(const ExperimentConfig& config);
/// Additionally requires the M list to double at each entry.
void validate_study(const ExperimentConfig& config);

[[nodiscard]] std::string to_json(const ExperimentConfig& config);
/// Keys missing from the document keep the values already in `base`.
[[nodiscard]] ExperimentConfig from_json(const std::string& text, ExperimentConfig base = {});

/// table1, table2, table3, figure1, figure2, figure3. Tables 2-3 and their
/// figures assume alpha = 0.75, the value stated for Example 1.
[[nodiscard]] ExperimentConfig preset(const std::string& name);
[[nodiscard]] std::vector<std::string> preset_names();

struct StudyResult {
    ExperimentConfig config;
    std::vector<ErrorReport> reports;  // ordered as config.M

    /// Rates for mu index k across successive M.
    [[nodiscard]] std::vector<double> rates(std::size_t k) const;
};

using ProgressCallback = std::function<void(std::size_t n, std::size_t total)>;

/**
 * Runs every M of the configuration on the shared graded time mesh in
 * lockstep; the exact solution is evaluated once per time node and compared
 * against each resolution on the fine lattice.
 */
[[nodiscard]] StudyResult run_study(const ExperimentConfig& config,
                                    const ProgressCallback& progress = {});

/// Fixed-width table: M | E_mu CR | ..., errors with 5 significant digits.
void print_table(std::ostream& out, const StudyResult& study);

/// One-line run summary, e.g. "M=8 N=1000 alpha=0.75 example1 E_0=3.3953e-03".
[[nodiscard]] std::string summary_line(const ErrorReport& report);

/// Writes <dir>/<stem>_M<M>.csv ("t,err") per resolution and <dir>/<stem>.gp.
/// Returns the written paths.
std::vector<std::string> write_figure(const StudyResult& study, const std::string& dir,
                                      const std::string& stem);

}  // namespace tfde
