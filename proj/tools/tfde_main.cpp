// tfde: solve, tabulate and verify the time-fractional diffusion benchmarks.
//
//   tfde solve --example example1 --M 8 --N 1000
//   tfde table table1 --out results
//   tfde figure figure2
//   tfde verify

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tfde/errors.hpp"
#include "tfde/experiment.hpp"
#include "tfde/verification.hpp"

namespace {

enum Exit { kOk = 0, kNumerical = 1, kConfig = 2 };

struct Overrides {
    std::optional<double> alpha;
    std::optional<std::string> example;
    std::vector<int> M;
    std::optional<std::size_t> N;
    std::optional<double> gamma;
    std::optional<double> T;
    std::optional<int> modes;
    std::vector<double> mu;
    std::optional<int> fine_M;
    std::optional<std::string> out;
    std::optional<double> tol;
    std::optional<std::string> init;
    std::string config_file;
    bool quiet = false;
};

void add_config_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_file, "JSON configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--alpha", o.alpha, "fractional order, 0 < alpha < 1");
    cmd->add_option("--example", o.example, "example1 | example2 | example3 | zero");
    cmd->add_option("--M", o.M, "spatial subdivisions per side (list for tables)")->delimiter(',');
    cmd->add_option("--N", o.N, "number of time steps");
    cmd->add_option("--gamma", o.gamma, "time-mesh grading exponent, >= 1");
    cmd->add_option("--T", o.T, "final time");
    cmd->add_option("--modes", o.modes, "modes per direction in the reference series");
    cmd->add_option("--mu", o.mu, "weight exponents for E_mu")->delimiter(',');
    cmd->add_option("--fine-M", o.fine_M, "subdivisions of the error lattice");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--tol", o.tol, "relative CG tolerance");
    cmd->add_option("--init", o.init, "initial projection: l2 | ritz");
    cmd->add_flag("--quiet,-q", o.quiet, "no progress output");
}

tfde::ExperimentConfig resolve(tfde::ExperimentConfig c, const Overrides& o) {
    if (!o.config_file.empty()) {
        std::ifstream f(o.config_file);
        std::stringstream text;
        text << f.rdbuf();
        c = tfde::from_json(text.str(), c);
    }
    if (o.alpha) c.alpha = *o.alpha;
    if (o.example) c.example = *o.example;
    if (!o.M.empty()) c.M = o.M;
    if (o.N) c.N = *o.N;
    if (o.gamma) c.gamma = *o.gamma;
    if (o.T) c.T = *o.T;
    if (o.modes) c.modes = *o.modes;
    if (!o.mu.empty()) c.mu = o.mu;
    if (o.fine_M) c.fine_M = *o.fine_M;
    if (o.out) c.out = *o.out;
    if (o.tol) c.tol = *o.tol;
    if (o.init) c.init = *o.init;
    return c;
}

tfde::ProgressCallback progress_printer(bool quiet, std::string label) {
    if (quiet) return {};
    return [label = std::move(label), next = std::size_t{0}](std::size_t n, std::size_t total) mutable {
        const std::size_t pct = 100 * n / total;
        if (pct >= next) {
            std::cerr << '\r' << label << ' ' << pct << '%' << std::flush;
            next = pct + 10;
        }
        if (n == total) std::cerr << '\n';
    };
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw tfde::InvalidArgument("cannot write " + path.string());
    f << text;
}

std::string stem_of(const tfde::ExperimentConfig& c, int M) {
    return c.example + "_M" + std::to_string(M) + "_N" + std::to_string(c.N);
}

int cmd_solve(const Overrides& o) {
    auto config = resolve({}, o);
    if (config.M.size() != 1) throw tfde::ConfigError("M", "solve takes a single mesh size");
    tfde::validate(config);
    const auto study = tfde::run_study(config, progress_printer(o.quiet, "solve"));
    const auto& report = study.reports.front();
    const std::filesystem::path dir(config.out);
    std::ostringstream csv;
    tfde::write_step_csv(csv, report);
    write_text(dir / (stem_of(config, report.M) + ".csv"), csv.str());
    write_text(dir / (stem_of(config, report.M) + ".json"), tfde::to_json(config) + "\n");
    std::cout << tfde::summary_line(report) << '\n';
    return kOk;
}

tfde::ExperimentConfig study_config(const std::string& name, const Overrides& o) {
    tfde::ExperimentConfig base;
    if (name != "custom") base = tfde::preset(name);
    auto config = resolve(base, o);
    tfde::validate_study(config);
    return config;
}

int cmd_table(const std::string& name, const Overrides& o) {
    const auto config = study_config(name, o);
    const auto study = tfde::run_study(config, progress_printer(o.quiet, name));
    tfde::print_table(std::cout, study);
    const std::filesystem::path dir(config.out);
    std::ostringstream summary;
    tfde::write_summary_csv(summary, study.reports);
    write_text(dir / (name + "_summary.csv"), summary.str());
    for (const auto& r : study.reports) {
        std::ostringstream csv;
        tfde::write_step_csv(csv, r);
        write_text(dir / (stem_of(config, r.M) + ".csv"), csv.str());
    }
    write_text(dir / (name + ".json"), tfde::to_json(config) + "\n");
    return kOk;
}

int cmd_figure(const std::string& name, const Overrides& o) {
    const auto config = study_config(name, o);
    const auto study = tfde::run_study(config, progress_printer(o.quiet, name));
    for (const auto& path : tfde::write_figure(study, config.out, name)) std::cout << path << '\n';
    return kOk;
}

int cmd_verify(const tfde::VerifyOptions& options) {
    const auto reports = tfde::run_verification(options);
    return tfde::print_verification(std::cout, reports) ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite element solver for the time-fractional diffusion benchmarks"};
    app.require_subcommand(1);

    Overrides solve_o, table_o, figure_o;
    std::string table_name, figure_name;
    tfde::VerifyOptions verify_o;

    auto* solve = app.add_subcommand("solve", "single (M, N) run with per-step error CSV");
    add_config_flags(solve, solve_o);

    auto* table = app.add_subcommand("table", "convergence table over an M list");
    table->add_option("preset", table_name, "table1 | table2 | table3 | custom")->required();
    add_config_flags(table, table_o);

    auto* figure = app.add_subcommand("figure", "per-M error curves and a gnuplot script");
    figure->add_option("preset", figure_name, "figure1 | figure2 | figure3 | custom")->required();
    add_config_flags(figure, figure_o);

    auto* verify = app.add_subcommand("verify", "oracle and property suites");
    verify->add_option("--ml-series-max", verify_o.ml_thresholds.series_max,
                       "series/integral switch point (test hook)");
    verify->add_option("--ml-asymptotic-min", verify_o.ml_thresholds.asymptotic_min,
                       "integral/asymptotic switch point (test hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*solve) return cmd_solve(solve_o);
        if (*table) return cmd_table(table_name, table_o);
        if (*figure) return cmd_figure(figure_name, figure_o);
        if (*verify) return cmd_verify(verify_o);
    } catch (const tfde::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kConfig;
    } catch (const tfde::InvalidArgument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kConfig;
    } catch (const tfde::NumericalBlowup& e) {
        std::cerr << "numerical failure at step " << e.step() << ": " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
