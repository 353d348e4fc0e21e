#include "tfde/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "tfde/assembly.hpp"
#include "tfde/reference_solution.hpp"
#include "tfde/time_stepping.hpp"

namespace tfde {

namespace {

using nlohmann::json;

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

double unit_diffusivity(double, double) { return 1.0; }

}  // namespace

void validate(const ExperimentConfig& c) {
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
        throw ConfigError("alpha", "must lie in (0, 1), got " + std::to_string(c.alpha));
    }
    if (c.example != "example1" && c.example != "example2" && c.example != "example3" &&
        c.example != "zero") {
        throw ConfigError("example", "unknown datum '" + c.example +
                                         "' (expected example1, example2, example3 or zero)");
    }
    if (c.M.empty()) throw ConfigError("M", "at least one mesh size is required");
    for (int m : c.M) {
        if (m < 2) throw ConfigError("M", "mesh sizes must be >= 2, got " + std::to_string(m));
    }
    if (c.N < 1) throw ConfigError("N", "must be >= 1");
    if (!(c.gamma >= 1.0) || !std::isfinite(c.gamma)) {
        throw ConfigError("gamma", "must be >= 1, got " + std::to_string(c.gamma));
    }
    if (!(c.T > 0.0) || !std::isfinite(c.T)) throw ConfigError("T", "must be positive");
    if (c.modes < 1) throw ConfigError("modes", "must be >= 1");
    if (c.mu.empty()) throw ConfigError("mu", "at least one weight exponent is required");
    for (double m : c.mu) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw ConfigError("mu", "weight exponents must be >= 0");
    }
    if (c.fine_M < 2) throw ConfigError("fine-M", "must be >= 2");
    for (int m : c.M) {
        if (c.fine_M % m != 0 || !is_power_of_two(c.fine_M / m)) {
            throw ConfigError("fine-M", "must be a power-of-two multiple of every M (M=" +
                                            std::to_string(m) + ", fine-M=" +
                                            std::to_string(c.fine_M) + ")");
        }
    }
    if (!(c.tol > 0.0 && c.tol < 1e-3)) throw ConfigError("tol", "must lie in (0, 1e-3)");
    if (c.init != "l2" && c.init != "ritz") {
        throw ConfigError("init", "expected 'l2' or 'ritz', got '" + c.init + "'");
    }
    if (c.init == "ritz" && c.example == "example3") {
        throw ConfigError("init", "the Ritz projection needs a datum vanishing on the boundary");
    }
    if (c.out.empty()) throw ConfigError("out", "output directory must not be empty");
}

void validate_study(const ExperimentConfig& c) {
    validate(c);
    for (std::size_t i = 1; i < c.M.size(); ++i) {
        if (c.M[i] != 2 * c.M[i - 1]) throw ConfigError("M", "mesh sizes must double at each entry");
    }
}

std::string to_json(const ExperimentConfig& c) {
    json j;
    j["alpha"] = c.alpha;
    j["example"] = c.example;
    j["M"] = c.M;
    j["N"] = c.N;
    j["gamma"] = c.gamma;
    j["T"] = c.T;
    j["modes"] = c.modes;
    j["mu"] = c.mu;
    j["fine-M"] = c.fine_M;
    j["out"] = c.out;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    j["init"] = c.init;
    return j.dump(2);
}

ExperimentConfig from_json(const std::string& text, ExperimentConfig c) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "top-level value must be an object");
    auto get = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(field);
        } catch (const json::exception& e) {
            throw ConfigError(key, std::string("wrong type: ") + e.what());
        }
    };
    for (const auto& [key, value] : j.items()) {
        static const char* known[] = {"alpha", "example", "M",   "N",    "gamma", "T",   "modes",
                                      "mu",    "fine-M",  "out", "tol", "seed",  "init"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError(key, "unknown configuration key");
    }
    get("alpha", c.alpha);
    get("example", c.example);
    if (j.contains("M") && j["M"].is_number_integer()) {
        c.M = {j["M"].get<int>()};
    } else {
        get("M", c.M);
    }
    get("N", c.N);
    get("gamma", c.gamma);
    get("T", c.T);
    get("modes", c.modes);
    if (j.contains("mu") && j["mu"].is_number()) {
        c.mu = {j["mu"].get<double>()};
    } else {
        get("mu", c.mu);
    }
    get("fine-M", c.fine_M);
    get("out", c.out);
    get("tol", c.tol);
    get("seed", c.seed);
    get("init", c.init);
    return c;
}

std::vector<std::string> preset_names() {
    return {"table1", "table2", "table3", "figure1", "figure2", "figure3"};
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.alpha = 0.75;
    c.gamma = 1.6;
    c.T = 0.5;
    c.modes = 60;
    c.fine_M = 128;
    c.M = {4, 8, 16, 32, 64};
    if (name == "table1" || name == "figure1") {
        c.example = "example1";
        c.N = 1000;
        c.mu = {0.0};
    } else if (name == "table2" || name == "figure2") {
        c.example = "example2";
        c.N = 1300;
        c.mu = name == "table2" ? std::vector<double>{0.0, 0.25, 0.5, 0.75} : std::vector<double>{0.0};
    } else if (name == "table3" || name == "figure3") {
        c.example = "example3";
        c.N = 1300;
        c.mu = name == "table3" ? std::vector<double>{0.0, 0.5, 0.75, 1.0} : std::vector<double>{0.0};
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "'");
    }
    c.out = "out/" + name;
    return c;
}

std::vector<double> StudyResult::rates(std::size_t k) const {
    std::vector<double> e;
    for (const auto& r : reports) e.push_back(r.weighted.at(k));
    return convergence_rates(e);
}

namespace {

struct Resolution {
    std::unique_ptr<StructuredMesh> mesh;
    CsrMatrix mass;
    CsrMatrix stiffness;
    std::unique_ptr<LatticeInterpolator> interp;
    SchemeState state;
    ErrorReport report;
};

}  // namespace

StudyResult run_study(const ExperimentConfig& config, const ProgressCallback& progress) {
    validate(config);
    const InitialDatum datum = InitialDatum::from_name(config.example);
    const GradedTimeMesh time_mesh(config.N, config.gamma, config.T);
    const FracWeights weights(time_mesh, config.alpha);
    const FineLattice lattice = fine_lattice(config.fine_M);
    const GridEvaluator exact(make_series(datum, config.alpha, config.modes), lattice.axis, lattice.axis);
    const SolverOptions solver{SolverMethod::conjugate_gradient, config.tol, 10000};

    std::vector<Resolution> runs;
    runs.reserve(config.M.size());
    for (int m : config.M) {
        Resolution r;
        r.mesh = std::make_unique<StructuredMesh>(m);
        r.mass = assemble_mass(*r.mesh);
        r.stiffness = assemble_stiffness(*r.mesh, unit_diffusivity);
        r.interp = std::make_unique<LatticeInterpolator>(*r.mesh, lattice);
        const FieldP1 u0 = config.init == "ritz"
                               ? ritz_project(*r.mesh, unit_diffusivity, *datum.gradient)
                               : l2_project(*r.mesh, datum.value);
        r.state = initial_state(u0.values);
        r.report.M = m;
        r.report.N = config.N;
        r.report.grading = config.gamma;
        r.report.alpha = config.alpha;
        r.report.example = config.example;
        r.report.fine_M = config.fine_M;
        r.report.mus = config.mu;
        r.report.rows.reserve(config.N);
        runs.push_back(std::move(r));
    }

    for (std::size_t n = 1; n <= config.N; ++n) {
        const double t = time_mesh.t(n);
        const GridValues u_exact = exact.evaluate(t);
        for (auto& r : runs) {
            const SchemeOperators ops{r.mass, r.stiffness, time_mesh, weights, solver};
            const auto& un = step(r.state, ops);
            r.report.rows.push_back({n, t, step_error(*r.interp, un, u_exact)});
        }
        if (progress) progress(n, config.N);
    }

    StudyResult result;
    result.config = config;
    for (auto& r : runs) {
        r.report.weighted = weighted_errors(r.report.rows, r.report.mus);
        result.reports.push_back(std::move(r.report));
    }
    return result;
}

namespace {

std::string sci(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    return buf;
}

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string mu_name(double mu) {
    std::ostringstream s;
    s << "E_" << mu;
    return s.str();
}

}  // namespace

void print_table(std::ostream& out, const StudyResult& study) {
    const auto& mus = study.config.mu;
    out << std::setw(4) << "M";
    for (double mu : mus) out << " | " << std::setw(11) << mu_name(mu) << ' ' << std::setw(7) << "CR";
    out << '\n';
    for (std::size_t r = 0; r < study.reports.size(); ++r) {
        const auto& rep = study.reports[r];
        out << std::setw(4) << rep.M;
        for (std::size_t k = 0; k < mus.size(); ++k) {
            out << " | " << std::setw(11) << sci(rep.weighted[k], 5) << ' ';
            const double prev = r > 0 ? study.reports[r - 1].weighted[k] : 0.0;
            if (r > 0 && prev > 0.0 && rep.weighted[k] > 0.0) {
                out << std::setw(7) << fixed(std::log2(prev / rep.weighted[k]));
            } else {
                out << std::setw(7) << "";
            }
        }
        out << '\n';
    }
}

std::string summary_line(const ErrorReport& report) {
    std::ostringstream s;
    s << "M=" << report.M << " N=" << report.N << " gamma=" << report.grading
      << " alpha=" << report.alpha << ' ' << report.example;
    for (std::size_t k = 0; k < report.mus.size(); ++k) {
        s << ' ' << mu_name(report.mus[k]) << '=' << sci(report.weighted[k], 5);
    }
    return s.str();
}

std::vector<std::string> write_figure(const StudyResult& study, const std::string& dir,
                                      const std::string& stem) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    for (const auto& rep : study.reports) {
        const fs::path path = fs::path(dir) / (stem + "_M" + std::to_string(rep.M) + ".csv");
        std::ofstream f(path);
        if (!f) throw InvalidArgument("cannot write " + path.string());
        f << "t,err\n" << std::setprecision(17);
        for (const auto& row : rep.rows) f << row.t << ',' << row.error << '\n';
        written.push_back(path.string());
    }
    const fs::path gp = fs::path(dir) / (stem + ".gp");
    std::ofstream g(gp);
    if (!g) throw InvalidArgument("cannot write " + gp.string());
    g << "set datafile separator ','\n"
      << "set logscale xy\n"
      << "set xlabel 't_n'\n"
      << "set ylabel 'error'\n"
      << "set key outside right\n"
      << "set term pngcairo size 900,540\n"
      << "set output '" << stem << ".png'\n"
      << "plot ";
    for (std::size_t i = 0; i < study.reports.size(); ++i) {
        const int m = study.reports[i].M;
        g << (i ? ", \\\n     " : "") << "'" << stem << "_M" << m << ".csv' every ::1 using 1:2 with lines title 'M=" << m << "'";
    }
    g << '\n';
    written.push_back(gp.string());
    return written;
}

}  // namespace tfde
