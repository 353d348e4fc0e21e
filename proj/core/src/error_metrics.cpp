#include "tfde/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "tfde/errors.hpp"

namespace tfde {

FineLattice fine_lattice(int subdivisions) {
    if (subdivisions < 2) {
        throw InvalidArgument("fine_lattice: Ms must be >= 2, got " + std::to_string(subdivisions));
    }
    FineLattice l;
    l.subdivisions = subdivisions;
    l.axis.resize(static_cast<std::size_t>(subdivisions - 1));
    for (int k = 1; k < subdivisions; ++k) l.axis[static_cast<std::size_t>(k - 1)] = double(k) / subdivisions;
    return l;
}

LatticeInterpolator::LatticeInterpolator(const StructuredMesh& mesh, const FineLattice& lattice)
    : coarse_dofs_(mesh.num_interior()) {
    dofs_.resize(lattice.size());
    weights_.resize(lattice.size());
    for (std::size_t p = 0; p < lattice.size(); ++p) {
        const PointLocation loc = mesh.locate(lattice.node(p));
        const auto& tri = mesh.triangles()[loc.triangle];
        for (int k = 0; k < 3; ++k) {
            dofs_[p][k] = mesh.interior_index(tri[k]);
            weights_[p][k] = loc.barycentric[k];
        }
    }
}

std::vector<double> LatticeInterpolator::apply(std::span<const double> u) const {
    if (u.size() != coarse_dofs_) throw InvalidArgument("LatticeInterpolator: field size mismatch");
    std::vector<double> out(dofs_.size());
    for (std::size_t p = 0; p < dofs_.size(); ++p) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) {
            const long d = dofs_[p][k];
            if (d >= 0) s += weights_[p][k] * u[static_cast<std::size_t>(d)];
        }
        out[p] = s;
    }
    return out;
}

double step_error(const LatticeInterpolator& interp, std::span<const double> u_h,
                  const GridValues& exact) {
    if (exact.values.size() != interp.size()) {
        throw InvalidArgument("step_error: exact values do not match the lattice");
    }
    const std::vector<double> v = interp.apply(u_h);
    double err = 0.0;
    for (std::size_t p = 0; p < v.size(); ++p) err = std::max(err, std::abs(v[p] - exact.values[p]));
    return err;
}

std::vector<double> weighted_errors(std::span<const ErrorRow> rows, std::span<const double> mus) {
    std::vector<double> e(mus.size(), 0.0);
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < mus.size(); ++k) {
            e[k] = std::max(e[k], (mus[k] == 0.0 ? 1.0 : std::pow(r.t, mus[k])) * r.error);
        }
    }
    return e;
}

StreamingWeightedMax::StreamingWeightedMax(std::vector<double> mus)
    : mus_(std::move(mus)), max_(mus_.size(), 0.0) {}

void StreamingWeightedMax::update(double t, double error) {
    for (std::size_t k = 0; k < mus_.size(); ++k) {
        max_[k] = std::max(max_[k], (mus_[k] == 0.0 ? 1.0 : std::pow(t, mus_[k])) * error);
    }
}

std::vector<double> convergence_rates(std::span<const double> errors) {
    if (errors.size() < 2) throw InvalidArgument("convergence_rates: need at least two errors");
    for (double e : errors) {
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw InvalidArgument("convergence_rates: rate undefined for non-positive error " +
                                  std::to_string(e));
        }
    }
    std::vector<double> r;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) r.push_back(std::log2(errors[i] / errors[i + 1]));
    return r;
}

void write_step_csv(std::ostream& out, const ErrorReport& report) {
    out << "n,t,err\n";
    out << std::setprecision(17);
    for (const auto& r : report.rows) out << r.n << ',' << r.t << ',' << r.error << '\n';
}

namespace {

std::string mu_label(double mu) {
    std::ostringstream s;
    s << mu;
    return s.str();
}

}  // namespace

void write_summary_csv(std::ostream& out, std::span<const ErrorReport> reports) {
    if (reports.empty()) return;
    const auto& mus = reports.front().mus;
    out << "M";
    for (double mu : mus) out << ",E_" << mu_label(mu);
    for (double mu : mus) out << ",CR_" << mu_label(mu);
    out << '\n';
    out << std::setprecision(17);
    for (std::size_t r = 0; r < reports.size(); ++r) {
        out << reports[r].M;
        for (double e : reports[r].weighted) out << ',' << e;
        for (std::size_t k = 0; k < mus.size(); ++k) {
            out << ',';
            if (r > 0 && reports[r - 1].weighted[k] > 0.0 && reports[r].weighted[k] > 0.0) {
                out << std::log2(reports[r - 1].weighted[k] / reports[r].weighted[k]);
            }
        }
        out << '\n';
    }
}

}  // namespace tfde
