#include "qdnls/norms.hpp"

#include "qdnls/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qdnls {

namespace {

std::vector<double> bracket_weights(const FrequencyLattice& lattice, double s) {
    std::vector<double> weights(lattice.mode_count());
    for (std::size_t m = 0; m < weights.size(); ++m) {
        const double bracket_sq = 1.0 + lattice.physical_norm_sq(lattice.mode_of(m));
        weights[m] = std::pow(bracket_sq, s);
    }
    return weights;
}

}  // namespace

double hs_norm(const SpectralField& f, double s) {
    const auto& lattice = f.lattice();
    const auto weights = bracket_weights(lattice, s);
    double total = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        const Complex* data = f.component_data(c);
        for (std::size_t m = 0; m < lattice.mode_count(); ++m)
            total += weights[m] * std::norm(data[m]);
    }
    return std::sqrt(total);
}

double hs_norm(const FieldTriple& state, double s) {
    const double nu = hs_norm(state.u, s);
    const double nv = hs_norm(state.v, s);
    const double nw = hs_norm(state.w, s);
    return std::sqrt(nu * nu + nv * nv + nw * nw);
}

double physical_l2_norm(const SpectralField& f) {
    const auto& lattice = f.lattice();
    const double side = 2.0 * std::numbers::pi * lattice.period_scale();
    return std::pow(side, 0.5 * lattice.dimension()) * hs_norm(f, 0.0);
}

double lp_spacetime_norm(const Trajectory& traj, double p) {
    if (traj.fields.empty()) throw std::invalid_argument("lp_spacetime_norm: empty trajectory");
    return lp_spacetime_norm(traj, p, traj.lattice().grid_points());
}

double lp_spacetime_norm(const Trajectory& traj, double p, int grid_points) {
    if (traj.fields.empty()) throw std::invalid_argument("lp_spacetime_norm: empty trajectory");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_spacetime_norm: requires p >= 1");
    if (!(traj.dt > 0.0)) throw std::invalid_argument("lp_spacetime_norm: requires dt > 0");

    const auto& lattice = traj.lattice();
    const int d = lattice.dimension();
    const double side = 2.0 * std::numbers::pi * lattice.period_scale();
    const double cell = std::pow(side / static_cast<double>(grid_points), d);
    const bool sup_norm = std::isinf(p);

    std::size_t grid_total = 1;
    for (int axis = 0; axis < d; ++axis) grid_total *= static_cast<std::size_t>(grid_points);

    double result = 0.0;
    std::vector<double> magnitude_sq(grid_total);
    for (const auto& field : traj.fields) {
        std::fill(magnitude_sq.begin(), magnitude_sq.end(), 0.0);
        for (int c = 0; c < field.components(); ++c) {
            const auto samples = to_physical(field, c, grid_points);
            for (std::size_t i = 0; i < grid_total; ++i) magnitude_sq[i] += std::norm(samples[i]);
        }
        if (sup_norm) {
            for (double m : magnitude_sq) result = std::max(result, m);
        } else {
            double slice = 0.0;
            for (double m : magnitude_sq) slice += std::pow(m, 0.5 * p);
            result += slice * cell * traj.dt;
        }
    }
    return sup_norm ? std::sqrt(result) : std::pow(result, 1.0 / p);
}

double ys_norm(const Trajectory& traj, double sigma, double s) {
    if (traj.fields.empty()) throw std::invalid_argument("ys_norm: empty trajectory");
    const auto& lattice = traj.lattice();
    const int components = traj.components();
    const std::size_t n = traj.samples();
    const auto weights = bracket_weights(lattice, s);

    double total = 0.0;
    std::vector<Complex> path(n);
    for (std::size_t m = 0; m < lattice.mode_count(); ++m) {
        const double phase_rate = sigma * lattice.physical_norm_sq(lattice.mode_of(m));
        for (int c = 0; c < components; ++c) {
            for (std::size_t j = 0; j < n; ++j) {
                const double angle = traj.time_of(j) * phase_rate;
                path[j] = std::polar(1.0, angle) * traj.fields[j].at(c, m);
            }
            const double v2 = vp_variation_norm(path, 2.0, /*append_zero=*/true);
            total += weights[m] * v2 * v2;
        }
    }
    return std::sqrt(total);
}

double sup_hs_difference(const Trajectory& a, const Trajectory& b, double s) {
    if (a.samples() != b.samples())
        throw std::invalid_argument("sup_hs_difference: sample counts differ");
    if (a.fields.empty()) throw std::invalid_argument("sup_hs_difference: empty trajectory");
    if (a.lattice() != b.lattice() || a.components() != b.components())
        throw std::invalid_argument("sup_hs_difference: incompatible trajectories");
    if (std::abs(a.dt - b.dt) > 1e-12 * std::max(std::abs(a.dt), std::abs(b.dt)))
        throw std::invalid_argument("sup_hs_difference: time steps differ");
    double sup = 0.0;
    for (std::size_t j = 0; j < a.samples(); ++j)
        sup = std::max(sup, hs_norm(difference(a.fields[j], b.fields[j]), s));
    return sup;
}

double sup_hs_difference(const TrajectoryTriple& a, const TrajectoryTriple& b, double s) {
    const double du = sup_hs_difference(a.u, b.u, s);
    const double dv = sup_hs_difference(a.v, b.v, s);
    const double dw = sup_hs_difference(a.w, b.w, s);
    return std::sqrt(du * du + dv * dv + dw * dw);
}

}  // namespace qdnls
