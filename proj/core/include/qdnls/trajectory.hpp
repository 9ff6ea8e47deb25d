#pragma once

#include "qdnls/field.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qdnls {

// Uniformly sampled field path: fields[j] is the state at time j * dt.
// sigma records the dispersion coefficient of the linear group the path
// belongs to, so twisted-norm evaluators do not need it passed separately.
struct Trajectory {
    std::vector<SpectralField> fields;
    double dt = 0.0;
    double sigma = 0.0;

    std::size_t samples() const { return fields.size(); }
    double time_of(std::size_t j) const { return dt * static_cast<double>(j); }
    double duration() const {
        return fields.empty() ? 0.0 : dt * static_cast<double>(fields.size() - 1);
    }
    const FrequencyLattice& lattice() const;
    int components() const;
};

struct TrajectoryTriple {
    Trajectory u, v, w;
};

// Binary layout: magic "QDNLT1", int64 sample count, float64 dt, float64 sigma,
// then that many snapshot records back to back.
void write_trajectory(std::ostream& out, const Trajectory& traj);
void write_trajectory(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory(std::istream& in);
Trajectory read_trajectory(const std::string& path);

// All samples of the free evolution e^{i t sigma Laplace} from a datum,
// on the uniform grid t_j = j * dt, j = 0..steps.
Trajectory free_trajectory(const SpectralField& datum, double sigma, double dt, std::size_t steps);

// Pointwise complex conjugate of every sample; the stored sigma flips sign
// because conjugation intertwines the two oppositely dispersing groups.
Trajectory conj_trajectory(const Trajectory& traj);

} // namespace qdnls
