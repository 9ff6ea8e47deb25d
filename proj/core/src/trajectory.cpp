#include "qdnls/trajectory.hpp"

#include "qdnls/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace qdnls {

namespace {

constexpr char kMagic[6] = {'Q', 'D', 'N', 'L', 'T', '1'};

void write_raw(std::ostream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_raw(std::istream& in, void* p, std::size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw std::runtime_error("trajectory record truncated");
}

} // namespace

const FrequencyLattice& Trajectory::lattice() const {
    if (fields.empty()) throw std::logic_error("empty trajectory has no lattice");
    return fields.front().lattice();
}

int Trajectory::components() const {
    if (fields.empty()) throw std::logic_error("empty trajectory has no components");
    return fields.front().components();
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
    write_raw(out, kMagic, sizeof(kMagic));
    const std::int64_t count = static_cast<std::int64_t>(traj.fields.size());
    write_raw(out, &count, sizeof(count));
    write_raw(out, &traj.dt, sizeof(traj.dt));
    write_raw(out, &traj.sigma, sizeof(traj.sigma));
    for (const SpectralField& f : traj.fields) write_snapshot(out, f);
    if (!out) throw std::runtime_error("trajectory write failed");
}

void write_trajectory(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open trajectory file for writing: " + path);
    write_trajectory(out, traj);
    if (!out) throw std::runtime_error("trajectory write failed: " + path);
}

Trajectory read_trajectory(std::istream& in) {
    char magic[6];
    read_raw(in, magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a trajectory file (bad magic)");

    std::int64_t count = 0;
    Trajectory traj;
    read_raw(in, &count, sizeof(count));
    read_raw(in, &traj.dt, sizeof(traj.dt));
    read_raw(in, &traj.sigma, sizeof(traj.sigma));
    if (count < 0) throw std::runtime_error("trajectory file has negative sample count");

    traj.fields.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) traj.fields.push_back(read_snapshot(in));
    for (std::size_t i = 1; i < traj.fields.size(); ++i) {
        if (!traj.fields[i].compatible_with(traj.fields.front()))
            throw std::runtime_error("trajectory samples disagree on lattice or components");
    }
    return traj;
}

Trajectory read_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
    Trajectory traj = read_trajectory(in);
    char extra = 0;
    if (in.read(&extra, 1); in.gcount() != 0)
        throw std::runtime_error("trajectory file has trailing bytes: " + path);
    return traj;
}

Trajectory free_trajectory(const SpectralField& datum, double sigma, double dt,
                           std::size_t steps) {
    Trajectory traj;
    traj.dt = dt;
    traj.sigma = sigma;
    traj.fields.reserve(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j)
        traj.fields.push_back(free_evolution(datum, sigma, dt * static_cast<double>(j)));
    return traj;
}

Trajectory conj_trajectory(const Trajectory& traj) {
    Trajectory out;
    out.dt = traj.dt;
    out.sigma = -traj.sigma;
    out.fields.reserve(traj.fields.size());
    for (const SpectralField& f : traj.fields) out.fields.push_back(conj_field(f));
    return out;
}

} // namespace qdnls
