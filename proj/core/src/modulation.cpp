#include "qdnls/modulation.hpp"

#include "qdnls/fft_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdnls {

double low_modulation_weight(DyadicIndex M, double s) {
    if (!is_dyadic(M)) throw std::invalid_argument("modulation threshold must be a power of two");
    if (M == 1) return 0.0;
    return chi(2.0 * s / static_cast<double>(M));
}

double high_modulation_weight(DyadicIndex M, double s) {
    return 1.0 - low_modulation_weight(M, s);
}

double band_modulation_weight(DyadicIndex M, double s) { return bump_weight(M, s); }

Trajectory modulation_project(const Trajectory& traj, double sigma, DyadicIndex M,
                              ModulationBand band) {
    const std::size_t n = traj.samples();
    if (n < 4) throw std::invalid_argument("modulation filter needs at least 4 time samples");
    if (traj.dt <= 0.0) throw std::invalid_argument("modulation filter needs a positive dt");

    const auto& lat = traj.lattice();
    const int comps = traj.components();
    const std::size_t modes = lat.mode_count();
    const double period = traj.dt * static_cast<double>(n);
    const double tau_step = 2.0 * std::numbers::pi / period;

    const auto weight_at = [&](double s) {
        switch (band) {
            case ModulationBand::low: return low_modulation_weight(M, s);
            case ModulationBand::high: return high_modulation_weight(M, s);
            case ModulationBand::band: return band_modulation_weight(M, s);
        }
        return 0.0;
    };

    Trajectory out = traj;
    std::vector<Complex> series(n);
    const std::vector<int> dims{static_cast<int>(n)};

    for (int c = 0; c < comps; ++c) {
        for (std::size_t idx = 0; idx < modes; ++idx) {
            for (std::size_t j = 0; j < n; ++j) series[j] = traj.fields[j].at(c, idx);
            fft::transform(series, dims, -1);

            const double dispersion = sigma * lat.physical_norm_sq(lat.mode_of(idx));
            for (std::size_t k = 0; k < n; ++k) {
                // A sample proportional to e^{i tau t} lands in forward bin
                // k = tau/tau_step mod n; recenter to [-n/2, n/2).
                std::int64_t centered = static_cast<std::int64_t>(k);
                if (centered * 2 >= static_cast<std::int64_t>(n)) centered -= static_cast<std::int64_t>(n);
                const double s = static_cast<double>(centered) * tau_step + dispersion;
                series[k] *= weight_at(s);
            }

            fft::transform(series, dims, +1);
            const double inv_n = 1.0 / static_cast<double>(n);
            for (std::size_t j = 0; j < n; ++j) out.fields[j].at(c, idx) = series[j] * inv_n;
        }
    }
    return out;
}

} // namespace qdnls
