#include "qdnls/projections.hpp"

#include <cmath>

namespace qdnls {

bool CubeRegion::contains(const Mode& xi, int dimension) const {
    for (int i = 0; i < dimension; ++i) {
        if (std::abs(2 * (static_cast<std::int64_t>(xi[i]) - center[i])) > side) return false;
    }
    return true;
}

bool StripRegion::contains(const Mode& xi, int dimension) const {
    for (int i = 0; i < dimension; ++i) {
        if (std::abs(static_cast<std::int64_t>(xi[i]) - center[i]) > half_width) return false;
    }
    double dot = 0.0;
    for (int i = 0; i < dimension; ++i) dot += direction[i] * xi[i];
    return std::abs(dot - offset) <= thickness;
}

bool ModeSet::contains(const Mode& xi, int dimension) const {
    for (const Mode& m : modes) {
        bool same = true;
        for (int i = 0; i < dimension; ++i) {
            if (m[i] != xi[i]) {
                same = false;
                break;
            }
        }
        if (same) return true;
    }
    return false;
}

bool region_contains(const FrequencyRegion& region, const Mode& xi, int dimension) {
    return std::visit([&](const auto& r) { return r.contains(xi, dimension); }, region);
}

SpectralField project_if(const SpectralField& f, const std::function<bool(const Mode&)>& keep) {
    const auto& lat = f.lattice();
    SpectralField out = f;
    const std::size_t count = lat.mode_count();
    std::vector<bool> mask(count);
    for (std::size_t idx = 0; idx < count; ++idx) mask[idx] = keep(lat.mode_of(idx));
    for (int c = 0; c < f.components(); ++c) {
        Complex* dst = out.component_data(c);
        for (std::size_t idx = 0; idx < count; ++idx)
            if (!mask[idx]) dst[idx] = Complex(0.0, 0.0);
    }
    return out;
}

SpectralField project_set(const SpectralField& f, const FrequencyRegion& region) {
    const int d = f.lattice().dimension();
    return project_if(f, [&](const Mode& xi) { return region_contains(region, xi, d); });
}

SpectralField project_dyadic(const SpectralField& f, DyadicIndex N) {
    if (!is_dyadic(N)) throw std::invalid_argument("dyadic projection index must be a power of two");
    const auto& lat = f.lattice();
    SpectralField out = f;
    const std::size_t count = lat.mode_count();
    std::vector<double> weight(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const double r = std::sqrt(static_cast<double>(lat.norm_sq(lat.mode_of(idx))));
        weight[idx] = bump_weight(N, r);
    }
    for (int c = 0; c < f.components(); ++c) {
        Complex* dst = out.component_data(c);
        for (std::size_t idx = 0; idx < count; ++idx) dst[idx] *= weight[idx];
    }
    return out;
}

DyadicIndex dyadic_top_for(const FrequencyLattice& lattice) {
    const double max_norm =
        std::sqrt(static_cast<double>(lattice.dimension())) * lattice.cutoff();
    return next_pow2(max_norm);
}

} // namespace qdnls
