#pragma once

#include "qdnls/bump.hpp"
#include "qdnls/field.hpp"

#include <array>
#include <functional>
#include <variant>
#include <vector>

namespace qdnls {

// Axis-aligned closed cube: |xi_i - center_i| <= side/2 for every axis
// (tested exactly in integers).
struct CubeRegion {
    Mode center{0, 0, 0, 0};
    int side = 1;
    bool contains(const Mode& xi, int dimension) const;
};

// Slab through a cube: xi in (center + [-half_width, half_width]^d) with
// |direction . xi - offset| <= thickness; direction is a unit vector.
struct StripRegion {
    Mode center{0, 0, 0, 0};
    int half_width = 1;                          // cube half-side N
    std::array<double, kMaxDimension> direction{1.0, 0.0, 0.0, 0.0};
    double offset = 0.0;                          // A
    double thickness = 1.0;                       // M
    bool contains(const Mode& xi, int dimension) const;
};

// Explicit mode list.
struct ModeSet {
    std::vector<Mode> modes;
    bool contains(const Mode& xi, int dimension) const;
};

using FrequencyRegion = std::variant<CubeRegion, StripRegion, ModeSet>;

bool region_contains(const FrequencyRegion& region, const Mode& xi, int dimension);

// Sharp indicator projection P_S: keeps coefficients with xi in S.
SpectralField project_set(const SpectralField& f, const FrequencyRegion& region);
SpectralField project_if(const SpectralField& f, const std::function<bool(const Mode&)>& keep);

// Smooth dyadic projection P_N: multiplies mode xi by psi_N(|xi|).
SpectralField project_dyadic(const SpectralField& f, DyadicIndex N);

// Dyadic indices needed so that sum_{N <= top} P_N = identity on the lattice.
DyadicIndex dyadic_top_for(const FrequencyLattice& lattice);

} // namespace qdnls
