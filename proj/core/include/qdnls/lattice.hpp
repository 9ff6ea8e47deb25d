#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qdnls {

inline constexpr int kMaxDimension = 4;

using Mode = std::array<int, kMaxDimension>; // entries beyond the dimension are zero

// Truncated dual lattice {-K..K}^d of a d-torus of side 2*pi*L.
// Physical frequencies are xi/L for integer modes xi; the attached physical
// grid is fine enough that quadratic products computed by grid collocation
// are alias-free on the retained modes (grid_points >= 3K+2).
class FrequencyLattice {
public:
    FrequencyLattice(int dimension, int cutoff, double period_scale = 1.0);
    FrequencyLattice(int dimension, int cutoff, double period_scale, int grid_points);

    int dimension() const { return dimension_; }
    int cutoff() const { return cutoff_; }
    double period_scale() const { return period_scale_; }
    int grid_points() const { return grid_points_; }

    int modes_per_axis() const { return 2 * cutoff_ + 1; }
    std::size_t mode_count() const { return mode_count_; }
    std::size_t grid_count() const { return grid_count_; }

    // Lexicographic mode order: xi_1 most significant, each axis -K..K.
    std::size_t index_of(const Mode& xi) const;
    Mode mode_of(std::size_t index) const;

    // Squared Euclidean length of the integer mode.
    static std::int64_t mode_norm_sq(const Mode& xi, int dimension);
    std::int64_t norm_sq(const Mode& xi) const { return mode_norm_sq(xi, dimension_); }
    // |xi/L|^2, the physical squared frequency.
    double physical_norm_sq(const Mode& xi) const;

    bool operator==(const FrequencyLattice& other) const;
    bool operator!=(const FrequencyLattice& other) const { return !(*this == other); }

    // Smallest alias-free FFT-friendly grid (5-smooth, >= 3K+2).
    static int default_grid_points(int cutoff);

private:
    void validate() const;

    int dimension_;
    int cutoff_;
    double period_scale_;
    int grid_points_;
    std::size_t mode_count_;
    std::size_t grid_count_;
};

} // namespace qdnls
