#include "qdnls/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdnls {

namespace {

bool is_five_smooth(int n) {
    for (int p : {2, 3, 5}) {
        while (n % p == 0) n /= p;
    }
    return n == 1;
}

} // namespace

int FrequencyLattice::default_grid_points(int cutoff) {
    int n = 3 * cutoff + 2;
    while (!is_five_smooth(n)) ++n;
    return n;
}

FrequencyLattice::FrequencyLattice(int dimension, int cutoff, double period_scale)
    : FrequencyLattice(dimension, cutoff, period_scale, default_grid_points(cutoff)) {}

FrequencyLattice::FrequencyLattice(int dimension, int cutoff, double period_scale, int grid_points)
    : dimension_(dimension), cutoff_(cutoff), period_scale_(period_scale), grid_points_(grid_points) {
    validate();
    mode_count_ = 1;
    grid_count_ = 1;
    for (int i = 0; i < dimension_; ++i) {
        mode_count_ *= static_cast<std::size_t>(modes_per_axis());
        grid_count_ *= static_cast<std::size_t>(grid_points_);
    }
}

void FrequencyLattice::validate() const {
    if (dimension_ < 1 || dimension_ > kMaxDimension)
        throw std::invalid_argument("lattice dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    if (cutoff_ < 1)
        throw std::invalid_argument("lattice cutoff must be >= 1");
    if (!(period_scale_ > 0.0) || !std::isfinite(period_scale_))
        throw std::invalid_argument("period scale must be positive and finite");
    if (grid_points_ < 3 * cutoff_ + 2)
        throw std::invalid_argument("grid points per axis must be >= 3K+2 for alias-free products");
    double total = 1.0;
    for (int i = 0; i < dimension_; ++i) total *= grid_points_;
    if (total > 1.6e8)
        throw std::invalid_argument("requested grid is too large");
}

std::size_t FrequencyLattice::index_of(const Mode& xi) const {
    std::size_t idx = 0;
    const int m = modes_per_axis();
    for (int i = 0; i < dimension_; ++i) {
        const int c = xi[i];
        if (c < -cutoff_ || c > cutoff_)
            throw std::out_of_range("mode outside lattice");
        idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(c + cutoff_);
    }
    return idx;
}

Mode FrequencyLattice::mode_of(std::size_t index) const {
    Mode xi{0, 0, 0, 0};
    const int m = modes_per_axis();
    for (int i = dimension_ - 1; i >= 0; --i) {
        xi[i] = static_cast<int>(index % static_cast<std::size_t>(m)) - cutoff_;
        index /= static_cast<std::size_t>(m);
    }
    if (index != 0) throw std::out_of_range("mode index outside lattice");
    return xi;
}

std::int64_t FrequencyLattice::mode_norm_sq(const Mode& xi, int dimension) {
    std::int64_t s = 0;
    for (int i = 0; i < dimension; ++i) s += static_cast<std::int64_t>(xi[i]) * xi[i];
    return s;
}

double FrequencyLattice::physical_norm_sq(const Mode& xi) const {
    return static_cast<double>(norm_sq(xi)) / (period_scale_ * period_scale_);
}

bool FrequencyLattice::operator==(const FrequencyLattice& other) const {
    return dimension_ == other.dimension_ && cutoff_ == other.cutoff_ &&
           period_scale_ == other.period_scale_ && grid_points_ == other.grid_points_;
}

} // namespace qdnls
