#include "qdnls/field.hpp"

#include "qdnls/fft_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace qdnls {

SpectralField::SpectralField(FrequencyLattice lattice, int components)
    : lattice_(lattice), components_(components) {
    if (components_ < 1) throw std::invalid_argument("field needs at least one component");
    coef_.assign(static_cast<std::size_t>(components_) * lattice_.mode_count(), Complex(0.0, 0.0));
}

Complex& SpectralField::at(int component, std::size_t mode_index) {
    return coef_[static_cast<std::size_t>(component) * lattice_.mode_count() + mode_index];
}

const Complex& SpectralField::at(int component, std::size_t mode_index) const {
    return coef_[static_cast<std::size_t>(component) * lattice_.mode_count() + mode_index];
}

Complex* SpectralField::component_data(int component) {
    return coef_.data() + static_cast<std::size_t>(component) * lattice_.mode_count();
}

const Complex* SpectralField::component_data(int component) const {
    return coef_.data() + static_cast<std::size_t>(component) * lattice_.mode_count();
}

void SpectralField::set_zero() {
    std::fill(coef_.begin(), coef_.end(), Complex(0.0, 0.0));
}

bool SpectralField::compatible_with(const SpectralField& other) const {
    return lattice_ == other.lattice_ && components_ == other.components_;
}

FieldTriple::FieldTriple(SpectralField u_, SpectralField v_, SpectralField w_)
    : u(std::move(u_)), v(std::move(v_)), w(std::move(w_)) {
    if (u.lattice() != v.lattice() || u.lattice() != w.lattice())
        throw std::invalid_argument("field triple components must share a lattice");
    const int d = u.lattice().dimension();
    if (u.components() != v.components())
        throw std::invalid_argument("field triple: u and v must have equal component counts");
    if (w.components() != d)
        throw std::invalid_argument("field triple: w must be C^d-valued");
}

FieldTriple FieldTriple::zero(const FrequencyLattice& lattice) {
    SpectralField f(lattice, lattice.dimension());
    return FieldTriple(f, f, f);
}

namespace {

// Scatter lattice coefficients into the ng^d FFT array (wrapped indices).
void scatter(const SpectralField& f, int component, std::vector<Complex>& grid, int ng) {
    const auto& lat = f.lattice();
    const int d = lat.dimension();
    const int K = lat.cutoff();
    const int m = lat.modes_per_axis();
    std::fill(grid.begin(), grid.end(), Complex(0.0, 0.0));
    const Complex* src = f.component_data(component);

    std::array<int, kMaxDimension> digit{0, 0, 0, 0};
    const std::size_t count = lat.mode_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t g = 0;
        for (int i = 0; i < d; ++i) {
            int xi = digit[i] - K;
            int wrapped = xi >= 0 ? xi : xi + ng;
            g = g * static_cast<std::size_t>(ng) + static_cast<std::size_t>(wrapped);
        }
        grid[g] = src[idx];
        for (int i = d - 1; i >= 0; --i) {
            if (++digit[i] < m) break;
            digit[i] = 0;
        }
    }
}

void gather(const std::vector<Complex>& grid, SpectralField& f, int component, double scale) {
    const auto& lat = f.lattice();
    const int d = lat.dimension();
    const int K = lat.cutoff();
    const int m = lat.modes_per_axis();
    const int ng = lat.grid_points();
    Complex* dst = f.component_data(component);

    std::array<int, kMaxDimension> digit{0, 0, 0, 0};
    const std::size_t count = lat.mode_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t g = 0;
        for (int i = 0; i < d; ++i) {
            int xi = digit[i] - K;
            int wrapped = xi >= 0 ? xi : xi + ng;
            g = g * static_cast<std::size_t>(ng) + static_cast<std::size_t>(wrapped);
        }
        dst[idx] = grid[g] * scale;
        for (int i = d - 1; i >= 0; --i) {
            if (++digit[i] < m) break;
            digit[i] = 0;
        }
    }
}

std::vector<int> grid_dims(const FrequencyLattice& lat) {
    return std::vector<int>(static_cast<std::size_t>(lat.dimension()), lat.grid_points());
}

} // namespace

std::vector<Complex> to_physical(const SpectralField& f, int component) {
    return to_physical(f, component, f.lattice().grid_points());
}

std::vector<Complex> to_physical(const SpectralField& f, int component, int grid_points) {
    if (component < 0 || component >= f.components())
        throw std::out_of_range("component index");
    if (grid_points < f.lattice().modes_per_axis())
        throw std::invalid_argument("sampling grid too small for the mode lattice");
    const int d = f.lattice().dimension();
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(grid_points);
    std::vector<Complex> grid(total);
    scatter(f, component, grid, grid_points);
    fft::transform(grid, std::vector<int>(static_cast<std::size_t>(d), grid_points), +1);
    return grid;
}

void from_physical(const std::vector<Complex>& samples, SpectralField& f, int component) {
    if (component < 0 || component >= f.components())
        throw std::out_of_range("component index");
    if (samples.size() != f.lattice().grid_count())
        throw std::invalid_argument("sample count does not match lattice grid");
    std::vector<Complex> grid = samples;
    fft::transform(grid, grid_dims(f.lattice()), -1);
    gather(grid, f, component, 1.0 / static_cast<double>(f.lattice().grid_count()));
}

SpectralField free_evolution(const SpectralField& f, double sigma, double t) {
    SpectralField out = f;
    const auto& lat = f.lattice();
    const std::size_t count = lat.mode_count();
    std::vector<Complex> phase(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const double q = lat.physical_norm_sq(lat.mode_of(idx));
        const double angle = -t * sigma * q;
        phase[idx] = Complex(std::cos(angle), std::sin(angle));
    }
    for (int c = 0; c < f.components(); ++c) {
        Complex* dst = out.component_data(c);
        for (std::size_t idx = 0; idx < count; ++idx) dst[idx] *= phase[idx];
    }
    return out;
}

SpectralField partial_derivative(const SpectralField& f, int axis) {
    const auto& lat = f.lattice();
    if (axis < 0 || axis >= lat.dimension()) throw std::out_of_range("derivative axis");
    SpectralField out = f;
    const double inv_L = 1.0 / lat.period_scale();
    const std::size_t count = lat.mode_count();
    for (int c = 0; c < f.components(); ++c) {
        Complex* dst = out.component_data(c);
        for (std::size_t idx = 0; idx < count; ++idx) {
            const Mode xi = lat.mode_of(idx);
            dst[idx] *= Complex(0.0, xi[axis] * inv_L);
        }
    }
    return out;
}

SpectralField gradient(const SpectralField& f) {
    if (f.components() != 1) throw std::invalid_argument("gradient expects a scalar field");
    const auto& lat = f.lattice();
    SpectralField out(lat, lat.dimension());
    const double inv_L = 1.0 / lat.period_scale();
    const std::size_t count = lat.mode_count();
    const Complex* src = f.component_data(0);
    for (int axis = 0; axis < lat.dimension(); ++axis) {
        Complex* dst = out.component_data(axis);
        for (std::size_t idx = 0; idx < count; ++idx) {
            const Mode xi = lat.mode_of(idx);
            dst[idx] = src[idx] * Complex(0.0, xi[axis] * inv_L);
        }
    }
    return out;
}

SpectralField divergence(const SpectralField& f) {
    const auto& lat = f.lattice();
    if (f.components() != lat.dimension())
        throw std::invalid_argument("divergence expects a d-component field");
    SpectralField out(lat, 1);
    const double inv_L = 1.0 / lat.period_scale();
    const std::size_t count = lat.mode_count();
    Complex* dst = out.component_data(0);
    for (int axis = 0; axis < lat.dimension(); ++axis) {
        const Complex* src = f.component_data(axis);
        for (std::size_t idx = 0; idx < count; ++idx) {
            const Mode xi = lat.mode_of(idx);
            dst[idx] += src[idx] * Complex(0.0, xi[axis] * inv_L);
        }
    }
    return out;
}

SpectralField conj_field(const SpectralField& f) {
    const auto& lat = f.lattice();
    SpectralField out(lat, f.components());
    const std::size_t count = lat.mode_count();
    for (int c = 0; c < f.components(); ++c) {
        const Complex* src = f.component_data(c);
        Complex* dst = out.component_data(c);
        for (std::size_t idx = 0; idx < count; ++idx) {
            Mode xi = lat.mode_of(idx);
            for (int i = 0; i < lat.dimension(); ++i) xi[i] = -xi[i];
            dst[lat.index_of(xi)] = std::conj(src[idx]);
        }
    }
    return out;
}

SpectralField& add_scaled(SpectralField& f, const SpectralField& g, Complex factor) {
    if (!f.compatible_with(g)) throw std::invalid_argument("field shape mismatch");
    auto& a = f.coefficients();
    const auto& b = g.coefficients();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += factor * b[i];
    return f;
}

SpectralField scaled(const SpectralField& f, Complex factor) {
    SpectralField out = f;
    for (auto& c : out.coefficients()) c *= factor;
    return out;
}

SpectralField sum(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    add_scaled(out, b, Complex(1.0, 0.0));
    return out;
}

SpectralField difference(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    add_scaled(out, b, Complex(-1.0, 0.0));
    return out;
}

} // namespace qdnls
