#pragma once

#include "qdnls/lattice.hpp"

#include <complex>
#include <vector>

namespace qdnls {

using Complex = std::complex<double>;

// A C^c-valued function on the torus, stored as Fourier coefficients on the
// truncated lattice: f(x) = sum_xi c_xi e^{i xi.x / L} per component.
// Layout: component-major, modes in canonical lexicographic order.
class SpectralField {
public:
    SpectralField(FrequencyLattice lattice, int components);

    const FrequencyLattice& lattice() const { return lattice_; }
    int components() const { return components_; }

    Complex& at(int component, std::size_t mode_index);
    const Complex& at(int component, std::size_t mode_index) const;
    Complex& at(int component, const Mode& xi) { return at(component, lattice_.index_of(xi)); }
    const Complex& at(int component, const Mode& xi) const { return at(component, lattice_.index_of(xi)); }

    Complex* component_data(int component);
    const Complex* component_data(int component) const;

    std::vector<Complex>& coefficients() { return coef_; }
    const std::vector<Complex>& coefficients() const { return coef_; }

    void set_zero();
    bool compatible_with(const SpectralField& other) const;

private:
    FrequencyLattice lattice_;
    int components_;
    std::vector<Complex> coef_;
};

// The (u, v, w) state of the coupled system. In the full system all three
// fields are C^d-valued; u and v may share any component count (the
// single-equation reduction uses scalars) but w must be C^d-valued so that
// its divergence and the gradient coupling are defined.
struct FieldTriple {
    SpectralField u;
    SpectralField v;
    SpectralField w;

    FieldTriple(SpectralField u_, SpectralField v_, SpectralField w_);
    const FrequencyLattice& lattice() const { return u.lattice(); }
    static FieldTriple zero(const FrequencyLattice& lattice);
};

// Collocation samples of one component on the lattice's physical grid
// (row-major, axis step 2*pi*L / grid_points).
std::vector<Complex> to_physical(const SpectralField& f, int component);
// Same, sampled on an explicit grid of grid_points^d (grid_points >= 2K+1).
std::vector<Complex> to_physical(const SpectralField& f, int component, int grid_points);
// Inverse of to_physical; grid content outside the lattice modes is discarded.
void from_physical(const std::vector<Complex>& samples, SpectralField& f, int component);

// e^{i t sigma Laplacian}: multiplies each mode by e^{-i t sigma |xi/L|^2}.
SpectralField free_evolution(const SpectralField& f, double sigma, double t);

// Componentwise spatial derivative d/dx_axis (multiplier i xi_axis / L).
SpectralField partial_derivative(const SpectralField& f, int axis);
// Gradient of a scalar field (c = 1) -> d-component field.
SpectralField gradient(const SpectralField& f);
// Divergence of a d-component field -> scalar field.
SpectralField divergence(const SpectralField& f);

// Complex conjugate of the represented function: coef'(xi) = conj(coef(-xi)).
SpectralField conj_field(const SpectralField& f);

// Linear arithmetic.
SpectralField& add_scaled(SpectralField& f, const SpectralField& g, Complex factor); // f += factor * g
SpectralField scaled(const SpectralField& f, Complex factor);
SpectralField sum(const SpectralField& a, const SpectralField& b);
SpectralField difference(const SpectralField& a, const SpectralField& b);

} // namespace qdnls
