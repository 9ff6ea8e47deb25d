#include "qdnls/single_equation.hpp"

#include "qdnls/dynamics.hpp"
#include "qdnls/products.hpp"
#include "qdnls/resonance.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace qdnls {

namespace {

void check_input(const SpectralField& datum, int axis, double T, std::size_t samples,
                 int iterates) {
    if (datum.components() != 1)
        throw std::invalid_argument("single_equation: datum must be a one-component field");
    if (axis < 0 || axis >= datum.lattice().dimension())
        throw std::invalid_argument("single_equation: axis out of range");
    if (!(T > 0.0)) throw std::invalid_argument("single_equation: requires T > 0");
    if (samples < 2) throw std::invalid_argument("single_equation: requires at least 2 samples");
    if (iterates < 0) throw std::invalid_argument("single_equation: negative iterate count");
}

// -2 conj(f) placed in the given component of a d-component field.
SpectralField slaved_gradient_field(const SpectralField& f, int axis) {
    const auto& lattice = f.lattice();
    SpectralField out(lattice, lattice.dimension());
    const SpectralField bar = conj_field(f);
    Complex* dst = out.component_data(axis);
    const Complex* src = bar.component_data(0);
    for (std::size_t m = 0; m < lattice.mode_count(); ++m) dst[m] = -2.0 * src[m];
    return out;
}

Trajectory slaved_gradient_trajectory(const Trajectory& u, int axis) {
    Trajectory out;
    out.dt = u.dt;
    out.sigma = -u.sigma;
    out.fields.reserve(u.samples());
    for (const auto& field : u.fields) out.fields.push_back(slaved_gradient_field(field, axis));
    return out;
}

}  // namespace

Trajectory single_equation_iterate(const SpectralField& datum, int axis, double T,
                                   std::size_t samples, int iterates) {
    check_input(datum, axis, T, samples, iterates);
    const std::size_t steps = samples - 1;
    const double dt = T / static_cast<double>(steps);
    const double sigma = -1.0;

    Trajectory current = free_trajectory(datum, sigma, dt, steps);
    std::vector<SpectralField> integrand;
    integrand.reserve(samples);
    for (int k = 0; k < iterates; ++k) {
        integrand.clear();
        for (const auto& field : current.fields)
            integrand.push_back(
                partial_derivative(pointwise_product(field, field, true, true), axis));
        Trajectory next = duhamel_integral_path(sigma, dt, integrand);
        for (std::size_t j = 0; j < samples; ++j)
            add_scaled(next.fields[j],
                       free_evolution(datum, sigma, dt * static_cast<double>(j)),
                       Complex(1.0, 0.0));
        next.sigma = sigma;
        current = std::move(next);
    }
    return current;
}

Trajectory single_equation_via_system(const SpectralField& datum, int axis, double T,
                                      std::size_t samples, int iterates) {
    check_input(datum, axis, T, samples, iterates);
    const std::size_t steps = samples - 1;
    const double dt = T / static_cast<double>(steps);
    const CoefficientTriple coeffs = classify(Rational(-1), Rational(1), Rational(1));

    const SpectralField v0 = conj_field(datum);
    const SpectralField w0 = slaved_gradient_field(datum, axis);
    const FieldTriple data(datum, v0, w0);

    TrajectoryTriple guess{free_trajectory(datum, -1.0, dt, steps),
                           free_trajectory(v0, 1.0, dt, steps),
                           free_trajectory(w0, 1.0, dt, steps)};
    for (int k = 0; k < iterates; ++k) {
        TrajectoryTriple next = phi_map(data, guess, coeffs, T);
        guess.u = std::move(next.u);
        guess.v = conj_trajectory(guess.u);
        guess.w = slaved_gradient_trajectory(guess.u, axis);
    }
    return std::move(guess.u);
}

}  // namespace qdnls
