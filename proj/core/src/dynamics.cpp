#include "qdnls/dynamics.hpp"

#include "qdnls/norms.hpp"
#include "qdnls/products.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qdnls {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void check_state(const FieldTriple& state) {
    const int d = state.lattice().dimension();
    if (state.u.lattice() != state.v.lattice() || state.u.lattice() != state.w.lattice())
        throw std::invalid_argument("dynamics: state fields must share a lattice");
    if (state.u.components() != state.v.components() || state.w.components() != d)
        throw std::invalid_argument("dynamics: state fields have mismatched components");
}

void check_shared_grid(const Trajectory& f, const Trajectory& g) {
    if (f.fields.empty() || g.fields.empty())
        throw std::invalid_argument("dynamics: empty trajectory");
    if (f.samples() != g.samples())
        throw std::invalid_argument("dynamics: trajectories have different sample counts");
    if (f.lattice() != g.lattice())
        throw std::invalid_argument("dynamics: trajectories have different lattices");
    if (std::abs(f.dt - g.dt) > 1e-12 * std::max({std::abs(f.dt), std::abs(g.dt), 1.0}))
        throw std::invalid_argument("dynamics: trajectories have different time steps");
}

std::size_t snap_to_grid(const Trajectory& f, double t) {
    if (!(f.dt > 0.0)) throw std::invalid_argument("dynamics: trajectory has no time step");
    const double pos = t / f.dt;
    const auto j = static_cast<long long>(std::llround(pos));
    if (j < 0 || static_cast<std::size_t>(j) >= f.samples())
        throw std::invalid_argument("dynamics: time outside the sampled interval");
    if (std::abs(t - static_cast<double>(j) * f.dt) > 1e-9 * f.dt)
        throw std::invalid_argument("dynamics: time does not lie on the sample grid");
    return static_cast<std::size_t>(j);
}

}  // namespace

// Trapezoid in the twisted frame: S_j = S_{j-1} + dt/2 (G_{j-1} + G_j) with
// G_j = e^{-i t_j sigma Lap} F_j, and I_j = -i e^{i t_j sigma Lap} S_j.
Trajectory duhamel_integral_path(double sigma, double dt,
                                 const std::vector<SpectralField>& integrand) {
    if (integrand.empty()) throw std::invalid_argument("duhamel_integral_path: empty integrand");
    if (!(dt > 0.0)) throw std::invalid_argument("duhamel_integral_path: requires dt > 0");
    Trajectory out;
    out.dt = dt;
    out.sigma = sigma;
    out.fields.reserve(integrand.size());

    SpectralField running = integrand.front();
    running.set_zero();
    out.fields.push_back(running);  // I_0 = 0

    SpectralField prev_twisted = integrand.front();
    for (std::size_t j = 1; j < integrand.size(); ++j) {
        const double tj = dt * static_cast<double>(j);
        SpectralField twisted = free_evolution(integrand[j], sigma, -tj);
        add_scaled(running, prev_twisted, Complex(0.5 * dt, 0.0));
        add_scaled(running, twisted, Complex(0.5 * dt, 0.0));
        out.fields.push_back(scaled(free_evolution(running, sigma, tj), kMinusI));
        prev_twisted = std::move(twisted);
    }
    return out;
}

namespace {

SpectralField i1_integrand(const SpectralField& f, const SpectralField& g) {
    return pointwise_product(divergence(f), g);
}

SpectralField i2_integrand(const SpectralField& f, const SpectralField& g) {
    return gradient(dot_product(f, g));
}

template <typename Integrand>
std::vector<SpectralField> integrand_samples(const Trajectory& f, const Trajectory& g,
                                             std::size_t count, Integrand&& make) {
    std::vector<SpectralField> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) out.push_back(make(f.fields[j], g.fields[j]));
    return out;
}

void triple_add_scaled(FieldTriple& a, const FieldTriple& b, double factor) {
    add_scaled(a.u, b.u, Complex(factor, 0.0));
    add_scaled(a.v, b.v, Complex(factor, 0.0));
    add_scaled(a.w, b.w, Complex(factor, 0.0));
}

std::array<double, 3> dispersion_of(const CoefficientTriple& coeffs) {
    return {coeffs.alpha.to_double(), coeffs.beta.to_double(), coeffs.gamma.to_double()};
}

// 4th-order time-derivative stencils over five consecutive samples, by offset
// from the left end (interior rows use the centered stencil).
// Fourth-order finite difference of the locally re-based twisted path
// C(t') = e^{-i(t' - t_j) sigma Lap} A(t') at its base point t_j. Since
// i C'(t_j) = (i d_t + sigma Lap) A(t_j) exactly, this evaluates the full
// linear operator; differencing C instead of the raw samples keeps the
// stencil error on the nonlinear time scale instead of sigma |xi|^2, the
// same frame the integrator is exact in.
SpectralField linear_operator_fd(const std::vector<SpectralField>& fields, std::size_t j,
                                 double dt, double sigma) {
    const std::size_t n = fields.size();
    SpectralField out = fields[j];
    out.set_zero();
    const double inv = 1.0 / (12.0 * dt);
    auto acc = [&](std::size_t idx, double wgt) {
        const double shift = (static_cast<double>(j) - static_cast<double>(idx)) * dt;
        add_scaled(out, free_evolution(fields[idx], sigma, shift), Complex(wgt * inv, 0.0));
    };
    if (j == 0) {
        acc(0, -25.0), acc(1, 48.0), acc(2, -36.0), acc(3, 16.0), acc(4, -3.0);
    } else if (j == 1) {
        acc(0, -3.0), acc(1, -10.0), acc(2, 18.0), acc(3, -6.0), acc(4, 1.0);
    } else if (j == n - 2) {
        acc(n - 1, 3.0), acc(n - 2, 10.0), acc(n - 3, -18.0), acc(n - 4, 6.0), acc(n - 5, -1.0);
    } else if (j == n - 1) {
        acc(n - 1, 25.0), acc(n - 2, -48.0), acc(n - 3, 36.0), acc(n - 4, -16.0), acc(n - 5, 3.0);
    } else {
        acc(j - 2, 1.0), acc(j - 1, -8.0), acc(j + 1, 8.0), acc(j + 2, -1.0);
    }
    return out;
}

// || i C' - r ||_{H^s}; i C' already carries the full (i d_t + sigma Lap).
double equation_defect(const SpectralField& op, const SpectralField& rhs, double s) {
    SpectralField defect = op;
    for (int c = 0; c < defect.components(); ++c) {
        Complex* out = defect.component_data(c);
        const Complex* r = rhs.component_data(c);
        for (std::size_t m = 0; m < defect.lattice().mode_count(); ++m) {
            out[m] = Complex(0.0, 1.0) * out[m] - r[m];
        }
    }
    return hs_norm(defect, s);
}

}  // namespace

double critical_index(int dimension) {
    if (dimension < 1 || dimension > kMaxDimension)
        throw std::invalid_argument("critical_index: dimension out of range");
    return 0.5 * static_cast<double>(dimension) - 1.0;
}

FieldTriple nonlinearity(const FieldTriple& state) {
    check_state(state);
    const SpectralField div_w = divergence(state.w);
    SpectralField ru = scaled(pointwise_product(div_w, state.v), Complex(-1.0, 0.0));
    SpectralField rv = scaled(pointwise_product(conj_field(div_w), state.u), Complex(-1.0, 0.0));
    SpectralField rw = gradient(dot_product(state.u, state.v, false, true));
    return FieldTriple(std::move(ru), std::move(rv), std::move(rw));
}

Trajectory duhamel_I1_path(double sigma, const Trajectory& f, const Trajectory& g) {
    check_shared_grid(f, g);
    return duhamel_integral_path(sigma, f.dt, integrand_samples(f, g, f.samples(), i1_integrand));
}

Trajectory duhamel_I2_path(double sigma, const Trajectory& f, const Trajectory& g) {
    check_shared_grid(f, g);
    return duhamel_integral_path(sigma, f.dt, integrand_samples(f, g, f.samples(), i2_integrand));
}

SpectralField duhamel_I1(double sigma, const Trajectory& f, const Trajectory& g, double t) {
    check_shared_grid(f, g);
    const std::size_t j = snap_to_grid(f, t);
    const auto integrand = integrand_samples(f, g, j + 1, i1_integrand);
    return duhamel_integral_path(sigma, f.dt, integrand).fields.back();
}

SpectralField duhamel_I2(double sigma, const Trajectory& f, const Trajectory& g, double t) {
    check_shared_grid(f, g);
    const std::size_t j = snap_to_grid(f, t);
    const auto integrand = integrand_samples(f, g, j + 1, i2_integrand);
    return duhamel_integral_path(sigma, f.dt, integrand).fields.back();
}

TrajectoryTriple phi_map(const FieldTriple& data, const TrajectoryTriple& guess,
                         const CoefficientTriple& coeffs, double T) {
    check_state(data);
    check_shared_grid(guess.u, guess.v);
    check_shared_grid(guess.u, guess.w);
    if (guess.u.lattice() != data.lattice())
        throw std::invalid_argument("phi_map: guess and data lattices differ");
    if (std::abs(guess.u.duration() - T) > 1e-9 * std::max(1.0, std::abs(T)))
        throw std::invalid_argument("phi_map: guess grid does not span [0, T]");

    const auto sig = dispersion_of(coeffs);
    const std::size_t n = guess.u.samples();
    const double dt = guess.u.dt;

    // Shared per-sample pieces; conjugating div w costs one small pass per
    // sample instead of materializing a conjugate trajectory.
    auto combine = [&](const SpectralField& datum, double sigma, Trajectory duhamel,
                       double orientation) {
        Trajectory out = std::move(duhamel);
        out.sigma = sigma;
        for (std::size_t j = 0; j < n; ++j) {
            SpectralField free_part = free_evolution(datum, sigma, dt * static_cast<double>(j));
            SpectralField& slot = out.fields[j];
            // slot <- free_part + orientation * slot
            if (orientation != 1.0) {
                for (auto& c : slot.coefficients()) c *= orientation;
            }
            add_scaled(slot, free_part, Complex(1.0, 0.0));
        }
        return out;
    };

    std::vector<SpectralField> integrand;
    integrand.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        integrand.push_back(pointwise_product(divergence(guess.w.fields[j]), guess.v.fields[j]));
    Trajectory phi_u = combine(data.u, sig[0], duhamel_integral_path(sig[0], dt, integrand), -1.0);

    integrand.clear();
    for (std::size_t j = 0; j < n; ++j)
        integrand.push_back(
            pointwise_product(conj_field(divergence(guess.w.fields[j])), guess.u.fields[j]));
    Trajectory phi_v = combine(data.v, sig[1], duhamel_integral_path(sig[1], dt, integrand), -1.0);

    integrand.clear();
    for (std::size_t j = 0; j < n; ++j)
        integrand.push_back(gradient(dot_product(guess.u.fields[j], guess.v.fields[j], false, true)));
    Trajectory phi_w = combine(data.w, sig[2], duhamel_integral_path(sig[2], dt, integrand), 1.0);

    return TrajectoryTriple{std::move(phi_u), std::move(phi_v), std::move(phi_w)};
}

std::pair<TrajectoryTriple, PicardReport> picard_solve(const FieldTriple& data,
                                                       const CoefficientTriple& coeffs, double T,
                                                       double tol, int max_iter,
                                                       std::size_t samples) {
    check_state(data);
    if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: requires tol > 0");
    if (max_iter < 1) throw std::invalid_argument("picard_solve: requires max_iter >= 1");
    if (samples < 5) throw std::invalid_argument("picard_solve: requires at least 5 samples");
    if (!(T > 0.0)) throw std::invalid_argument("picard_solve: requires T > 0");

    const auto sig = dispersion_of(coeffs);
    const double s = critical_index(data.lattice().dimension());
    const std::size_t steps = samples - 1;
    const double dt = T / static_cast<double>(steps);

    TrajectoryTriple current{free_trajectory(data.u, sig[0], dt, steps),
                             free_trajectory(data.v, sig[1], dt, steps),
                             free_trajectory(data.w, sig[2], dt, steps)};

    PicardReport report;
    report.tolerance = tol;
    int stalled = 0;
    for (int k = 1; k <= max_iter; ++k) {
        TrajectoryTriple next = phi_map(data, current, coeffs, T);
        const double diff = sup_hs_difference(next, current, s);
        report.iterates = k;
        report.differences.push_back(diff);
        if (report.differences.size() >= 2) {
            const double prev = report.differences[report.differences.size() - 2];
            if (prev > 0.0) {
                const double ratio = diff / prev;
                report.ratios.push_back(ratio);
                if (!(ratio < 1.0))
                    ++stalled;
                else
                    stalled = 0;
            }
        }
        current = std::move(next);
        if (diff < tol) {
            report.converged = true;
            break;
        }
        if (stalled >= 3)
            throw PicardDivergenceError(
                "picard_solve: contraction ratios stayed >= 1 for 3 consecutive iterates",
                std::move(report));
    }
    report.final_residual = pde_residual(current, coeffs);
    return {std::move(current), std::move(report)};
}

TrajectoryTriple step_evolve(const FieldTriple& data, const CoefficientTriple& coeffs, double T,
                             double dt, const StepOptions& options) {
    check_state(data);
    if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("step_evolve: requires T, dt > 0");
    const auto steps_ll = static_cast<long long>(std::llround(T / dt));
    if (steps_ll < 1 || std::abs(static_cast<double>(steps_ll) * dt - T) >
                            1e-9 * std::max({1.0, T, dt}))
        throw std::invalid_argument("step_evolve: T must be a whole number of steps");
    const int steps = static_cast<int>(steps_ll);
    const int stride = options.store_stride;
    if (stride < 1 || steps % stride != 0)
        throw std::invalid_argument("step_evolve: store_stride must divide the step count");

    const auto sig = dispersion_of(coeffs);
    const double s = critical_index(data.lattice().dimension());
    const double initial = hs_norm(data, s);
    const double guard = options.blow_up_factor * (initial > 0.0 ? initial : 1.0);
    const double scale = options.nonlinearity_scale;

    auto untwist = [&](const FieldTriple& B, double t) {
        return FieldTriple(free_evolution(B.u, sig[0], t), free_evolution(B.v, sig[1], t),
                           free_evolution(B.w, sig[2], t));
    };
    // d/dt of the twisted state: -i e^{-it sigma Lap} R(e^{it sigma Lap} B).
    auto slope = [&](const FieldTriple& B, double t) {
        const FieldTriple R = nonlinearity(untwist(B, t));
        const Complex factor(0.0, -scale);
        return FieldTriple(scaled(free_evolution(R.u, sig[0], -t), factor),
                           scaled(free_evolution(R.v, sig[1], -t), factor),
                           scaled(free_evolution(R.w, sig[2], -t), factor));
    };

    TrajectoryTriple out;
    out.u.dt = out.v.dt = out.w.dt = dt * static_cast<double>(stride);
    out.u.sigma = sig[0];
    out.v.sigma = sig[1];
    out.w.sigma = sig[2];
    out.u.fields.push_back(data.u);
    out.v.fields.push_back(data.v);
    out.w.fields.push_back(data.w);
    if (options.observer) options.observer(0, 0.0, data);

    FieldTriple twisted = data;
    for (int step = 1; step <= steps; ++step) {
        const double t0 = dt * static_cast<double>(step - 1);

        const FieldTriple k1 = slope(twisted, t0);
        FieldTriple stage = twisted;
        triple_add_scaled(stage, k1, 0.5 * dt);
        const FieldTriple k2 = slope(stage, t0 + 0.5 * dt);
        stage = twisted;
        triple_add_scaled(stage, k2, 0.5 * dt);
        const FieldTriple k3 = slope(stage, t0 + 0.5 * dt);
        stage = twisted;
        triple_add_scaled(stage, k3, dt);
        const FieldTriple k4 = slope(stage, t0 + dt);

        triple_add_scaled(twisted, k1, dt / 6.0);
        triple_add_scaled(twisted, k2, dt / 3.0);
        triple_add_scaled(twisted, k3, dt / 3.0);
        triple_add_scaled(twisted, k4, dt / 6.0);

        const double t = dt * static_cast<double>(step);
        const FieldTriple state = untwist(twisted, t);
        for (const SpectralField* f : {&state.u, &state.v, &state.w}) {
            const double norm = hs_norm(*f, s);
            if (norm > guard)
                throw BlowUpError("step_evolve: field norm exceeded the blow-up guard", step, t,
                                  norm);
        }
        if (options.observer) options.observer(step, t, state);
        if (step % stride == 0) {
            out.u.fields.push_back(state.u);
            out.v.fields.push_back(state.v);
            out.w.fields.push_back(state.w);
        }
    }
    return out;
}

double mass(const FieldTriple& state) {
    const auto& lattice = state.lattice();
    const double vol =
        std::pow(2.0 * std::numbers::pi * lattice.period_scale(), lattice.dimension());
    auto l2sq = [&](const SpectralField& f) {
        double total = 0.0;
        for (const auto& c : f.coefficients()) total += std::norm(c);
        return vol * total;
    };
    return 2.0 * l2sq(state.u) + l2sq(state.v) + l2sq(state.w);
}

double energy(const FieldTriple& state, const CoefficientTriple& coeffs) {
    const auto& lattice = state.lattice();
    const double vol =
        std::pow(2.0 * std::numbers::pi * lattice.period_scale(), lattice.dimension());
    auto grad_sq = [&](const SpectralField& f) {
        double total = 0.0;
        for (int c = 0; c < f.components(); ++c) {
            const Complex* data = f.component_data(c);
            for (std::size_t m = 0; m < lattice.mode_count(); ++m)
                total += lattice.physical_norm_sq(lattice.mode_of(m)) * std::norm(data[m]);
        }
        return vol * total;
    };
    const SpectralField coupling = gradient(dot_product(state.u, state.v, false, true));
    Complex pairing(0.0, 0.0);
    for (int c = 0; c < state.w.components(); ++c) {
        const Complex* wc = state.w.component_data(c);
        const Complex* pc = coupling.component_data(c);
        for (std::size_t m = 0; m < lattice.mode_count(); ++m) pairing += wc[m] * std::conj(pc[m]);
    }
    return coeffs.alpha.to_double() * grad_sq(state.u) + coeffs.beta.to_double() * grad_sq(state.v) +
           coeffs.gamma.to_double() * grad_sq(state.w) + 2.0 * vol * pairing.real();
}

Trajectory scaling_transform(const Trajectory& traj, const Rational& lambda) {
    if (lambda.sign() <= 0 || !(lambda.is_integer() || reciprocal(lambda).is_integer()))
        throw std::invalid_argument(
            "scaling_transform: lambda must be a positive integer or reciprocal integer");
    if (traj.fields.empty()) throw std::invalid_argument("scaling_transform: empty trajectory");
    const double lam = lambda.to_double();
    const auto& old = traj.lattice();
    const FrequencyLattice rescaled(old.dimension(), old.cutoff(), old.period_scale() * lam,
                                    old.grid_points());
    Trajectory out;
    out.dt = traj.dt * lam * lam;
    out.sigma = traj.sigma;
    out.fields.reserve(traj.samples());
    for (const auto& field : traj.fields) {
        SpectralField next(rescaled, field.components());
        auto& dst = next.coefficients();
        const auto& src = field.coefficients();
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / lam;
        out.fields.push_back(std::move(next));
    }
    return out;
}

TrajectoryTriple scaling_transform(const TrajectoryTriple& traj, const Rational& lambda) {
    return TrajectoryTriple{scaling_transform(traj.u, lambda), scaling_transform(traj.v, lambda),
                            scaling_transform(traj.w, lambda)};
}

std::vector<double> pde_residual_series(const TrajectoryTriple& traj,
                                        const CoefficientTriple& coeffs) {
    check_shared_grid(traj.u, traj.v);
    check_shared_grid(traj.u, traj.w);
    const std::size_t n = traj.u.samples();
    if (n < 5) throw std::invalid_argument("pde_residual: needs at least 5 samples");
    const auto sig = dispersion_of(coeffs);
    const double s = critical_index(traj.u.lattice().dimension());
    const double dt = traj.u.dt;

    std::vector<double> series(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const FieldTriple state(traj.u.fields[j], traj.v.fields[j], traj.w.fields[j]);
        const FieldTriple rhs = nonlinearity(state);
        const double ru =
            equation_defect(linear_operator_fd(traj.u.fields, j, dt, sig[0]), rhs.u, s);
        const double rv =
            equation_defect(linear_operator_fd(traj.v.fields, j, dt, sig[1]), rhs.v, s);
        const double rw =
            equation_defect(linear_operator_fd(traj.w.fields, j, dt, sig[2]), rhs.w, s);
        series[j] = std::max({ru, rv, rw});
    }
    return series;
}

double pde_residual(const TrajectoryTriple& traj, const CoefficientTriple& coeffs) {
    const auto series = pde_residual_series(traj, coeffs);
    return *std::max_element(series.begin(), series.end());
}

}  // namespace qdnls
