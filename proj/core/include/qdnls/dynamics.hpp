#pragma once

#include "qdnls/errors.hpp"
#include "qdnls/field.hpp"
#include "qdnls/rational.hpp"
#include "qdnls/resonance.hpp"
#include "qdnls/trajectory.hpp"

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace qdnls {

// Scaling-critical Sobolev index d/2 - 1.
double critical_index(int dimension);

// Right-hand sides of the coupled system
//   (i d_t + alpha Lap) u = -(div w) v
//   (i d_t + beta  Lap) v = -(div conj(w)) u
//   (i d_t + gamma Lap) w = grad(u . conj(v))
// computed with dealiased products. u, v, w must be d-component fields on one
// lattice; throws std::invalid_argument otherwise.
FieldTriple nonlinearity(const FieldTriple& state);

// Duhamel integrals against the sigma-group,
//   I1(f, g)(t) = -i Int_0^t e^{i(t-t') sigma Lap} (div f(t')) g(t') dt'
//   I2(f, g)(t) = -i Int_0^t e^{i(t-t') sigma Lap} grad(f(t') . g(t')) dt'
// by trapezoid quadrature in the twisted frame. Conjugated arguments are the
// caller's job (pass conj_trajectory(...)). The _path forms return the
// integral at every sample of the shared grid; the single-time forms require
// t to lie on the grid (within 1e-9 * dt) and inside [0, duration].
Trajectory duhamel_I1_path(double sigma, const Trajectory& f, const Trajectory& g);
Trajectory duhamel_I2_path(double sigma, const Trajectory& f, const Trajectory& g);
// -i Int_0^{t_j} e^{i(t_j - t') sigma Lap} F(t') dt' at every node, for a
// caller-supplied integrand sequence F_j sampled at t_j = j * dt.
Trajectory duhamel_integral_path(double sigma, double dt,
                                 const std::vector<SpectralField>& integrand);
SpectralField duhamel_I1(double sigma, const Trajectory& f, const Trajectory& g, double t);
SpectralField duhamel_I2(double sigma, const Trajectory& f, const Trajectory& g, double t);

// One application of the fixed-point map:
//   ( e^{it alpha Lap} u0 - I1_alpha(w, v),
//     e^{it beta  Lap} v0 - I1_beta(conj w, u),
//     e^{it gamma Lap} w0 + I2_gamma(u, conj v) )
// sampled on the guess's grid, whose duration must match T.
TrajectoryTriple phi_map(const FieldTriple& data, const TrajectoryTriple& guess,
                         const CoefficientTriple& coeffs, double T);

struct PicardReport {
    int iterates = 0;
    bool converged = false;
    std::vector<double> differences;  // sup-in-time H^{s_c} gap between consecutive iterates
    std::vector<double> ratios;       // differences[k] / differences[k-1]
    double final_residual = 0.0;      // pde_residual of the returned trajectories
    double tolerance = 0.0;
};

// Divergence of the fixed-point iteration, with the evidence attached.
class PicardDivergenceError : public NonConvergenceError {
public:
    PicardDivergenceError(std::string msg, PicardReport rep)
        : NonConvergenceError(std::move(msg), rep.iterates,
                              rep.ratios.empty() ? 0.0 : rep.ratios.back()),
          report(std::move(rep)) {}
    PicardReport report;
};

// Fixed-point iteration of phi_map starting from the free evolution of the
// data, on a uniform grid of `samples` nodes spanning [0, T]. Stops when the
// sup-in-time H^{s_c} difference of consecutive iterates falls below tol
// (converged) or after max_iter applications (reported, not thrown). Three
// consecutive difference ratios >= 1 throw PicardDivergenceError.
std::pair<TrajectoryTriple, PicardReport> picard_solve(const FieldTriple& data,
                                                       const CoefficientTriple& coeffs, double T,
                                                       double tol, int max_iter,
                                                       std::size_t samples = 257);

struct StepOptions {
    double nonlinearity_scale = 1.0;  // 0 turns the stepper into exact free evolution
    double blow_up_factor = 1e6;      // abort threshold, relative to the initial state norm
    int store_stride = 1;             // keep every store_stride-th step (must divide the count)
    // Called at every step (including step 0) with the untwisted state.
    std::function<void(int step, double t, const FieldTriple& state)> observer;
};

// Classical fourth-order integrator in the twisted frame: the linear groups
// are applied exactly per mode, the nonlinearity by four-stage quadrature.
// T/dt must be a whole number of steps. Throws BlowUpError when any field's
// H^{s_c} norm exceeds blow_up_factor times the initial state norm.
TrajectoryTriple step_evolve(const FieldTriple& data, const CoefficientTriple& coeffs, double T,
                             double dt, const StepOptions& options = {});

// Conserved quantities, both with physical-space normalization:
//   mass   = 2||u||^2 + ||v||^2 + ||w||^2  (L^2 squared)
//   energy = alpha||grad u||^2 + beta||grad v||^2 + gamma||grad w||^2
//            + 2 Re (w, grad(u . conj v))_{L^2}
double mass(const FieldTriple& state);
double energy(const FieldTriple& state, const CoefficientTriple& coeffs);

// A_lambda(t, x) = lambda^{-1} A(lambda^{-2} t, lambda^{-1} x): same modes and
// cutoff, torus scale multiplied by lambda, coefficients by 1/lambda, time
// step by lambda^2. lambda must be a positive integer or reciprocal integer;
// throws std::invalid_argument otherwise.
TrajectoryTriple scaling_transform(const TrajectoryTriple& traj, const Rational& lambda);
Trajectory scaling_transform(const Trajectory& traj, const Rational& lambda);

// sup over samples of the H^{s_c} size of (i d_t + sigma_m Lap) A_m - rhs_m
// for the three equations, with d_t replaced by fourth-order finite
// differences (one-sided at the ends). The stencil differences the locally
// re-based twisted path e^{-i(t'-t_j) sigma Lap} A(t'), which evaluates the
// same operator but keeps the O(dt^4) error on the nonlinear time scale,
// matching the integrator's frame. Needs at least 5 samples.
double pde_residual(const TrajectoryTriple& traj, const CoefficientTriple& coeffs);
// Per-sample values (max over the three equations at each node).
std::vector<double> pde_residual_series(const TrajectoryTriple& traj,
                                        const CoefficientTriple& coeffs);

}  // namespace qdnls
