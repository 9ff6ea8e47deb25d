#pragma once

#include "qdnls/field.hpp"
#include "qdnls/trajectory.hpp"

namespace qdnls {

// Sobolev H^s norm: (sum_xi <xi>^{2s} |c(xi)|^2)^{1/2} over all components,
// with <xi>^2 = 1 + |xi/L|^2.
double hs_norm(const SpectralField& f, double s);

// Euclidean combination across the three fields of a state.
double hs_norm(const FieldTriple& state, double s);

// L^2 norm of the represented function on the torus of side 2*pi*L:
// (2*pi*L)^{d/2} times the coefficient l^2 norm.
double physical_l2_norm(const SpectralField& f);

// Space-time L^p norm over one time period and the spatial torus. The samples
// are read as tiling [0, samples*dt) without a duplicated endpoint, so the
// quadrature is a left rectangle rule over every sample. Space is sampled on
// the physical grid (exact for p = 2 by the sampling theorem). p may be
// infinity, giving the sup over all grid points and samples. Throws
// std::invalid_argument for p < 1 or an empty trajectory.
double lp_spacetime_norm(const Trajectory& traj, double p);
// Same with an explicit spatial grid of grid_points^d (grid_points >= 2K+1).
double lp_spacetime_norm(const Trajectory& traj, double p, int grid_points);

// Twisted Y^s norm: per component and mode, the scalar path
// t_j -> e^{+i t_j sigma |xi/L|^2} c(t_j, xi) is given the discrete
// 2-variation norm with a zero sample appended (the right-endpoint
// convention), weighted by <xi>^{2s} and combined in l^2 over modes.
// A free sigma-evolution therefore scores exactly the H^s norm of its datum.
double ys_norm(const Trajectory& traj, double sigma, double s);

// sup over shared sample times of the H^s norm of the difference. Both
// trajectories must have identical lattices, component counts, sample counts,
// and steps.
double sup_hs_difference(const Trajectory& a, const Trajectory& b, double s);
double sup_hs_difference(const TrajectoryTriple& a, const TrajectoryTriple& b, double s);

}  // namespace qdnls
