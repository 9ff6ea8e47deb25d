#pragma once

#include "qdnls/bump.hpp"
#include "qdnls/trajectory.hpp"

namespace qdnls {

// Multipliers for the distance s = tau + sigma*|xi|^2 from the dispersion
// surface. The band weights tile dyadically: summing band weights for
// M' < M gives exactly low_modulation_weight(M, s).
double low_modulation_weight(DyadicIndex M, double s);   // chi(2s/M); identically 0 for M = 1
double high_modulation_weight(DyadicIndex M, double s);  // 1 - low
double band_modulation_weight(DyadicIndex M, double s);  // psi_M(s)

enum class ModulationBand { low, high, band };

// Filter a trajectory by modulation relative to the group e^{it sigma Laplace}.
// The samples are read as one full period P = samples * dt of the time torus
// (the t = P sample is the t = 0 sample and must not be duplicated). Time
// frequencies are the centered DFT bins tau_k = k * 2*pi/P, and each (tau, xi)
// bin is weighted by the chosen multiplier at s = tau + sigma*|xi/L|^2.
Trajectory modulation_project(const Trajectory& traj, double sigma, DyadicIndex M,
                              ModulationBand band);

} // namespace qdnls
