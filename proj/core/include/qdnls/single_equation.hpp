#pragma once

#include "qdnls/field.hpp"
#include "qdnls/trajectory.hpp"

#include <cstddef>

namespace qdnls {

// Fixed-count mild iteration for the scalar derivative equation
//   (i d_t - Lap) u = d_axis (conj(u)^2)
// starting from the free evolution e^{-it Lap} of the datum, on a uniform
// grid of `samples` nodes spanning [0, T]. The datum must be a one-component
// field and axis < dimension.
//
// Two independent routes compute the same iteration:
//  - single_equation_iterate integrates the scalar Duhamel formula directly;
//  - single_equation_via_system drives the coupled-system map with
//    coefficients (-1, 1, 1), re-slaving v := conj(u) and
//    w := -2 conj(u) e_axis after every iterate, and returns the u component.
// Their outputs agree to roundoff; keeping both turns the reduction into a
// cross-check instead of a definition.
Trajectory single_equation_iterate(const SpectralField& datum, int axis, double T,
                                   std::size_t samples, int iterates);
Trajectory single_equation_via_system(const SpectralField& datum, int axis, double T,
                                      std::size_t samples, int iterates);

}  // namespace qdnls
