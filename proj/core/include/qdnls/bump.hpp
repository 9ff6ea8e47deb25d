#pragma once

#include <cstdint>

namespace qdnls {

// Dyadic index: 1, 2, 4, 8, ...
using DyadicIndex = std::int64_t;

bool is_dyadic(DyadicIndex n);
DyadicIndex next_pow2(double x);        // smallest dyadic >= max(x, 1)
DyadicIndex prev_pow2(double x);        // largest dyadic <= x (requires x >= 1)

// Smooth step: 0 for t <= 0, 1 for t >= 1, strictly increasing in between.
double smooth_step(double t);

// Radial cutoff: 1 on [-1, 1], 0 outside (-2, 2), smooth in between.
double chi(double s);

// Dyadic bump: psi_1 = chi, psi_N(s) = chi(s/N) - chi(2s/N) for N >= 2.
// Supported in N/2 < |s| < 2N (N >= 2); the family telescopes:
// sum_{N <= T} psi_N(s) = chi(s/T), which is 1 for |s| <= T.
double bump_weight(DyadicIndex N, double s);

// sum_{dyadic N' >= N} psi_{N'}(s): 1 for N = 1, else 1 - chi(2s/N).
double bump_weight_from(DyadicIndex N, double s);

} // namespace qdnls
