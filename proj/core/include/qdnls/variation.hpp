#pragma once

#include <complex>
#include <vector>

namespace qdnls {

using Complex = std::complex<double>;

// p-variation of a discrete path: the supremum over all increasing sample
// selections j_0 < j_1 < ... < j_m of (sum_k |v_{j_{k+1}} - v_{j_k}|^p)^{1/p}.
// Selections may start and end at any sample. An empty or single-sample path
// has variation zero. Requires p >= 1; throws std::invalid_argument otherwise,
// or when the path is empty.
//
// With append_zero the path is extended by a final zero sample before the
// supremum is taken, so a path that never returns to zero still pays for its
// terminal value.
double vp_variation_norm(const std::vector<Complex>& path, double p,
                         bool append_zero = false);

// Vector-valued paths: increments are measured in the Euclidean norm of the
// component differences. All samples must share one dimension.
double vp_variation_norm(const std::vector<std::vector<Complex>>& path, double p,
                         bool append_zero = false);

// Reference implementation enumerating every increasing selection. Exponential
// cost; refuses paths longer than 20 samples (after any zero append).
double vp_variation_norm_exhaustive(const std::vector<Complex>& path, double p,
                                    bool append_zero = false);

}  // namespace qdnls
