#pragma once

#include <complex>
#include <vector>

namespace qdnls {

// Thin process-wide wrapper around FFTW complex transforms with a plan cache.
// Transforms are unnormalized: backward(forward(x)) == n * x.
// Safe for concurrent callers (executions are serialized per plan).
namespace fft {

// In-place multi-dimensional DFT, row-major dims.
// sign = -1: forward, coefficients e^{-i k x}; sign = +1: backward, e^{+i k x}.
void transform(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign);

// One-dimensional helper for time-direction transforms.
void transform_1d(std::complex<double>* data, int n, int sign);

} // namespace fft

} // namespace qdnls
