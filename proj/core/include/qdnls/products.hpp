#pragma once

#include "qdnls/field.hpp"

namespace qdnls {

// Dealiased pointwise products: factors are evaluated on the lattice's
// physical grid (>= 3K+2 points per axis), multiplied, and projected back,
// so the truncated quadratic convolution is exact up to roundoff.
// Set conj_a / conj_b to multiply by the complex conjugate of that factor.

// Componentwise product; a scalar factor broadcasts over the other's components.
SpectralField pointwise_product(const SpectralField& a, const SpectralField& b,
                                bool conj_a = false, bool conj_b = false);

// Scalar field sum_k a_k * b_k (apply conj flags first).
SpectralField dot_product(const SpectralField& a, const SpectralField& b,
                          bool conj_a = false, bool conj_b = false);

} // namespace qdnls
