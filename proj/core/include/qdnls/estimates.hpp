#pragma once

#include "qdnls/bump.hpp"
#include "qdnls/field.hpp"
#include "qdnls/rational.hpp"
#include "qdnls/result_table.hpp"
#include "qdnls/rng.hpp"

#include <cstdint>
#include <vector>

namespace qdnls {

// Sharp dyadic shell membership: N = 1 keeps |xi|^2 <= 1 (the mean included),
// otherwise N^2/4 < |xi|^2 <= N^2. These tile the lattice exactly.
bool in_sharp_shell(DyadicIndex N, std::int64_t norm_sq);
std::vector<Mode> sharp_shell_modes(DyadicIndex N, int d);

// Unit-variance complex Gaussians on the sharp shell of an otherwise zero
// field over the cube lattice of cutoff N. Amplitudes are drawn for every
// lattice mode in index order, so the draw sequence does not depend on the
// support geometry.
SpectralField shell_gaussian_field(DyadicIndex N, int d, Rng& rng);

// Same drawing rule restricted to the strip |xi_1 - offset| <= M inside the
// cube of cutoff N.
SpectralField strip_gaussian_field(DyadicIndex N, DyadicIndex M, int offset, int d,
                                   Rng& rng);

// Left-rectangle space-time L^p norm of e^{it sigma Laplace} datum over one
// tiling of [0, period) with the given number of slices, evaluated on the
// lattice's default dealiased grid. p may be infinity (grid sup).
double free_lp_norm(const SpectralField& datum, double sigma, double p, double period,
                    int time_samples);

// Minimal time period of e^{it sigma Laplace} on integer frequencies.
double sigma_period(const Rational& sigma);

ResultTable strichartz_ratio(DyadicIndex N, double p, const Rational& sigma, int d,
                             int trials, std::uint64_t seed);

ResultTable strip_ratio(DyadicIndex N, DyadicIndex M, double p, const Rational& sigma,
                        int d, int trials, std::uint64_t seed);

enum class BilinearCase { HL, HHL };

// One mode of a sparse spectral datum.
struct SparseMode {
    Mode xi{};
    std::int64_t norm_sq = 0;
    Complex amp{};
};
using SparseField = std::vector<SparseMode>;

// Gaussian data on the sharp shell, thinned to at most max_modes modes by a
// seeded draw when the shell is larger. Modes stay in lattice order.
SparseField sparse_shell_gaussian(DyadicIndex N, int d, std::size_t max_modes, Rng& rng);

double sparse_l2_norm(const SparseField& field);

// Exact L^2(T_P x T^d) norm of the product of two free evolutions with
// spectral data f1, f2 and an optional output multiplier in the sum
// frequency: the product's space-time spectrum is supported on exact
// frequency pairs (xi_1 + xi_2, sigma_1|xi_1|^2 + sigma_2|xi_2|^2), which are
// collected and summed without any grid. P is the common period.
double bilinear_pair_norm(const SparseField& f1, const Rational& sigma1,
                          const SparseField& f2, const Rational& sigma2, int d,
                          DyadicIndex output_cutoff);  // 0: no output projection

ResultTable bilinear_ratio(DyadicIndex H, DyadicIndex L, BilinearCase kind,
                           const Rational& sigma1, const Rational& sigma2, int d,
                           int trials, std::uint64_t seed);

struct StripBlock {
    std::int64_t k = 0;
    std::int64_t l = 0;
    double omega_center = 0.0;
    double omega_radius = 0.0;
    double norm_sq = 0.0;
};

struct StripDecomposition {
    std::int64_t strip_width = 1;  // M = max(L^2/H, 1)
    std::vector<StripBlock> blocks;
    double sum_norm_sq = 0.0;
    double block_norm_sq_total = 0.0;
    double orthogonality_ratio = 1.0;  // sum norm^2 / total block norm^2
};

// Slices both factors into first-axis strips of width max(L^2/H, 1), forms
// the output-projected product block for each occupied strip pair, and
// reports each block's measured time-frequency support together with the
// almost-orthogonality ratio of the block sum.
StripDecomposition strip_blocks(const SparseField& f1, const Rational& sigma1,
                                const SparseField& f2, const Rational& sigma2,
                                DyadicIndex H, DyadicIndex L, int d);

ResultTable strip_decomposition_demo(DyadicIndex H, DyadicIndex L, const Rational& sigma1,
                                     const Rational& sigma2, int d,
                                     std::uint64_t seed = 1);

}  // namespace qdnls
