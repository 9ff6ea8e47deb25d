#pragma once

#include "qdnls/bump.hpp"
#include "qdnls/lattice.hpp"
#include "qdnls/rational.hpp"

#include <array>
#include <cstdint>

namespace qdnls {

// Exact classification of a dispersion-coefficient triple.
struct CoefficientTriple {
    Rational alpha, beta, gamma;

    // coefficient_j = m[j] * sigma_common with sigma_common > 0 and the m[j]
    // integers sharing no common factor; every mode evolves with an integer
    // multiple of sigma_common, so all three linear groups are jointly
    // periodic with period 2*pi / sigma_common.
    std::array<std::int64_t, 3> m{};
    Rational sigma_common;
    double period = 0.0;

    // beta*gamma - alpha*gamma - alpha*beta > 0, the exact form of
    // alpha*beta*gamma*(1/alpha - 1/beta - 1/gamma) > 0.
    bool hh_nonresonant = false;
    // (alpha - beta)(beta + gamma)(gamma - alpha) != 0.
    bool hl_nonresonant = false;
    bool rational_ratio = false;
    bool same_sign = false;
};

// Throws std::invalid_argument when any coefficient is zero.
CoefficientTriple classify(const Rational& alpha, const Rational& beta, const Rational& gamma);

// h = sigma_1|xi_1|^2 + sigma_2|xi_2|^2 + sigma_3|xi_3|^2, exact. The modes
// must sum to zero (a convolution triple); throws std::invalid_argument
// otherwise.
Rational resonance_value(const std::array<Rational, 3>& sigmas,
                         const std::array<Mode, 3>& modes, int dimension);

struct ScanResult {
    Rational min_ratio;            // min |h| / max_j |xi_j|^2
    // Canonical minimizer: fewest zero modes, then smallest max |xi_j|^2,
    // then lexicographically largest (xi_1, xi_2).
    std::array<Mode, 3> witness{};
    std::uint64_t triples_checked = 0;
};

// Exhaustive minimum of |h| / max_j |xi_j|^2 over zero-sum triples with
// 0 < max_j |xi_j| <= K (Euclidean length). Deterministic for any worker
// count: ties keep the earliest triple in the serial enumeration order
// (lexicographic in xi_1, then xi_2). Throws CostGuardError when the pair
// count exceeds the built-in budget.
ScanResult scan_min_ratio(const std::array<Rational, 3>& sigmas, int K, int d);

// Membership test for the dyadic frequency shell N: |xi| strictly between
// N/2 and 2N for N >= 2, and |xi| < 2 for N = 1 (zero included). This is the
// support of the dyadic bump at N, so it is exactly the set of modes a
// shell-projected field can occupy.
bool in_dyadic_shell(DyadicIndex N, std::int64_t norm_sq);

struct ShellScanResult {
    bool attained = false;  // false: no zero-sum triple meets the three shells
    Rational min_abs_h;     // meaningful only when attained
    std::array<Mode, 3> witness{};
    std::uint64_t triples_checked = 0;
};

// Exact minimum of |h| over zero-sum triples with xi_j in the dyadic shell
// shells[j]. Enumerates the two thinnest shells and solves for the third.
ShellScanResult shell_min_resonance(const std::array<Rational, 3>& sigmas,
                                    const std::array<DyadicIndex, 3>& shells, int d);

}  // namespace qdnls
