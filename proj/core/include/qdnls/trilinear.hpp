#pragma once

#include "qdnls/bump.hpp"
#include "qdnls/field.hpp"
#include "qdnls/rational.hpp"
#include "qdnls/resonance.hpp"
#include "qdnls/result_table.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace qdnls {

struct TrilinearOptions {
    int time_samples = 1024;  // time-torus resolution (one common period)
    bool resonant_demo = false;
};

// Modulation split certificate for the lowest-piece cancellation. The
// requested cutoff is the dyadic floor of N_max^2 / C_split; it is certified
// when exact integer arithmetic shows no interacting frequency triple can
// keep all three factors below the cutoff, including wrap-around of the
// discrete time bins. When the requested cutoff fails, the largest certified
// smaller dyadic cutoff is used instead; if none exists the requested cutoff
// is kept and marked uncertified.
struct TrilinearCertificate {
    DyadicIndex requested_M = 1;
    DyadicIndex effective_M = 1;
    bool certified = false;
    bool gap_attained = false;  // some zero-sum triple meets the three shells
    Rational shell_gap;         // min |sigma1 n1 + sigma2 n2 + sigma3 n3| when attained
};

TrilinearCertificate certify_split(const std::array<Rational, 3>& sigmas,
                                   const std::array<DyadicIndex, 3>& shells, int d,
                                   double c_split, int time_samples);

// Low/high modulation profiles of the [0,T)-truncated phase e^{-i sigma n t}
// over one period of the time torus, filtered exactly as modulation_project
// filters a trajectory bin (forward DFT, centered bins, s = tau + sigma*n).
std::pair<std::vector<Complex>, std::vector<Complex>> truncated_phase_profiles(
    double sigma, double norm_sq, int time_samples, int truncated_samples,
    double period, DyadicIndex M);

// Splits the truncated triple product of free evolutions into the five
// modulation pieces (low low low, high high high, and the three mixed terms
// that complete the partition) plus the direct integral, for seeded shell
// data. Rows carry one quantity per line: |J1|, |J2|, |J31|, |J32|, |J33|,
// |direct|, the relative identity defect, N_max * |direct|, and
// |J1| / (product of data l2 norms); running_sup tracks each quantity's
// running maximum across trials. Resonant coefficient triples are rejected
// unless options.resonant_demo is set, in which case the data sit exactly on
// a resonant witness triple and J1 is expected to be large.
ResultTable trilinear_J(const std::array<DyadicIndex, 3>& shells,
                        const std::array<Rational, 3>& sigmas, int d, double T,
                        double c_split, int trials, std::uint64_t seed,
                        const TrilinearOptions& options = {});

}  // namespace qdnls
