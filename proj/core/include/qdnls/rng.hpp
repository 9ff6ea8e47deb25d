#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace qdnls {

// Deterministic generator with platform-independent output, so seeded runs
// produce byte-identical results everywhere. Trial streams are derived from
// a master seed by hashing a label and trial index (fixed splitting rule).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    double uniform();                    // [0, 1)
    double normal();                     // standard normal, Box-Muller
    std::complex<double> complex_normal(); // unit-variance: Re, Im ~ N(0, 1/2)
    int uniform_int(int lo, int hi);     // inclusive range

    static std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                     std::uint64_t index);
    static Rng for_trial(std::uint64_t master, std::string_view label, std::uint64_t index);

private:
    std::uint64_t state_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace qdnls
