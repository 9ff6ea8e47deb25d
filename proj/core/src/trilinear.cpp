#include "qdnls/trilinear.hpp"

#include "qdnls/errors.hpp"
#include "qdnls/estimates.hpp"
#include "qdnls/fft_engine.hpp"
#include "qdnls/field.hpp"
#include "qdnls/modulation.hpp"
#include "qdnls/norms.hpp"
#include "qdnls/rng.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qdnls {

namespace {

constexpr std::size_t kModeBudget = 5'000'000;

bool is_five_smooth(int x) {
    for (int f : {2, 3, 5})
        while (x % f == 0) x /= f;
    return x == 1;
}

int next_five_smooth(int x) {
    while (!is_five_smooth(x)) ++x;
    return x;
}

std::int64_t ceil_positive(const Rational& r) {
    // r > 0; den > 0 by normalization
    return (r.num() + r.den() - 1) / r.den();
}

struct SigmaUnits {
    Rational common;                  // positive generator of the frequency group
    std::array<std::int64_t, 3> m{};  // sigma_j = m_j * common
};

SigmaUnits sigma_units(const std::array<Rational, 3>& sigmas) {
    for (const auto& s : sigmas)
        if (s.is_zero()) throw std::invalid_argument("trilinear: zero dispersion coefficient");
    SigmaUnits u;
    u.common = rational_gcd(rational_gcd(sigmas[0], sigmas[1]), sigmas[2]);
    for (int j = 0; j < 3; ++j) {
        const Rational q = sigmas[j] / u.common;
        if (!q.is_integer()) throw std::logic_error("trilinear: gcd split failed");
        u.m[j] = q.num();
    }
    return u;
}

bool certified_cutoff(DyadicIndex M, const TrilinearCertificate& cert,
                      const SigmaUnits& units, const Rational& h_max_bound, int n) {
    if (M == 1) return true;  // the low piece is identically zero
    if (!cert.gap_attained) return true;
    if (!(cert.shell_gap > Rational(0))) return false;
    // The low window chi(2s/M) vanishes for |s| >= M, so a low-filtered bin
    // offset q (in units of the common sigma) survives only when
    // |q| * common < M. q_max is the largest such q.
    const Rational ratio = Rational(M) / units.common;
    const std::int64_t q_max = std::max<std::int64_t>(ceil_positive(ratio) - 1, 0);
    const Rational reach = Rational(3 * q_max) * units.common;
    if (!(reach < cert.shell_gap)) return false;
    // Wrap safety: a bin-sum can also alias to +-(n * common); rule that out.
    const Rational wrap_margin = Rational(n) * units.common - h_max_bound;
    return reach < wrap_margin;
}

struct KahanSum {
    double hi = 0.0;
    double lo = 0.0;
    void add(double x) {
        const double y = x - lo;
        const double t = hi + y;
        lo = (t - hi) - y;
        hi = t;
    }
};

struct ComplexKahan {
    KahanSum re, im;
    void add(Complex z) {
        re.add(z.real());
        im.add(z.imag());
    }
    Complex value() const { return {re.hi, im.hi}; }
};

}  // namespace

TrilinearCertificate certify_split(const std::array<Rational, 3>& sigmas,
                                   const std::array<DyadicIndex, 3>& shells, int d,
                                   double c_split, int time_samples) {
    if (!(c_split > 0.0)) throw std::invalid_argument("trilinear: C_split must be positive");
    const SigmaUnits units = sigma_units(sigmas);
    const DyadicIndex n_max = std::max({shells[0], shells[1], shells[2]});

    TrilinearCertificate cert;
    const double target =
        static_cast<double>(n_max) * static_cast<double>(n_max) / c_split;
    cert.requested_M =
        target < 1.0 ? 1 : prev_pow2(static_cast<DyadicIndex>(std::floor(target)));

    const ShellScanResult gap = shell_min_resonance(sigmas, shells, d);
    cert.gap_attained = gap.attained;
    if (gap.attained) cert.shell_gap = gap.min_abs_h;

    Rational h_max_bound;
    for (int j = 0; j < 3; ++j) {
        const std::int64_t top = shells[j] == 1 ? 1 : shells[j] * shells[j];
        h_max_bound += abs(sigmas[j]) * Rational(top);
    }

    cert.effective_M = cert.requested_M;
    cert.certified = certified_cutoff(cert.requested_M, cert, units, h_max_bound, time_samples);
    if (!cert.certified) {
        for (DyadicIndex M = cert.requested_M / 2; M >= 2; M /= 2) {
            if (certified_cutoff(M, cert, units, h_max_bound, time_samples)) {
                cert.effective_M = M;
                cert.certified = true;
                break;
            }
        }
    }
    return cert;
}

std::pair<std::vector<Complex>, std::vector<Complex>> truncated_phase_profiles(
    double sigma, double norm_sq, int time_samples, int truncated_samples,
    double period, DyadicIndex M) {
    if (time_samples < 4)
        throw std::invalid_argument("trilinear: need at least 4 time samples");
    if (truncated_samples < 0 || truncated_samples > time_samples)
        throw std::invalid_argument("trilinear: truncation outside the period");
    if (!(period > 0.0)) throw std::invalid_argument("trilinear: period must be positive");

    const std::size_t n = static_cast<std::size_t>(time_samples);
    const double dt = period / static_cast<double>(time_samples);
    std::vector<Complex> bins(n);
    for (std::size_t m = 0; m < n; ++m) {
        if (static_cast<int>(m) >= truncated_samples) continue;
        const double phase = -sigma * norm_sq * dt * static_cast<double>(m);
        bins[m] = Complex(std::cos(phase), std::sin(phase));
    }
    const std::vector<int> dims{time_samples};
    fft::transform(bins, dims, -1);

    const double tau_step = 2.0 * std::numbers::pi / period;
    std::vector<Complex> low_bins(n), high_bins(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::int64_t centered = static_cast<std::int64_t>(k);
        if (centered * 2 >= static_cast<std::int64_t>(n)) centered -= static_cast<std::int64_t>(n);
        const double s = static_cast<double>(centered) * tau_step + sigma * norm_sq;
        low_bins[k] = bins[k] * low_modulation_weight(M, s);
        high_bins[k] = bins[k] * high_modulation_weight(M, s);
    }
    fft::transform(low_bins, dims, +1);
    fft::transform(high_bins, dims, +1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        low_bins[m] *= inv_n;
        high_bins[m] *= inv_n;
    }
    return {std::move(low_bins), std::move(high_bins)};
}

ResultTable trilinear_J(const std::array<DyadicIndex, 3>& shells,
                        const std::array<Rational, 3>& sigmas, int d, double T,
                        double c_split, int trials, std::uint64_t seed,
                        const TrilinearOptions& options) {
    if (d < 1 || d > kMaxDimension)
        throw std::invalid_argument("trilinear: dimension out of range");
    for (DyadicIndex N : shells)
        if (!is_dyadic(N)) throw std::invalid_argument("trilinear: shells must be dyadic");
    const DyadicIndex n_max = std::max({shells[0], shells[1], shells[2]});
    if (n_max < 2) throw std::invalid_argument("trilinear: N_max must be at least 2");
    if (trials < 1) throw std::invalid_argument("trilinear: trials must be >= 1");

    const SigmaUnits units = sigma_units(sigmas);
    const double period = 2.0 * std::numbers::pi / units.common.to_double();
    if (!(T > 0.0) || T > period * (1.0 + 1e-12))
        throw std::invalid_argument("trilinear: T must lie in (0, common period]");

    // The signed dispersion triple corresponds to the coefficient triple
    // (sigma1, -sigma2, -sigma3) of the evolution system; its high-high
    // nonresonance is what rules out vanishing resonance sums.
    const CoefficientTriple coeffs = classify(sigmas[0], -sigmas[1], -sigmas[2]);
    if (!coeffs.hh_nonresonant && !options.resonant_demo)
        throw std::invalid_argument(
            "trilinear: resonant coefficient triple; run in resonant-demo mode");

    const int n = options.time_samples;
    const TrilinearCertificate cert = certify_split(sigmas, shells, d, c_split, n);
    if (options.resonant_demo &&
        !(cert.gap_attained && cert.shell_gap == Rational(0)))
        throw std::invalid_argument(
            "trilinear: resonant-demo requires a resonant triple within the shells");

    std::array<Mode, 3> demo_witness{};
    if (options.resonant_demo) {
        const ShellScanResult gap = shell_min_resonance(sigmas, shells, d);
        demo_witness = gap.witness;
    }

    // Data lattices: the sharp shell fits within cutoff N_j; the demo witness
    // may need a wider cube.
    std::array<int, 3> cutoffs{};
    for (int j = 0; j < 3; ++j) {
        int k = static_cast<int>(shells[j]);
        if (options.resonant_demo)
            for (int axis = 0; axis < d; ++axis)
                k = std::max(k, std::abs(demo_witness[j][axis]));
        cutoffs[j] = k;
    }

    std::vector<FrequencyLattice> lattices;
    lattices.reserve(3);
    std::size_t mode_budget = 0;
    for (int j = 0; j < 3; ++j) {
        lattices.emplace_back(d, cutoffs[j]);
        mode_budget += lattices[j].mode_count();
    }
    if (mode_budget > kModeBudget)
        throw CostGuardError("trilinear: shell lattices exceed the mode budget");

    int grid = cutoffs[0] + cutoffs[1] + cutoffs[2] + 1;
    for (int j = 0; j < 3; ++j) grid = std::max(grid, 2 * cutoffs[j] + 1);
    grid = next_five_smooth(grid);

    const double dt = period / static_cast<double>(n);
    const int truncated = static_cast<int>(std::llround(T / dt));
    if (truncated < 1) throw std::invalid_argument("trilinear: T shorter than one time slice");

    std::ostringstream params;
    params << "trilinear N=(" << shells[0] << "," << shells[1] << "," << shells[2]
           << ") sigma=(" << sigmas[0] << "," << sigmas[1] << "," << sigmas[2]
           << ") d=" << d << " T=" << T << " C_split=" << c_split
           << " trials=" << trials << " samples=" << n
           << (options.resonant_demo ? " resonant-demo" : "");
    ResultTable table({"experiment", "d", "N1", "N2", "N3", "sigma1", "sigma2", "sigma3",
                       "T", "C_split", "requested_M", "effective_M", "certified",
                       "shell_gap", "quantity", "trial", "value", "running_sup"},
                      Provenance{fnv1a_hex(params.str()), seed});

    const std::string gap_cell =
        cert.gap_attained ? to_string(cert.shell_gap) : std::string("unattained");
    static const char* const kQuantities[] = {
        "J1",  "J2",  "J31", "J32", "J33", "direct", "identity_defect",
        "weighted_total", "J1_over_norms"};
    std::map<std::string, double> running;

    const std::size_t grid_count =
        static_cast<std::size_t>(std::pow(static_cast<double>(grid), d) + 0.5);
    const double cell = std::pow(2.0 * std::numbers::pi / static_cast<double>(grid), d);

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(seed, "trilinear", static_cast<std::uint64_t>(trial));

        // Data: unit-variance Gaussians on the sharp shells, or amplitudes on
        // the resonant witness modes in demo mode.
        std::array<std::vector<Complex>, 3> data;
        double norm_product = 1.0;
        for (int j = 0; j < 3; ++j) {
            const auto& lat = lattices[j];
            data[j].assign(lat.mode_count(), Complex(0.0, 0.0));
            if (options.resonant_demo) {
                data[j][lat.index_of(demo_witness[j])] = rng.complex_normal();
            } else {
                for (std::size_t idx = 0; idx < lat.mode_count(); ++idx) {
                    const Complex amp = rng.complex_normal();
                    if (in_sharp_shell(shells[j], lat.norm_sq(lat.mode_of(idx))))
                        data[j][idx] = amp;
                }
            }
            double sq = 0.0;
            for (const Complex& c : data[j]) sq += std::norm(c);
            norm_product *= std::sqrt(sq);
        }

        // Per-field low/high time profiles, one pair per occupied |xi|^2.
        std::array<std::map<std::int64_t, std::pair<std::vector<Complex>, std::vector<Complex>>>,
                   3>
            profiles;
        for (int j = 0; j < 3; ++j) {
            const auto& lat = lattices[j];
            for (std::size_t idx = 0; idx < lat.mode_count(); ++idx) {
                if (data[j][idx] == Complex(0.0, 0.0)) continue;
                const std::int64_t nsq = lat.norm_sq(lat.mode_of(idx));
                if (profiles[j].count(nsq)) continue;
                profiles[j][nsq] = truncated_phase_profiles(
                    sigmas[j].to_double(), static_cast<double>(nsq), n, truncated, period,
                    cert.effective_M);
            }
        }

        std::array<SpectralField, 3> low_fields{SpectralField(lattices[0], 1),
                                                SpectralField(lattices[1], 1),
                                                SpectralField(lattices[2], 1)};
        std::array<SpectralField, 3> high_fields = low_fields;

        ComplexKahan j1, j2, j31, j32, j33, direct;
        std::vector<std::vector<Complex>> low_phys(3), high_phys(3);
        for (int m = 0; m < n; ++m) {
            for (int j = 0; j < 3; ++j) {
                const auto& lat = lattices[j];
                for (std::size_t idx = 0; idx < lat.mode_count(); ++idx) {
                    const Complex c = data[j][idx];
                    if (c == Complex(0.0, 0.0)) {
                        low_fields[j].at(0, idx) = Complex(0.0, 0.0);
                        high_fields[j].at(0, idx) = Complex(0.0, 0.0);
                        continue;
                    }
                    const auto& prof = profiles[j].at(lat.norm_sq(lat.mode_of(idx)));
                    low_fields[j].at(0, idx) = c * prof.first[static_cast<std::size_t>(m)];
                    high_fields[j].at(0, idx) = c * prof.second[static_cast<std::size_t>(m)];
                }
                low_phys[j] = to_physical(low_fields[j], 0, grid);
                high_phys[j] = to_physical(high_fields[j], 0, grid);
            }

            Complex s1{}, s2{}, s31{}, s32{}, s33{}, sd{};
            for (std::size_t g = 0; g < grid_count; ++g) {
                const Complex l1 = low_phys[0][g], h1 = high_phys[0][g], f1 = l1 + h1;
                const Complex l2 = low_phys[1][g], h2 = high_phys[1][g], f2 = l2 + h2;
                const Complex l3 = low_phys[2][g], h3 = high_phys[2][g], f3 = l3 + h3;
                s1 += l1 * l2 * l3;
                s2 += h1 * h2 * h3;
                s31 += h1 * l2 * f3;
                s32 += f1 * h2 * l3;
                s33 += l1 * f2 * h3;
                sd += f1 * f2 * f3;
            }
            j1.add(s1);
            j2.add(s2);
            j31.add(s31);
            j32.add(s32);
            j33.add(s33);
            direct.add(sd);
        }

        const double scale = cell * dt;
        const Complex v1 = j1.value() * scale;
        const Complex v2 = j2.value() * scale;
        const Complex v31 = j31.value() * scale;
        const Complex v32 = j32.value() * scale;
        const Complex v33 = j33.value() * scale;
        const Complex vd = direct.value() * scale;
        const Complex sum = v1 + v2 + v31 + v32 + v33;
        const double mass = std::abs(v1) + std::abs(v2) + std::abs(v31) + std::abs(v32) +
                            std::abs(v33) + std::abs(vd) + DBL_MIN;

        const std::array<double, 9> values = {
            std::abs(v1),
            std::abs(v2),
            std::abs(v31),
            std::abs(v32),
            std::abs(v33),
            std::abs(vd),
            std::abs(sum - vd) / mass,
            static_cast<double>(n_max) * std::abs(vd),
            std::abs(v1) / norm_product};

        for (int q = 0; q < 9; ++q) {
            double& sup = running[kQuantities[q]];
            sup = std::max(sup, values[static_cast<std::size_t>(q)]);
            table.add_row({std::string("trilinear"), static_cast<std::int64_t>(d),
                           static_cast<std::int64_t>(shells[0]),
                           static_cast<std::int64_t>(shells[1]),
                           static_cast<std::int64_t>(shells[2]), to_string(sigmas[0]),
                           to_string(sigmas[1]), to_string(sigmas[2]), T, c_split,
                           static_cast<std::int64_t>(cert.requested_M),
                           static_cast<std::int64_t>(cert.effective_M),
                           static_cast<std::int64_t>(cert.certified ? 1 : 0), gap_cell,
                           std::string(kQuantities[q]), static_cast<std::int64_t>(trial),
                           values[static_cast<std::size_t>(q)], sup});
        }
    }
    return table;
}

}  // namespace qdnls
