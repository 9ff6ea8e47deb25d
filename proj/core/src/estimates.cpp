#include "qdnls/estimates.hpp"

#include "qdnls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qdnls {

namespace {

constexpr DyadicIndex kLatticeCutoff = 256;
constexpr std::size_t kHighShellCap = 256;
constexpr std::size_t kLowShellCap = 1024;
constexpr int kTimeSlices = 64;

void check_dimension(int d) {
    if (d < 1 || d > kMaxDimension)
        throw std::invalid_argument("estimates: dimension out of range");
}

void check_scale(DyadicIndex N) {
    if (!is_dyadic(N)) throw std::invalid_argument("estimates: scale must be a power of two");
    if (N > kLatticeCutoff)
        throw std::invalid_argument("estimates: N exceeds lattice cutoff");
}

std::string rational_cell(const Rational& r) { return to_string(r); }

Provenance make_provenance(const std::string& params, std::uint64_t seed) {
    return Provenance{fnv1a_hex(params), seed};
}

double lp_exponent_check(double p) {
    if (std::isinf(p) && p > 0) return p;
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("estimates: p must be >= 1 or infinity");
    return p;
}

}  // namespace

bool in_sharp_shell(DyadicIndex N, std::int64_t norm_sq) {
    if (!is_dyadic(N)) throw std::invalid_argument("in_sharp_shell: index must be dyadic");
    if (N == 1) return norm_sq <= 1;
    return 4 * norm_sq > N * N && norm_sq <= N * N;
}

std::vector<Mode> sharp_shell_modes(DyadicIndex N, int d) {
    check_dimension(d);
    check_scale(N);
    const FrequencyLattice lat(d, static_cast<int>(N));
    std::vector<Mode> out;
    for (std::size_t idx = 0; idx < lat.mode_count(); ++idx) {
        const Mode xi = lat.mode_of(idx);
        if (in_sharp_shell(N, lat.norm_sq(xi))) out.push_back(xi);
    }
    return out;
}

SpectralField shell_gaussian_field(DyadicIndex N, int d, Rng& rng) {
    check_dimension(d);
    check_scale(N);
    const FrequencyLattice lat(d, static_cast<int>(N));
    SpectralField f(lat, 1);
    for (std::size_t idx = 0; idx < lat.mode_count(); ++idx) {
        const Complex amp = rng.complex_normal();
        if (in_sharp_shell(N, lat.norm_sq(lat.mode_of(idx)))) f.at(0, idx) = amp;
    }
    return f;
}

SpectralField strip_gaussian_field(DyadicIndex N, DyadicIndex M, int offset, int d,
                                   Rng& rng) {
    check_dimension(d);
    check_scale(N);
    const FrequencyLattice lat(d, static_cast<int>(N));
    SpectralField f(lat, 1);
    for (std::size_t idx = 0; idx < lat.mode_count(); ++idx) {
        const Complex amp = rng.complex_normal();
        const Mode xi = lat.mode_of(idx);
        if (std::abs(static_cast<std::int64_t>(xi[0]) - offset) <= M) f.at(0, idx) = amp;
    }
    return f;
}

double free_lp_norm(const SpectralField& datum, double sigma, double p, double period,
                    int time_samples) {
    lp_exponent_check(p);
    if (!(period > 0.0)) throw std::invalid_argument("free_lp_norm: period must be positive");
    if (time_samples < 1)
        throw std::invalid_argument("free_lp_norm: need at least one time slice");

    const auto& lat = datum.lattice();
    const int comps = datum.components();
    const double dt = period / static_cast<double>(time_samples);
    const bool sup = std::isinf(p);

    double acc = 0.0;
    std::vector<std::vector<Complex>> phys(comps);
    for (int m = 0; m < time_samples; ++m) {
        const double t = dt * static_cast<double>(m);
        const SpectralField slice = free_evolution(datum, sigma, t);
        for (int c = 0; c < comps; ++c) phys[c] = to_physical(slice, c);
        const std::size_t pts = phys[0].size();
        for (std::size_t g = 0; g < pts; ++g) {
            double sq = 0.0;
            for (int c = 0; c < comps; ++c) sq += std::norm(phys[c][g]);
            if (sup) {
                acc = std::max(acc, sq);
            } else {
                acc += std::pow(sq, p / 2.0);
            }
        }
    }
    if (sup) return std::sqrt(acc);

    const double axis_step = 2.0 * std::numbers::pi * lat.period_scale() /
                             static_cast<double>(lat.grid_points());
    const double cell = std::pow(axis_step, lat.dimension());
    return std::pow(acc * cell * dt, 1.0 / p);
}

double sigma_period(const Rational& sigma) {
    if (sigma.is_zero()) throw std::invalid_argument("sigma_period: zero coefficient");
    return 2.0 * std::numbers::pi * static_cast<double>(sigma.den()) /
           static_cast<double>(std::abs(sigma.num()));
}

ResultTable strichartz_ratio(DyadicIndex N, double p, const Rational& sigma, int d,
                             int trials, std::uint64_t seed) {
    check_dimension(d);
    check_scale(N);
    lp_exponent_check(p);
    if (trials < 1) throw std::invalid_argument("strichartz_ratio: trials must be >= 1");
    const double period = sigma_period(sigma);

    std::ostringstream params;
    params << "strichartz N=" << N << " p=" << p << " sigma=" << sigma << " d=" << d
           << " trials=" << trials;
    ResultTable table({"experiment", "d", "N", "p", "sigma", "period", "trial", "value",
                       "running_sup"},
                      make_provenance(params.str(), seed));

    double running = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(seed, "strichartz", static_cast<std::uint64_t>(trial));
        const SpectralField datum = shell_gaussian_field(N, d, rng);
        const double denom = physical_l2_norm(datum);
        const double value =
            free_lp_norm(datum, sigma.to_double(), p, period, kTimeSlices) / denom;
        running = std::max(running, value);
        table.add_row({std::string("strichartz"), static_cast<std::int64_t>(d),
                       static_cast<std::int64_t>(N), p, rational_cell(sigma), period,
                       static_cast<std::int64_t>(trial), value, running});
    }
    return table;
}

ResultTable strip_ratio(DyadicIndex N, DyadicIndex M, double p, const Rational& sigma,
                        int d, int trials, std::uint64_t seed) {
    check_dimension(d);
    check_scale(N);
    if (!is_dyadic(M)) throw std::invalid_argument("strip_ratio: M must be a power of two");
    if (M > N) throw std::invalid_argument("strip_ratio: strip width exceeds the cube");
    if (!(p == 4.0 || (std::isinf(p) && p > 0)))
        throw std::invalid_argument("strip_ratio: p must be 4 or infinity");
    if (trials < 1) throw std::invalid_argument("strip_ratio: trials must be >= 1");
    const double period = sigma_period(sigma);

    const double bound = std::isinf(p)
                             ? std::sqrt(static_cast<double>(M)) *
                                   std::pow(static_cast<double>(N),
                                            0.5 * static_cast<double>(d - 1))
                             : static_cast<double>(M) / static_cast<double>(N);

    std::ostringstream params;
    params << "strip N=" << N << " M=" << M << " p=" << p << " sigma=" << sigma
           << " d=" << d << " trials=" << trials;
    ResultTable table({"experiment", "d", "N", "M", "p", "sigma", "bound", "trial",
                       "value", "running_sup"},
                      make_provenance(params.str(), seed));

    const int span = static_cast<int>(N - M);
    double running = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(seed, "strip", static_cast<std::uint64_t>(trial));
        const int offset = rng.uniform_int(-span, span);
        const SpectralField datum = strip_gaussian_field(N, M, offset, d, rng);
        const double denom = hs_norm(datum, 0.0);
        const double value =
            free_lp_norm(datum, sigma.to_double(), p, period, kTimeSlices) / denom;
        running = std::max(running, value);
        table.add_row({std::string("strip"), static_cast<std::int64_t>(d),
                       static_cast<std::int64_t>(N), static_cast<std::int64_t>(M), p,
                       rational_cell(sigma), bound, static_cast<std::int64_t>(trial),
                       value, running});
    }
    return table;
}

SparseField sparse_shell_gaussian(DyadicIndex N, int d, std::size_t max_modes, Rng& rng) {
    if (max_modes == 0)
        throw std::invalid_argument("sparse_shell_gaussian: max_modes must be positive");
    const std::vector<Mode> shell = sharp_shell_modes(N, d);

    std::vector<std::size_t> chosen;
    if (shell.size() <= max_modes) {
        chosen.resize(shell.size());
        for (std::size_t i = 0; i < shell.size(); ++i) chosen[i] = i;
    } else {
        std::vector<std::size_t> pool(shell.size());
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        for (std::size_t i = 0; i < max_modes; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(rng.uniform_int(
                        0, static_cast<int>(pool.size() - 1 - i)));
            std::swap(pool[i], pool[j]);
        }
        chosen.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(max_modes));
        std::sort(chosen.begin(), chosen.end());
    }

    SparseField out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) {
        SparseMode m;
        m.xi = shell[i];
        m.norm_sq = FrequencyLattice::mode_norm_sq(m.xi, d);
        m.amp = rng.complex_normal();
        out.push_back(m);
    }
    return out;
}

double sparse_l2_norm(const SparseField& field) {
    double sq = 0.0;
    for (const auto& m : field) sq += std::norm(m.amp);
    return std::sqrt(sq);
}

namespace {

struct PairKey {
    std::array<int, kMaxDimension> xi{};
    std::int64_t omega = 0;

    friend bool operator<(const PairKey& a, const PairKey& b) {
        if (a.xi != b.xi) return a.xi < b.xi;
        return a.omega < b.omega;
    }
    friend bool operator==(const PairKey& a, const PairKey& b) {
        return a.xi == b.xi && a.omega == b.omega;
    }
};

struct PairEntry {
    std::int64_t block_k = 0;
    std::int64_t block_l = 0;
    PairKey key;
    Complex amp{};
};

// Integer multiples k_j with sigma_j = k_j * gcd; the product's time
// frequencies are then exact integer multiples of the gcd.
struct SigmaSplit {
    Rational gcd;
    std::int64_t k1 = 0;
    std::int64_t k2 = 0;
};

SigmaSplit split_sigmas(const Rational& sigma1, const Rational& sigma2) {
    if (sigma1.is_zero() || sigma2.is_zero())
        throw std::invalid_argument("bilinear: zero dispersion coefficient");
    SigmaSplit s;
    s.gcd = rational_gcd(sigma1, sigma2);
    const Rational q1 = sigma1 / s.gcd;
    const Rational q2 = sigma2 / s.gcd;
    if (!q1.is_integer() || !q2.is_integer())
        throw std::logic_error("bilinear: gcd split failed");
    s.k1 = q1.num();
    s.k2 = q2.num();
    return s;
}

double grouped_amp_sq(std::vector<std::pair<PairKey, Complex>>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double total = 0.0;
    std::size_t i = 0;
    while (i < entries.size()) {
        Complex sum = entries[i].second;
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].first == entries[i].first) {
            sum += entries[j].second;
            ++j;
        }
        total += std::norm(sum);
        i = j;
    }
    return total;
}

std::int64_t floor_div(std::int64_t x, std::int64_t m) {
    std::int64_t q = x / m;
    if (x % m != 0 && x < 0) --q;
    return q;
}

}  // namespace

double bilinear_pair_norm(const SparseField& f1, const Rational& sigma1,
                          const SparseField& f2, const Rational& sigma2, int d,
                          DyadicIndex output_cutoff) {
    check_dimension(d);
    const SigmaSplit split = split_sigmas(sigma1, sigma2);

    std::vector<std::pair<PairKey, Complex>> entries;
    entries.reserve(f1.size() * f2.size());
    for (const auto& a : f1) {
        for (const auto& b : f2) {
            PairKey key;
            for (int axis = 0; axis < d; ++axis) key.xi[axis] = a.xi[axis] + b.xi[axis];
            key.omega = split.k1 * a.norm_sq + split.k2 * b.norm_sq;
            Complex amp = a.amp * b.amp;
            if (output_cutoff > 0) {
                Mode sum{};
                for (int axis = 0; axis < d; ++axis) sum[axis] = key.xi[axis];
                const double r =
                    std::sqrt(static_cast<double>(FrequencyLattice::mode_norm_sq(sum, d)));
                const double w = bump_weight(output_cutoff, r);
                if (w == 0.0) continue;
                amp *= w;
            }
            entries.emplace_back(key, amp);
        }
    }

    const double period = 2.0 * std::numbers::pi / split.gcd.to_double();
    const double vol = std::pow(2.0 * std::numbers::pi, d);
    return std::sqrt(period * vol * grouped_amp_sq(entries));
}

ResultTable bilinear_ratio(DyadicIndex H, DyadicIndex L, BilinearCase kind,
                           const Rational& sigma1, const Rational& sigma2, int d,
                           int trials, std::uint64_t seed) {
    check_dimension(d);
    check_scale(H);
    check_scale(L);
    if (trials < 1) throw std::invalid_argument("bilinear_ratio: trials must be >= 1");
    if (kind == BilinearCase::HL && H < L)
        throw std::invalid_argument("bilinear_ratio: HL case requires H >= L");
    if (kind == BilinearCase::HHL) {
        if (H < 4 * L)
            throw std::invalid_argument("bilinear_ratio: HHL case requires H >= 4L");
        if ((sigma1 + sigma2).is_zero())
            throw std::invalid_argument("bilinear_ratio: HHL case requires sigma1 + sigma2 != 0");
    }
    split_sigmas(sigma1, sigma2);  // validates nonzero coefficients

    const bool hhl = kind == BilinearCase::HHL;
    const std::string case_name = hhl ? "HHL" : "HL";
    const double s_c = 0.5 * static_cast<double>(d) - 1.0;
    const double phys = std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(d));
    const double bound_base =
        static_cast<double>(L) / static_cast<double>(H) + 1.0 / static_cast<double>(L);

    std::ostringstream params;
    params << "bilinear H=" << H << " L=" << L << " case=" << case_name
           << " sigma1=" << sigma1 << " sigma2=" << sigma2 << " d=" << d
           << " trials=" << trials;
    ResultTable table({"experiment", "d", "H", "L", "case", "sigma1", "sigma2",
                       "bound_base", "trial", "value", "running_sup"},
                      make_provenance(params.str(), seed));

    double running = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng1 = Rng::for_trial(seed, "bilinear-high", static_cast<std::uint64_t>(trial));
        Rng rng2 = Rng::for_trial(seed, "bilinear-low", static_cast<std::uint64_t>(trial));
        const SparseField f1 = sparse_shell_gaussian(H, d, kHighShellCap, rng1);
        const SparseField f2 = hhl ? sparse_shell_gaussian(H, d, kHighShellCap, rng2)
                                   : sparse_shell_gaussian(L, d, kLowShellCap, rng2);
        const double numerator =
            bilinear_pair_norm(f1, sigma1, f2, sigma2, d, hhl ? L : 0);
        const double denom = std::pow(static_cast<double>(L), s_c) * phys *
                             sparse_l2_norm(f1) * phys * sparse_l2_norm(f2);
        const double value = numerator / denom;
        running = std::max(running, value);
        table.add_row({std::string("bilinear"), static_cast<std::int64_t>(d),
                       static_cast<std::int64_t>(H), static_cast<std::int64_t>(L),
                       case_name, rational_cell(sigma1), rational_cell(sigma2), bound_base,
                       static_cast<std::int64_t>(trial), value, running});
    }
    return table;
}

StripDecomposition strip_blocks(const SparseField& f1, const Rational& sigma1,
                                const SparseField& f2, const Rational& sigma2,
                                DyadicIndex H, DyadicIndex L, int d) {
    check_dimension(d);
    if (!is_dyadic(H) || !is_dyadic(L))
        throw std::invalid_argument("strip_blocks: scales must be powers of two");
    if (H < 4 * L) throw std::invalid_argument("strip_blocks: requires H >= 4L");
    if ((sigma1 + sigma2).is_zero())
        throw std::invalid_argument("strip_blocks: requires sigma1 + sigma2 != 0");
    const SigmaSplit split = split_sigmas(sigma1, sigma2);

    StripDecomposition out;
    out.strip_width = std::max<std::int64_t>(L * L / H, 1);
    const std::int64_t M = out.strip_width;

    std::vector<PairEntry> entries;
    entries.reserve(f1.size() * f2.size());
    for (const auto& a : f1) {
        for (const auto& b : f2) {
            PairEntry e;
            for (int axis = 0; axis < d; ++axis) e.key.xi[axis] = a.xi[axis] + b.xi[axis];
            Mode sum{};
            for (int axis = 0; axis < d; ++axis) sum[axis] = e.key.xi[axis];
            const double r =
                std::sqrt(static_cast<double>(FrequencyLattice::mode_norm_sq(sum, d)));
            const double w = bump_weight(L, r);
            if (w == 0.0) continue;
            e.key.omega = split.k1 * a.norm_sq + split.k2 * b.norm_sq;
            e.amp = a.amp * b.amp * w;
            e.block_k = floor_div(a.xi[0], M);
            e.block_l = floor_div(b.xi[0], M);
            entries.push_back(e);
        }
    }

    // Global almost-orthogonality numerator: the full block sum.
    std::vector<std::pair<PairKey, Complex>> global;
    global.reserve(entries.size());
    for (const auto& e : entries) global.emplace_back(e.key, e.amp);

    const double period = 2.0 * std::numbers::pi / split.gcd.to_double();
    const double vol = std::pow(2.0 * std::numbers::pi, d);
    const double scale = period * vol;
    out.sum_norm_sq = scale * grouped_amp_sq(global);

    std::sort(entries.begin(), entries.end(), [](const PairEntry& a, const PairEntry& b) {
        if (a.block_k != b.block_k) return a.block_k < b.block_k;
        if (a.block_l != b.block_l) return a.block_l < b.block_l;
        return a.key < b.key;
    });

    const double omega_unit = split.gcd.to_double();
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].block_k == entries[i].block_k &&
               entries[j].block_l == entries[i].block_l)
            ++j;
        std::vector<std::pair<PairKey, Complex>> block;
        block.reserve(j - i);
        for (std::size_t t = i; t < j; ++t) block.emplace_back(entries[t].key, entries[t].amp);
        const double norm_sq = scale * grouped_amp_sq(block);
        if (norm_sq > 0.0) {
            std::int64_t omega_min = std::numeric_limits<std::int64_t>::max();
            std::int64_t omega_max = std::numeric_limits<std::int64_t>::min();
            for (std::size_t t = i; t < j; ++t) {
                omega_min = std::min(omega_min, entries[t].key.omega);
                omega_max = std::max(omega_max, entries[t].key.omega);
            }
            StripBlock b;
            b.k = entries[i].block_k;
            b.l = entries[i].block_l;
            b.omega_center = 0.5 * omega_unit * static_cast<double>(omega_min + omega_max);
            b.omega_radius = 0.5 * omega_unit * static_cast<double>(omega_max - omega_min);
            b.norm_sq = norm_sq;
            out.blocks.push_back(b);
            out.block_norm_sq_total += norm_sq;
        }
        i = j;
    }

    out.orthogonality_ratio =
        out.block_norm_sq_total > 0.0 ? out.sum_norm_sq / out.block_norm_sq_total : 1.0;
    return out;
}

ResultTable strip_decomposition_demo(DyadicIndex H, DyadicIndex L, const Rational& sigma1,
                                     const Rational& sigma2, int d, std::uint64_t seed) {
    check_dimension(d);
    check_scale(H);
    check_scale(L);
    Rng rng1 = Rng::for_trial(seed, "strip-demo", 0);
    Rng rng2 = Rng::for_trial(seed, "strip-demo", 1);
    const SparseField f1 = sparse_shell_gaussian(H, d, kHighShellCap, rng1);
    const SparseField f2 = sparse_shell_gaussian(H, d, kHighShellCap, rng2);
    const StripDecomposition dec = strip_blocks(f1, sigma1, f2, sigma2, H, L, d);

    std::ostringstream params;
    params << "strip-demo H=" << H << " L=" << L << " sigma1=" << sigma1
           << " sigma2=" << sigma2 << " d=" << d;
    ResultTable table({"experiment", "d", "H", "L", "M", "sigma1", "sigma2",
                       "orthogonality_ratio", "k", "l", "omega_center", "omega_radius",
                       "trial", "value", "running_sup"},
                      make_provenance(params.str(), seed));

    double running = 0.0;
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        const StripBlock& b = dec.blocks[i];
        running = std::max(running, b.norm_sq);
        table.add_row({std::string("strip-demo"), static_cast<std::int64_t>(d),
                       static_cast<std::int64_t>(H), static_cast<std::int64_t>(L),
                       static_cast<std::int64_t>(dec.strip_width), rational_cell(sigma1),
                       rational_cell(sigma2), dec.orthogonality_ratio, b.k, b.l,
                       b.omega_center, b.omega_radius, static_cast<std::int64_t>(i),
                       b.norm_sq, running});
    }
    return table;
}

}  // namespace qdnls
