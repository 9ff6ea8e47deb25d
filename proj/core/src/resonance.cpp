#include "qdnls/resonance.hpp"

#include "qdnls/errors.hpp"
#include "qdnls/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qdnls {

namespace {

constexpr std::uint64_t kPairBudget = 4'500'000'000ULL;

void check_dimension(int d) {
    if (d < 1 || d > kMaxDimension)
        throw std::invalid_argument("resonance: dimension out of range");
}

// Integer representation sigma_j = scaled[j] / denom with one shared
// positive denominator, so h * denom is an exact int64.
struct ScaledSigmas {
    std::array<std::int64_t, 3> scaled{};
    std::int64_t denom = 1;
};

ScaledSigmas scale_sigmas(const std::array<Rational, 3>& sigmas) {
    ScaledSigmas out;
    std::int64_t l = 1;
    for (const auto& s : sigmas) l = std::lcm(l, s.den());
    out.denom = l;
    for (int j = 0; j < 3; ++j) out.scaled[j] = sigmas[j].num() * (l / sigmas[j].den());
    return out;
}

// All modes with |xi|^2 <= K^2, ascending lexicographic (xi_1 most
// significant, each axis -K..K), matching the documented serial scan order.
std::vector<Mode> ball_modes(int K, int d) {
    std::vector<Mode> out;
    const std::int64_t limit = static_cast<std::int64_t>(K) * K;
    Mode xi{};
    for (int axis = 0; axis < d; ++axis) xi[axis] = -K;
    while (true) {
        if (FrequencyLattice::mode_norm_sq(xi, d) <= limit) out.push_back(xi);
        int axis = d - 1;
        while (axis >= 0 && xi[axis] == K) {
            xi[axis] = -K;
            --axis;
        }
        if (axis < 0) break;
        ++xi[axis];
    }
    return out;
}

std::vector<Mode> shell_modes(DyadicIndex N, int d) {
    std::vector<Mode> out;
    const int reach = static_cast<int>(2 * N - 1);
    Mode xi{};
    for (int axis = 0; axis < d; ++axis) xi[axis] = -reach;
    while (true) {
        if (in_dyadic_shell(N, FrequencyLattice::mode_norm_sq(xi, d))) out.push_back(xi);
        int axis = d - 1;
        while (axis >= 0 && xi[axis] == reach) {
            xi[axis] = -reach;
            --axis;
        }
        if (axis < 0) break;
        ++xi[axis];
    }
    return out;
}

// a/b < c/d for nonnegative fractions with positive denominators.
bool fraction_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}

// Canonical witness preference among equal-value triples: fewest zero modes
// (a genuine three-wave interaction when one exists), then the smallest shell
// max_j |xi_j|^2, then the lexicographically largest (xi_1, xi_2) as the
// positive-leading representative of the sign/axis symmetry class. This is a
// total order, so the scan winner is independent of enumeration order and
// worker count.
struct WitnessKey {
    int zero_modes = 0;
    std::int64_t max_norm = 0;
    std::array<Mode, 2> lead{};
};

WitnessKey witness_key(const std::array<Mode, 3>& modes, int d) {
    WitnessKey key;
    for (const auto& xi : modes) {
        bool zero = true;
        for (int axis = 0; axis < d; ++axis) zero = zero && xi[axis] == 0;
        key.zero_modes += zero ? 1 : 0;
        key.max_norm = std::max(key.max_norm, FrequencyLattice::mode_norm_sq(xi, d));
    }
    key.lead = {modes[0], modes[1]};
    return key;
}

bool key_preferred(const WitnessKey& a, const WitnessKey& b) {
    if (a.zero_modes != b.zero_modes) return a.zero_modes < b.zero_modes;
    if (a.max_norm != b.max_norm) return a.max_norm < b.max_norm;
    return a.lead > b.lead;
}

}  // namespace

CoefficientTriple classify(const Rational& alpha, const Rational& beta, const Rational& gamma) {
    if (alpha.is_zero() || beta.is_zero() || gamma.is_zero())
        throw std::invalid_argument("classify: coefficients must be nonzero");
    CoefficientTriple out;
    out.alpha = alpha;
    out.beta = beta;
    out.gamma = gamma;
    out.sigma_common = rational_gcd(alpha, rational_gcd(beta, gamma));
    const std::array<Rational, 3> coeffs{alpha, beta, gamma};
    for (int j = 0; j < 3; ++j) {
        const Rational q = coeffs[j] / out.sigma_common;
        out.m[j] = q.num();  // exact integer by the gcd construction
    }
    out.period = 2.0 * std::numbers::pi / out.sigma_common.to_double();
    const Rational hh = beta * gamma - alpha * gamma - alpha * beta;
    out.hh_nonresonant = hh.sign() > 0;
    out.hl_nonresonant = (alpha != beta) && (beta != -gamma) && (gamma != alpha);
    out.rational_ratio = true;
    out.same_sign = alpha.sign() == beta.sign() && beta.sign() == gamma.sign();
    return out;
}

Rational resonance_value(const std::array<Rational, 3>& sigmas,
                         const std::array<Mode, 3>& modes, int dimension) {
    check_dimension(dimension);
    for (int axis = 0; axis < dimension; ++axis) {
        if (modes[0][axis] + modes[1][axis] + modes[2][axis] != 0)
            throw std::invalid_argument("resonance_value: modes must sum to zero");
    }
    Rational h;
    for (int j = 0; j < 3; ++j)
        h += sigmas[j] * Rational(FrequencyLattice::mode_norm_sq(modes[j], dimension));
    return h;
}

ScanResult scan_min_ratio(const std::array<Rational, 3>& sigmas, int K, int d) {
    check_dimension(d);
    if (K < 1) throw std::invalid_argument("scan_min_ratio: requires K >= 1");
    for (const auto& s : sigmas)
        if (s.is_zero()) throw std::invalid_argument("scan_min_ratio: zero coefficient");

    // Reject hopeless cutoffs before materializing the ball. The cube of
    // half-width floor(K/sqrt(d)) sits inside the ball, so its size is a
    // lower bound on the mode count.
    const auto inner = static_cast<std::uint64_t>(
        2 * static_cast<std::int64_t>(std::floor(K / std::sqrt(double(d)))) + 1);
    std::uint64_t at_least = 1;
    for (int axis = 0; axis < d; ++axis) at_least *= inner;
    if (at_least * at_least > kPairBudget)
        throw CostGuardError("scan_min_ratio: at least " + std::to_string(at_least * at_least) +
                             " mode pairs exceed the scan budget");

    const auto ball = ball_modes(K, d);
    const std::uint64_t pairs =
        static_cast<std::uint64_t>(ball.size()) * static_cast<std::uint64_t>(ball.size());
    if (pairs > kPairBudget)
        throw CostGuardError("scan_min_ratio: " + std::to_string(pairs) +
                             " mode pairs exceed the scan budget");

    const auto scaled = scale_sigmas(sigmas);
    const std::int64_t limit = static_cast<std::int64_t>(K) * K;

    struct Partial {
        bool found = false;
        std::int64_t num = 0, den = 1;
        std::array<Mode, 3> witness{};
        WitnessKey key{};
        std::uint64_t checked = 0;

        bool accept(std::int64_t n, std::int64_t dn, const std::array<Mode, 3>& w, int dim) {
            if (found) {
                if (fraction_less(num, den, n, dn)) return false;
                if (fraction_less(n, dn, num, den)) {
                    // strictly better, fall through
                } else {
                    const WitnessKey k = witness_key(w, dim);
                    if (!key_preferred(k, key)) return false;
                    key = k;
                    witness = w;
                    return true;
                }
            }
            found = true;
            num = n;
            den = dn;
            witness = w;
            key = witness_key(w, dim);
            return true;
        }
    };
    std::vector<Partial> partials(ball.size());
    std::vector<std::int64_t> norms(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i)
        norms[i] = FrequencyLattice::mode_norm_sq(ball[i], d);

    parallel_for(ball.size(), [&](std::size_t i1) {
        Partial& best = partials[i1];
        const Mode& xi1 = ball[i1];
        const std::int64_t n1 = norms[i1];
        for (std::size_t i2 = 0; i2 < ball.size(); ++i2) {
            const Mode& xi2 = ball[i2];
            Mode xi3{};
            for (int axis = 0; axis < d; ++axis) xi3[axis] = -xi1[axis] - xi2[axis];
            const std::int64_t n3 = FrequencyLattice::mode_norm_sq(xi3, d);
            if (n3 > limit) continue;
            const std::int64_t n2 = norms[i2];
            const std::int64_t maxn = std::max({n1, n2, n3});
            if (maxn == 0) continue;
            ++best.checked;
            const std::int64_t hnum =
                scaled.scaled[0] * n1 + scaled.scaled[1] * n2 + scaled.scaled[2] * n3;
            best.accept(std::abs(hnum), scaled.denom * maxn, {xi1, xi2, xi3}, d);
        }
    });

    ScanResult result;
    Partial merged;
    for (const auto& part : partials) {
        result.triples_checked += part.checked;
        if (part.found) merged.accept(part.num, part.den, part.witness, d);
    }
    if (!merged.found) throw std::logic_error("scan_min_ratio: no admissible triple");
    result.min_ratio = Rational(merged.num, merged.den);
    result.witness = merged.witness;
    return result;
}

bool in_dyadic_shell(DyadicIndex N, std::int64_t norm_sq) {
    if (!is_dyadic(N)) throw std::invalid_argument("in_dyadic_shell: index must be dyadic");
    if (N == 1) return norm_sq < 4;
    return 4 * norm_sq > N * N && norm_sq < 4 * N * N;
}

ShellScanResult shell_min_resonance(const std::array<Rational, 3>& sigmas,
                                    const std::array<DyadicIndex, 3>& shells, int d) {
    check_dimension(d);
    for (const auto& s : sigmas)
        if (s.is_zero()) throw std::invalid_argument("shell_min_resonance: zero coefficient");

    std::array<std::vector<Mode>, 3> members;
    for (int j = 0; j < 3; ++j) members[j] = shell_modes(shells[j], d);

    // Solve for the fattest shell, enumerate the other two in position order.
    int solve = 0;
    for (int j = 1; j < 3; ++j)
        if (members[j].size() >= members[solve].size()) solve = j;
    std::array<int, 2> looped{};
    for (int j = 0, k = 0; j < 3; ++j)
        if (j != solve) looped[k++] = j;

    const std::uint64_t pairs = static_cast<std::uint64_t>(members[looped[0]].size()) *
                                static_cast<std::uint64_t>(members[looped[1]].size());
    if (pairs > kPairBudget)
        throw CostGuardError("shell_min_resonance: " + std::to_string(pairs) +
                             " mode pairs exceed the scan budget");

    const auto scaled = scale_sigmas(sigmas);
    ShellScanResult result;
    std::int64_t best = 0;
    WitnessKey best_key{};
    for (const Mode& xa : members[looped[0]]) {
        const std::int64_t na = FrequencyLattice::mode_norm_sq(xa, d);
        for (const Mode& xb : members[looped[1]]) {
            Mode xs{};
            for (int axis = 0; axis < d; ++axis) xs[axis] = -xa[axis] - xb[axis];
            const std::int64_t ns = FrequencyLattice::mode_norm_sq(xs, d);
            if (!in_dyadic_shell(shells[solve], ns)) continue;
            ++result.triples_checked;
            const std::int64_t nb = FrequencyLattice::mode_norm_sq(xb, d);
            std::array<std::int64_t, 3> n{};
            n[looped[0]] = na;
            n[looped[1]] = nb;
            n[solve] = ns;
            const std::int64_t hnum =
                scaled.scaled[0] * n[0] + scaled.scaled[1] * n[1] + scaled.scaled[2] * n[2];
            const std::int64_t mag = std::abs(hnum);
            if (result.attained && mag > best) continue;
            std::array<Mode, 3> w{};
            w[looped[0]] = xa;
            w[looped[1]] = xb;
            w[solve] = xs;
            const WitnessKey key = witness_key(w, d);
            if (result.attained && mag == best && !key_preferred(key, best_key)) continue;
            result.attained = true;
            best = mag;
            best_key = key;
            result.witness = w;
        }
    }
    if (result.attained) result.min_abs_h = Rational(best, scaled.denom);
    return result;
}

}  // namespace qdnls
