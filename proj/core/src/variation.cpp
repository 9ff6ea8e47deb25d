#include "qdnls/variation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace qdnls {

namespace {

void check_p(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("vp_variation_norm: requires p >= 1");
}

// best[j] = largest sum of p-th powers of increments over selections ending at
// sample j (a one-sample selection contributes zero). The norm is the p-th
// root of the largest best[j].
template <typename Dist>
double variation_dp(std::size_t n, double p, Dist&& dist) {
    if (n == 0) throw std::invalid_argument("vp_variation_norm: empty path");
    std::vector<double> best(n, 0.0);
    double overall = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        double b = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            const double candidate = best[i] + std::pow(dist(i, j), p);
            b = std::max(b, candidate);
        }
        best[j] = b;
        overall = std::max(overall, b);
    }
    return std::pow(overall, 1.0 / p);
}

}  // namespace

double vp_variation_norm(const std::vector<Complex>& path, double p, bool append_zero) {
    check_p(p);
    if (path.empty()) throw std::invalid_argument("vp_variation_norm: empty path");
    std::vector<Complex> samples = path;
    if (append_zero) samples.push_back(Complex{0.0, 0.0});
    return variation_dp(samples.size(), p, [&samples](std::size_t i, std::size_t j) {
        return std::abs(samples[j] - samples[i]);
    });
}

double vp_variation_norm(const std::vector<std::vector<Complex>>& path, double p,
                         bool append_zero) {
    check_p(p);
    if (path.empty()) throw std::invalid_argument("vp_variation_norm: empty path");
    const std::size_t dim = path.front().size();
    for (const auto& sample : path) {
        if (sample.size() != dim)
            throw std::invalid_argument("vp_variation_norm: inconsistent sample dimensions");
    }
    std::vector<std::vector<Complex>> samples = path;
    if (append_zero) samples.emplace_back(dim, Complex{0.0, 0.0});
    return variation_dp(samples.size(), p, [&samples, dim](std::size_t i, std::size_t j) {
        double sq = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            const Complex d = samples[j][c] - samples[i][c];
            sq += std::norm(d);
        }
        return std::sqrt(sq);
    });
}

double vp_variation_norm_exhaustive(const std::vector<Complex>& path, double p,
                                    bool append_zero) {
    check_p(p);
    if (path.empty()) throw std::invalid_argument("vp_variation_norm: empty path");
    std::vector<Complex> samples = path;
    if (append_zero) samples.push_back(Complex{0.0, 0.0});
    const std::size_t n = samples.size();
    if (n > 20)
        throw std::invalid_argument("vp_variation_norm_exhaustive: path too long (limit 20)");
    double overall = 0.0;
    const std::uint64_t masks = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < masks; ++mask) {
        double sum = 0.0;
        bool have_prev = false;
        std::size_t prev = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (std::uint64_t{1} << j))) continue;
            if (have_prev) sum += std::pow(std::abs(samples[j] - samples[prev]), p);
            prev = j;
            have_prev = true;
        }
        overall = std::max(overall, sum);
    }
    return std::pow(overall, 1.0 / p);
}

}  // namespace qdnls
