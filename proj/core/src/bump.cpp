#include "qdnls/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace qdnls {

bool is_dyadic(DyadicIndex n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

DyadicIndex next_pow2(double x) {
    DyadicIndex n = 1;
    while (static_cast<double>(n) < x) n <<= 1;
    return n;
}

DyadicIndex prev_pow2(double x) {
    if (x < 1.0) throw std::invalid_argument("prev_pow2 needs x >= 1");
    DyadicIndex n = 1;
    while (static_cast<double>(n * 2) <= x) n <<= 1;
    return n;
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double chi(double s) {
    return 1.0 - smooth_step(std::abs(s) - 1.0);
}

double bump_weight(DyadicIndex N, double s) {
    if (!is_dyadic(N)) throw std::invalid_argument("bump index must be dyadic");
    if (N == 1) return chi(s);
    const double dN = static_cast<double>(N);
    return chi(s / dN) - chi(2.0 * s / dN);
}

double bump_weight_from(DyadicIndex N, double s) {
    if (!is_dyadic(N)) throw std::invalid_argument("bump index must be dyadic");
    if (N == 1) return 1.0;
    return 1.0 - chi(2.0 * s / static_cast<double>(N));
}

} // namespace qdnls
