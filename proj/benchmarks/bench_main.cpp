#include "qdnls/dynamics.hpp"
#include "qdnls/field.hpp"
#include "qdnls/norms.hpp"
#include "qdnls/products.hpp"
#include "qdnls/rng.hpp"
#include "qdnls/variation.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace qdnls;

SpectralField random_field(const FrequencyLattice& lattice, int components, std::uint64_t seed) {
    SpectralField f(lattice, components);
    Rng rng(seed);
    for (int c = 0; c < components; ++c) {
        for (std::size_t idx = 0; idx < lattice.mode_count(); ++idx) {
            f.at(c, idx) = rng.complex_normal();
        }
    }
    return f;
}

void bm_physical_roundtrip(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const FrequencyLattice lattice(2, K);
    SpectralField f = random_field(lattice, 1, 7);
    for (auto _ : state) {
        auto samples = to_physical(f, 0);
        from_physical(samples, f, 0);
        benchmark::DoNotOptimize(f.coefficients().data());
    }
    state.SetComplexityN(lattice.mode_count());
}
BENCHMARK(bm_physical_roundtrip)->Arg(8)->Arg(16)->Arg(32)->Complexity();

void bm_pointwise_product(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const FrequencyLattice lattice(2, K);
    const SpectralField a = random_field(lattice, 2, 11);
    const SpectralField b = random_field(lattice, 2, 13);
    for (auto _ : state) {
        auto prod = pointwise_product(a, b, false, false);
        benchmark::DoNotOptimize(prod.coefficients().data());
    }
}
BENCHMARK(bm_pointwise_product)->Arg(8)->Arg(16)->Arg(32);

void bm_v2_variation(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(17);
    std::vector<Complex> path(n);
    for (Complex& z : path) z = rng.complex_normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(vp_variation_norm(path, 2.0));
    }
}
BENCHMARK(bm_v2_variation)->Arg(64)->Arg(256)->Arg(1024);

void bm_fixed_point_apply(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const int d = 2;
    const FrequencyLattice lattice(d, K);
    FieldTriple data(random_field(lattice, d, 3), random_field(lattice, d, 5),
                     random_field(lattice, d, 9));
    const CoefficientTriple coeffs = classify(Rational(1), Rational(2), Rational(3));
    const double T = 0.1;
    const std::size_t samples = 17;
    TrajectoryTriple guess{free_trajectory(data.u, coeffs.alpha.to_double(), T / 16.0, 16),
                           free_trajectory(data.v, coeffs.beta.to_double(), T / 16.0, 16),
                           free_trajectory(data.w, coeffs.gamma.to_double(), T / 16.0, 16)};
    (void)samples;
    for (auto _ : state) {
        auto next = phi_map(data, guess, coeffs, T);
        benchmark::DoNotOptimize(next.u.fields.data());
    }
}
BENCHMARK(bm_fixed_point_apply)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
