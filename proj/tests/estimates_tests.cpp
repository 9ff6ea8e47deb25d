#include "doctest.h"

#include "qdnls/estimates.hpp"
#include "qdnls/norms.hpp"
#include "qdnls/products.hpp"
#include "qdnls/trajectory.hpp"

#include <initializer_list>
#include <cmath>
#include <limits>
#include <numbers>

using namespace qdnls;

TEST_SUITE_BEGIN("estimates");

TEST_CASE("sharp shells tile the integers") {
    CHECK(in_sharp_shell(1, 0));
    CHECK(in_sharp_shell(1, 1));
    CHECK_FALSE(in_sharp_shell(1, 2));
    CHECK(in_sharp_shell(2, 2));
    CHECK(in_sharp_shell(2, 4));
    CHECK_FALSE(in_sharp_shell(2, 5));
    CHECK(in_sharp_shell(4, 5));
    CHECK(in_sharp_shell(4, 16));

    for (std::int64_t n = 0; n <= 2000; ++n) {
        int hits = 0;
        for (DyadicIndex N = 1; N <= 64; N *= 2)
            if (in_sharp_shell(N, n)) ++hits;
        CHECK(hits == 1);
    }

    const auto modes = sharp_shell_modes(4, 2);
    CHECK_FALSE(modes.empty());
    for (const Mode& xi : modes) {
        const auto n = FrequencyLattice::mode_norm_sq(xi, 2);
        CHECK(n > 4);
        CHECK(n <= 16);
    }
}

TEST_CASE("shell data live on the shell and repeat under the seed") {
    Rng rng(7);
    const SpectralField f = shell_gaussian_field(8, 2, rng);
    const auto& lat = f.lattice();
    CHECK(lat.cutoff() == 8);
    for (std::size_t i = 0; i < lat.mode_count(); ++i) {
        const bool on = in_sharp_shell(8, lat.norm_sq(lat.mode_of(i)));
        if (!on) CHECK(f.at(0, i) == Complex(0.0, 0.0));
    }
    CHECK(hs_norm(f, 0.0) > 0.0);

    Rng rng2(7);
    const SpectralField g = shell_gaussian_field(8, 2, rng2);
    for (std::size_t i = 0; i < lat.mode_count(); ++i) CHECK(f.at(0, i) == g.at(0, i));

    Rng rng3(7);
    const SpectralField strip = strip_gaussian_field(8, 2, 3, 2, rng3);
    for (std::size_t i = 0; i < lat.mode_count(); ++i) {
        const Mode xi = lat.mode_of(i);
        if (std::abs(xi[0] - 3) > 2) CHECK(strip.at(0, i) == Complex(0.0, 0.0));
    }
}

TEST_CASE("group periods from the coefficient") {
    CHECK(sigma_period(Rational(1)) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(sigma_period(Rational(1, 2)) == doctest::Approx(4.0 * std::numbers::pi));
    CHECK(sigma_period(Rational(-2, 3)) == doctest::Approx(3.0 * std::numbers::pi));
    CHECK_THROWS_AS(sigma_period(Rational(0)), std::invalid_argument);
}

TEST_CASE("free space-time norms against closed forms") {
    Rng rng(13);
    const SpectralField datum = shell_gaussian_field(4, 2, rng);
    const double period = 2.0 * std::numbers::pi;
    const double vol = std::pow(2.0 * std::numbers::pi, 2.0);

    // the spatial L2 of a free evolution is constant in time
    const double want = std::sqrt(period * vol) * hs_norm(datum, 0.0);
    CHECK(free_lp_norm(datum, 1.0, 2.0, period, 32) == doctest::Approx(want).epsilon(1e-12));

    FrequencyLattice lat(2, 4);
    SpectralField one(lat, 1);
    one.at(0, Mode{2, 1, 0, 0}) = Complex(0.0, 0.7);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(free_lp_norm(one, 1.0, inf, period, 16) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("ratio tables carry per-trial values and running sups") {
    const ResultTable table = strichartz_ratio(4, 2.0, Rational(1), 3, 4, 11);
    CHECK(table.row_count() == 4);
    double running = 0.0;
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        // p = 2 collapses to the time-period factor for every datum
        CHECK(table.numeric_at(r, "value") ==
              doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
        running = std::max(running, table.numeric_at(r, "value"));
        CHECK(table.numeric_at(r, "running_sup") == doctest::Approx(running));
    }

    const ResultTable strip = strip_ratio(8, 2, 4.0, Rational(1), 2, 3, 11);
    CHECK(strip.row_count() == 3);
    for (std::size_t r = 0; r < strip.row_count(); ++r) {
        CHECK(strip.numeric_at(r, "value") > 0.0);
        CHECK(strip.numeric_at(r, "bound") > 0.0);
    }
    CHECK_THROWS_AS(strip_ratio(8, 16, 4.0, Rational(1), 2, 3, 11), std::invalid_argument);
    CHECK_THROWS_AS(strip_ratio(8, 2, 3.0, Rational(1), 2, 3, 11), std::invalid_argument);
}

TEST_CASE("sparse shell draws and their l2 size") {
    Rng rng(23);
    const SparseField f = sparse_shell_gaussian(8, 3, 40, rng);
    CHECK(f.size() <= 40);
    CHECK_FALSE(f.empty());
    double sq = 0.0;
    for (const auto& m : f) {
        CHECK(in_sharp_shell(8, m.norm_sq));
        CHECK(m.norm_sq == FrequencyLattice::mode_norm_sq(m.xi, 3));
        sq += std::norm(m.amp);
    }
    CHECK(sparse_l2_norm(f) == doctest::Approx(std::sqrt(sq)));

    Rng rng2(23);
    const SparseField g = sparse_shell_gaussian(8, 3, 40, rng2);
    CHECK(g.size() == f.size());
}

TEST_CASE("exact pair norm matches grid quadrature") {
    // two modes against one, d = 1, integer dispersion: every product
    // frequency is resolved by 64 samples over the common period
    SparseField f1{{Mode{2, 0, 0, 0}, 4, Complex(0.8, -0.1)},
                   {Mode{-1, 0, 0, 0}, 1, Complex(0.2, 0.5)}};
    SparseField f2{{Mode{1, 0, 0, 0}, 1, Complex(-0.4, 0.9)}};
    const Rational s1(1), s2(-2);

    const double exact = bilinear_pair_norm(f1, s1, f2, s2, 1, 0);

    FrequencyLattice lat(1, 4);
    SpectralField a(lat, 1), b(lat, 1);
    for (const auto& m : f1) a.at(0, m.xi) = m.amp;
    for (const auto& m : f2) b.at(0, m.xi) = m.amp;
    const int samples = 64;
    const double period = 2.0 * std::numbers::pi;
    const double dt = period / samples;
    Trajectory prod;
    prod.dt = dt;
    for (int j = 0; j < samples; ++j) {
        const double t = j * dt;
        prod.fields.push_back(
            pointwise_product(free_evolution(a, 1.0, t), free_evolution(b, -2.0, t)));
    }
    const double quad = lp_spacetime_norm(prod, 2.0);
    CHECK(exact == doctest::Approx(quad).epsilon(1e-12));

    // colliding pair frequencies must interfere, not add in square
    SparseField g1{{Mode{1, 0, 0, 0}, 1, Complex(1.0, 0.0)},
                   {Mode{-1, 0, 0, 0}, 1, Complex(-1.0, 0.0)}};
    SparseField g2{{Mode{0, 0, 0, 0}, 0, Complex(1.0, 0.0)}};
    // both products land on (xi, omega) = (+-1, 1): distinct -> no collision
    const double no_collision = bilinear_pair_norm(g1, Rational(1), g2, Rational(1), 1, 0);
    CHECK(no_collision == doctest::Approx(std::sqrt(period * period * 2.0)));
}

TEST_CASE("trend table rejects ill-posed cases") {
    CHECK_THROWS_AS(bilinear_ratio(2, 4, BilinearCase::HL, Rational(1), Rational(1), 3, 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(bilinear_ratio(8, 4, BilinearCase::HHL, Rational(1), Rational(1), 3, 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        bilinear_ratio(16, 4, BilinearCase::HHL, Rational(1), Rational(-1), 3, 2, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        bilinear_pair_norm(SparseField{}, Rational(0), SparseField{}, Rational(1), 2, 0),
        std::invalid_argument);

    const ResultTable table =
        bilinear_ratio(16, 4, BilinearCase::HHL, Rational(1), Rational(1), 3, 3, 9);
    CHECK(table.row_count() == 3);
    double prev = 0.0;
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        CHECK(table.numeric_at(r, "value") > 0.0);
        CHECK(table.numeric_at(r, "running_sup") >= prev);
        prev = table.numeric_at(r, "running_sup");
        CHECK(table.numeric_at(r, "bound_base") == doctest::Approx(4.0 / 16.0 + 1.0 / 4.0));
    }
}

TEST_CASE("strip width and single-block decompositions") {
    SparseField a{{Mode{3, 0, 0, 0}, 9, Complex(0.7, 0.2)}};
    SparseField b{{Mode{1, 0, 0, 0}, 1, Complex(-0.5, 0.3)}};

    const StripDecomposition one = strip_blocks(a, Rational(1), b, Rational(1), 16, 4, 1);
    CHECK(one.strip_width == 1);  // max(16/16, 1)
    CHECK(one.blocks.size() == 1);
    CHECK(one.orthogonality_ratio == doctest::Approx(1.0));
    CHECK(one.sum_norm_sq == doctest::Approx(one.block_norm_sq_total));

    const StripDecomposition narrow = strip_blocks(a, Rational(1), b, Rational(1), 32, 4, 1);
    CHECK(narrow.strip_width == 1);  // max(16/32, 1) clamps to 1

    SparseField wide_a{{Mode{17, 0, 0, 0}, 289, Complex(1.0, 0.0)}};
    SparseField wide_b{{Mode{-5, 0, 0, 0}, 25, Complex(1.0, 0.0)}};
    const StripDecomposition wide =
        strip_blocks(wide_a, Rational(1), wide_b, Rational(1), 64, 16, 1);
    CHECK(wide.strip_width == 4);  // 16*16/64

    CHECK_THROWS_AS(strip_blocks(a, Rational(1), b, Rational(-1), 16, 4, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(strip_blocks(a, Rational(1), b, Rational(1), 8, 4, 1),
                    std::invalid_argument);
}

TEST_CASE("block demo emits one row per block") {
    const ResultTable table = strip_decomposition_demo(16, 4, Rational(1), Rational(1), 2, 3);
    CHECK(table.row_count() >= 1);
    const double ratio = table.numeric_at(0, "orthogonality_ratio");
    CHECK(ratio > 0.0);
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        CHECK(table.numeric_at(r, "M") == 1.0);
        CHECK(table.numeric_at(r, "orthogonality_ratio") == doctest::Approx(ratio));
    }
}

TEST_SUITE_END();
