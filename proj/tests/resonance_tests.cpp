#include "doctest.h"

#include "qdnls/errors.hpp"
#include "qdnls/resonance.hpp"
#include "qdnls/rng.hpp"

#include <initializer_list>
#include <array>
#include <numbers>

using namespace qdnls;

TEST_SUITE_BEGIN("resonance");

TEST_CASE("coefficient classification, exact arithmetic") {
    const CoefficientTriple r = classify(Rational(1), Rational(1), Rational(-1));
    CHECK_FALSE(r.hh_nonresonant);  // beta gamma - alpha gamma - alpha beta = -1
    CHECK_FALSE(r.hl_nonresonant);  // (alpha - beta) factor vanishes
    CHECK(r.m == std::array<std::int64_t, 3>{1, 1, -1});
    CHECK(r.sigma_common == Rational(1));
    CHECK(r.period == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(r.rational_ratio);
    CHECK_FALSE(r.same_sign);

    const CoefficientTriple s = classify(Rational(1), Rational(2), Rational(3));
    CHECK(s.hh_nonresonant);  // 6 - 3 - 2 = 1 > 0
    CHECK(s.hl_nonresonant);
    CHECK(s.same_sign);
    CHECK(s.period == doctest::Approx(2.0 * std::numbers::pi));

    const CoefficientTriple t = classify(Rational(-1), Rational(1), Rational(1));
    CHECK(t.hh_nonresonant);  // 1 + 1 + 1 = 3 > 0
    CHECK(t.hl_nonresonant);

    const CoefficientTriple q = classify(Rational(2), Rational(3), Rational(6));
    CHECK(q.sigma_common == Rational(1));
    CHECK(q.m == std::array<std::int64_t, 3>{2, 3, 6});
    CHECK(q.period == doctest::Approx(2.0 * std::numbers::pi));

    const CoefficientTriple f = classify(Rational(1, 2), Rational(-1, 3), Rational(1));
    CHECK(f.sigma_common == Rational(1, 6));
    CHECK(f.m == std::array<std::int64_t, 3>{3, -2, 6});
    CHECK(f.period == doctest::Approx(12.0 * std::numbers::pi));

    CHECK_THROWS_AS(classify(Rational(0), Rational(1), Rational(1)), std::invalid_argument);
}

TEST_CASE("resonance sum on hand triples") {
    const std::array<Rational, 3> sig{Rational(1), Rational(1), Rational(-1)};
    const std::array<Mode, 3> zero{Mode{0, 0, 0, 0}, Mode{0, 0, 0, 0}, Mode{0, 0, 0, 0}};
    CHECK(resonance_value(sig, zero, 2) == Rational(0));

    const std::array<Mode, 3> witness{Mode{1, 0, 0, 0}, Mode{0, 1, 0, 0}, Mode{-1, -1, 0, 0}};
    CHECK(resonance_value(sig, witness, 2) == Rational(0));  // 1 + 1 - 2

    const std::array<Rational, 3> sig2{Rational(1), Rational(-2), Rational(-3)};
    const std::array<Mode, 3> tri{Mode{3, 0, 0, 0}, Mode{-2, 0, 0, 0}, Mode{-1, 0, 0, 0}};
    CHECK(resonance_value(sig2, tri, 2) == Rational(-2));  // 9 - 8 - 3

    const std::array<Mode, 3> unbalanced{Mode{1, 0, 0, 0}, Mode{1, 0, 0, 0}, Mode{1, 0, 0, 0}};
    CHECK_THROWS_AS(resonance_value(sig, unbalanced, 2), std::invalid_argument);
}

TEST_CASE("resonance sum symmetries") {
    Rng rng(61);
    const std::array<Rational, 3> sig{Rational(1, 2), Rational(-2), Rational(3, 5)};
    for (int trial = 0; trial < 50; ++trial) {
        Mode a{rng.uniform_int(-5, 5), rng.uniform_int(-5, 5), 0, 0};
        Mode b{rng.uniform_int(-5, 5), rng.uniform_int(-5, 5), 0, 0};
        Mode c{-a[0] - b[0], -a[1] - b[1], 0, 0};
        const Rational h = resonance_value(sig, {a, b, c}, 2);

        // simultaneous permutation of (sigma, xi) pairs
        CHECK(resonance_value({sig[2], sig[0], sig[1]}, {c, a, b}, 2) == h);
        CHECK(resonance_value({sig[1], sig[0], sig[2]}, {b, a, c}, 2) == h);

        // linear in sigma, quadratic in the modes
        const Rational scale(7, 3);
        CHECK(resonance_value({sig[0] * scale, sig[1] * scale, sig[2] * scale}, {a, b, c}, 2) ==
              h * scale);
        Mode a3{3 * a[0], 3 * a[1], 0, 0}, b3{3 * b[0], 3 * b[1], 0, 0},
            c3{3 * c[0], 3 * c[1], 0, 0};
        CHECK(resonance_value(sig, {a3, b3, c3}, 2) == h * Rational(9));
    }
}

TEST_CASE("exhaustive scans reproduce the frozen minima") {
    const ScanResult res = scan_min_ratio({Rational(1), Rational(1), Rational(-1)}, 2, 2);
    CHECK(res.min_ratio == Rational(0));
    CHECK(res.witness[0] == Mode{1, 0, 0, 0});
    CHECK(res.witness[1] == Mode{0, 1, 0, 0});
    CHECK(res.witness[2] == Mode{-1, -1, 0, 0});
    CHECK(res.triples_checked > 0);

    const std::array<Rational, 3> stab{Rational(1), Rational(-2), Rational(-3)};
    const ScanResult k4 = scan_min_ratio(stab, 4, 2);
    CHECK(k4.min_ratio == Rational(2, 9));
    CHECK(k4.witness[0] == Mode{3, 0, 0, 0});
    CHECK(k4.witness[1] == Mode{-2, 0, 0, 0});
    CHECK(k4.witness[2] == Mode{-1, 0, 0, 0});

    const ScanResult k8 = scan_min_ratio(stab, 8, 2);
    const ScanResult k16 = scan_min_ratio(stab, 16, 2);
    CHECK(k8.min_ratio == Rational(1, 5));
    CHECK(k16.min_ratio == Rational(1, 5));
    CHECK(k8.witness[0] == Mode{5, 0, 0, 0});
    CHECK(k8.witness[1] == Mode{-3, 0, 0, 0});
    CHECK(k8.witness[2] == Mode{-2, 0, 0, 0});
    CHECK(k16.witness == k8.witness);

    const ScanResult same = scan_min_ratio({Rational(1), Rational(1), Rational(1)}, 4, 2);
    CHECK(same.min_ratio == Rational(3, 2));
    CHECK(same.witness[0] == Mode{2, 0, 0, 0});
    CHECK(same.witness[1] == Mode{-1, 0, 0, 0});
    CHECK(same.witness[2] == Mode{-1, 0, 0, 0});
}

TEST_CASE("hopeless scan sizes are rejected up front") {
    CHECK_THROWS_AS(scan_min_ratio({Rational(1), Rational(1), Rational(1)}, 600, 3),
                    CostGuardError);
    CHECK_THROWS_AS(scan_min_ratio({Rational(1), Rational(1), Rational(1)}, 0, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(scan_min_ratio({Rational(0), Rational(1), Rational(1)}, 2, 2),
                    std::invalid_argument);
}

TEST_CASE("high-high nonresonance forces high-low nonresonance") {
    Rng rng(101);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto draw = [&]() {
            int num = 0;
            while (num == 0) num = rng.uniform_int(-9, 9);
            return Rational(num, rng.uniform_int(1, 9));
        };
        const CoefficientTriple t = classify(draw(), draw(), draw());
        if (t.hh_nonresonant) {
            ++checked;
            CHECK(t.hl_nonresonant);
        }
    }
    CHECK(checked > 100);  // the property must actually be exercised
}

TEST_CASE("dyadic shell membership") {
    CHECK(in_dyadic_shell(1, 0));
    CHECK(in_dyadic_shell(1, 3));
    CHECK_FALSE(in_dyadic_shell(1, 4));
    CHECK_FALSE(in_dyadic_shell(2, 1));
    CHECK(in_dyadic_shell(2, 2));
    CHECK(in_dyadic_shell(2, 15));
    CHECK_FALSE(in_dyadic_shell(2, 16));
    CHECK(in_dyadic_shell(8, 17));
    CHECK_FALSE(in_dyadic_shell(8, 16));
    CHECK_FALSE(in_dyadic_shell(8, 256));
}

TEST_CASE("minimum resonance over shell-restricted triples") {
    const std::array<Rational, 3> sig{Rational(1), Rational(-2), Rational(-3)};
    const ShellScanResult res = shell_min_resonance(sig, {8, 8, 2}, 3);
    CHECK(res.attained);
    CHECK(res.min_abs_h == Rational(9));
    CHECK(res.triples_checked > 0);

    // shells too far apart to close a zero-sum triangle
    const ShellScanResult gap = shell_min_resonance(sig, {1, 1, 64}, 3);
    CHECK_FALSE(gap.attained);

    // the resonant witness sits inside shells (1, 1, 2)
    const ShellScanResult demo =
        shell_min_resonance({Rational(1), Rational(1), Rational(-1)}, {1, 1, 2}, 2);
    CHECK(demo.attained);
    CHECK(demo.min_abs_h == Rational(0));
}

TEST_SUITE_END();
