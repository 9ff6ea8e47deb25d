#include "doctest.h"

#include "qdnls/config.hpp"
#include "qdnls/errors.hpp"
#include "qdnls/result_table.hpp"
#include "qdnls/rng.hpp"
#include "qdnls/snapshot.hpp"
#include "qdnls/trajectory.hpp"

#include <initializer_list>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace qdnls;

namespace {

std::filesystem::path temp_file(const char* stem) {
    return std::filesystem::temp_directory_path() /
           (std::string("qdnls_io_test_") + stem + "_" + std::to_string(::getpid()));
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("config parsing keeps values verbatim") {
    const Config cfg = Config::from_text(
        "# experiment setup\n"
        "d = 2\n"
        "alpha = -2/3\n"
        "\n"
        "T = 0.5   # half a period\n"
        "k_list = 4, 8,16\n"
        "snapshot = yes\n"
        "label = shells, wide\n",
        "inline");

    CHECK(cfg.get_int("d") == 2);
    CHECK(cfg.get_rational("alpha") == Rational(-2, 3));
    CHECK(cfg.get_double("T") == doctest::Approx(0.5));
    CHECK(cfg.get_int_list("k_list") == std::vector<std::int64_t>{4, 8, 16});
    CHECK(cfg.get_bool("snapshot", false));
    CHECK(cfg.get_string("label") == "shells, wide");
    CHECK(cfg.has("alpha"));
    CHECK_FALSE(cfg.has("beta"));

    CHECK(cfg.get_int("K", 16) == 16);
    CHECK(cfg.get_rational("beta", Rational(5)) == Rational(5));
    CHECK(cfg.get_uint("seed", 1) == 1);

    CHECK_THROWS_AS(cfg.get_int("alpha"), ConfigError);
    CHECK_THROWS_AS(cfg.get_string("missing"), ConfigError);
    CHECK_THROWS_AS(cfg.get_bool("label", true), ConfigError);
    CHECK_THROWS_AS(cfg.get_rational("T"), ConfigError);
}

TEST_CASE("config structural errors") {
    CHECK_THROWS_AS(Config::from_text("d = 2\nd = 3\n", "dup"), ConfigError);
    CHECK_THROWS_AS(Config::from_text("just words\n", "bad"), ConfigError);
    CHECK_THROWS_AS(Config::from_file("/nonexistent/qdnls.cfg"), ConfigError);

    const Config cfg = Config::from_text("d = 2\nK = 4\n", "inline");
    CHECK_NOTHROW(cfg.require_known_keys({"d", "K", "seed"}));
    CHECK_THROWS_AS(cfg.require_known_keys({"d"}), ConfigError);
}

TEST_CASE("overrides replace in place and hashing tracks the text") {
    Config cfg = Config::from_text("d = 2\nseed = 1\n", "inline");
    const std::string h1 = cfg.hash();
    cfg.override_value("seed", "7");
    CHECK(cfg.get_uint("seed", 1) == 7);
    CHECK(cfg.hash() == h1);  // the digest covers the parsed text, not overrides
    cfg.override_value("extra", "3");
    CHECK(cfg.get_int("extra") == 3);
    CHECK(cfg.entries().size() == 3);

    const Config again = Config::from_text("d = 2\nseed = 1\n", "elsewhere");
    CHECK(again.hash() == h1);  // origin does not enter the hash
}

TEST_CASE("cells format by type") {
    CHECK(format_cell(Cell(std::int64_t(42))) == "42");
    CHECK(format_cell(Cell(std::string("abc"))) == "abc");
    CHECK(format_cell(Cell(0.5)) == "0.5");
    // %.17g round trips doubles through text
    CHECK(format_cell(Cell(0.1)) == "0.10000000000000001");

    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("tables enforce their schema") {
    ResultTable table({"trial", "value", "tag"}, Provenance{"abc123", 9});
    table.add_row({std::int64_t(0), 1.5, std::string("x,y")});
    table.add_row({std::int64_t(1), -2.0, std::string("plain")});

    CHECK(table.row_count() == 2);
    CHECK(table.column_index("value") == 1);
    CHECK(table.numeric_at(1, "trial") == doctest::Approx(1.0));
    CHECK(std::get<std::string>(table.at(0, "tag")) == "x,y");

    CHECK_THROWS_AS(table.add_row({std::int64_t(2)}), std::invalid_argument);
    CHECK_THROWS_AS(table.column_index("nope"), std::out_of_range);
    CHECK_THROWS_AS(table.numeric_at(0, "tag"), std::invalid_argument);
    CHECK_THROWS_AS(ResultTable({}, Provenance{"abc", 1}), std::invalid_argument);
    CHECK_THROWS_AS(ResultTable({"a"}, Provenance{"", 1}), std::invalid_argument);

    CHECK(table.to_csv() == "trial,value,tag\n0,1.5,\"x,y\"\n1,-2,plain\n");
}

TEST_CASE("plot series and slope fits") {
    ResultTable table({"x", "y"}, Provenance{"h", 1});
    table.add_row({2.0, 8.0});
    table.add_row({4.0, 64.0});
    table.add_row({-1.0, 3.0});
    table.add_row({8.0, 512.0});

    const PlotSeries linear = plot_series(table, "x", "y", PlotTransform::linear);
    CHECK(linear.points.size() == 4);
    CHECK(linear.warnings.empty());

    const PlotSeries loglog = plot_series(table, "x", "y", PlotTransform::log_log);
    CHECK(loglog.points.size() == 3);
    CHECK(loglog.warnings.size() == 1);
    // y = x^3 on the surviving points
    CHECK(fit_slope(loglog.points) == doctest::Approx(3.0).epsilon(1e-12));

    std::ostringstream out;
    emit_plot_data(loglog, out);
    CHECK(out.str().substr(0, out.str().find(' ')) ==
          "0.69314718055994529");  // log 2 at full precision

    CHECK_THROWS_AS(fit_slope({{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_slope({{1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("field snapshots round trip") {
    Rng rng(3);
    FrequencyLattice lat(2, 3, 2.0);
    SpectralField f(lat, 2);
    for (auto& c : f.coefficients()) c = rng.complex_normal();

    std::stringstream buf;
    write_snapshot(buf, f);
    const SpectralField g = read_snapshot(buf);
    CHECK(g.lattice() == lat);
    CHECK(g.components() == 2);
    CHECK(g.coefficients() == f.coefficients());

    const auto path = temp_file("snap");
    write_snapshot(path.string(), f);
    const SpectralField h = read_snapshot(path.string());
    CHECK(h.coefficients() == f.coefficients());

    // trailing garbage is not a snapshot
    {
        std::ofstream app(path, std::ios::binary | std::ios::app);
        app << "tail";
    }
    CHECK_THROWS(read_snapshot(path.string()));
    std::filesystem::remove(path);

    std::stringstream junk("QDNLS9 nothing");
    CHECK_THROWS(read_snapshot(junk));
}

TEST_CASE("trajectory files carry step and group metadata") {
    Rng rng(8);
    FrequencyLattice lat(1, 4);
    SpectralField datum(lat, 1);
    for (auto& c : datum.coefficients()) c = rng.complex_normal();
    const Trajectory traj = free_trajectory(datum, -0.5, 0.25, 6);

    const auto path = temp_file("traj");
    write_trajectory(path.string(), traj);
    const Trajectory back = read_trajectory(path.string());
    std::filesystem::remove(path);

    CHECK(back.samples() == 7);
    CHECK(back.dt == traj.dt);
    CHECK(back.sigma == traj.sigma);
    for (std::size_t j = 0; j < 7; ++j)
        CHECK(back.fields[j].coefficients() == traj.fields[j].coefficients());
}

TEST_SUITE_END();
