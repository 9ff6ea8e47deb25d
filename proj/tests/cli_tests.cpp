#include "doctest.h"

#include <initializer_list>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Drives the installed command-line binary as a subprocess. The binary path
// is injected by the build so the tests exercise exactly what shipped.

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() /
                   ("qdnls_cli_" + std::to_string(::getpid()) + "_" + tag + "_" +
                    std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

RunResult run_cli(const std::string& args, const fs::path& capture_dir) {
    const fs::path log = capture_dir / "cli_output.log";
    const std::string command =
        std::string(QDNLS_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    result.exit_code = WEXITSTATUS(status);
    result.output = read_file(log);
    return result;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version flag reports the tool name and exits cleanly") {
    const fs::path dir = fresh_dir("version");
    const RunResult r = run_cli("--version", dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("qdnls 0.1.0") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("unknown experiment is a usage error") {
    const fs::path dir = fresh_dir("unknown");
    write_file(dir / "c.cfg", "seed = 1\n");
    const RunResult r = run_cli("frobnicate --config " + (dir / "c.cfg").string(), dir);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("unknown experiment") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("missing config file is a usage error") {
    const fs::path dir = fresh_dir("noconfig");
    const RunResult r = run_cli(
        "resonance-scan --config " + (dir / "does_not_exist.cfg").string(), dir);
    CHECK(r.exit_code == 2);
    fs::remove_all(dir);
}

TEST_CASE("unknown config key is a usage error") {
    const fs::path dir = fresh_dir("badkey");
    write_file(dir / "c.cfg",
               "sigma1 = 1\nsigma2 = 1\nsigma3 = -1\nd = 2\nk_list = 2\nwibble = 3\n");
    const RunResult r = run_cli("resonance-scan --config " + (dir / "c.cfg").string() +
                                    " --out " + (dir / "out").string(),
                                dir);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("wibble") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("resonance scan writes the expected witness, a classification, and a manifest") {
    const fs::path dir = fresh_dir("scan");
    write_file(dir / "scan.cfg",
               "sigma1 = 1\n"
               "sigma2 = 1\n"
               "sigma3 = -1\n"
               "d = 2\n"
               "k_list = 2\n"
               "alpha = 1\n"
               "beta = 1\n"
               "gamma = -1\n"
               "seed = 7\n");
    const fs::path out1 = dir / "run1";
    const RunResult r = run_cli("resonance-scan --config " + (dir / "scan.cfg").string() +
                                    " --out " + out1.string(),
                                dir);
    CHECK(r.exit_code == 0);

    const std::string scan = read_file(out1 / "scan.csv");
    CHECK(scan.find("((1,0),(0,1),(-1,-1))") != std::string::npos);
    CHECK(scan.find("1,1,-1,2,2,0,1") != std::string::npos);

    const std::string cls = read_file(out1 / "classification.csv");
    CHECK(cls.find("hh_nonresonant") != std::string::npos);
    CHECK(cls.find("1,1,-1,0,0,1,1,-1,1,") != std::string::npos);

    const std::string manifest = read_file(out1 / "manifest.txt");
    CHECK(manifest.find("experiment: resonance-scan") != std::string::npos);
    CHECK(manifest.find("seed: 7") != std::string::npos);
    CHECK(manifest.find("exit: 0") != std::string::npos);
    CHECK(manifest.find("output: scan.csv fnv1a=") != std::string::npos);

    SUBCASE("a rerun of the same config produces byte-identical tables") {
        const fs::path out2 = dir / "run2";
        const RunResult r2 = run_cli("resonance-scan --config " + (dir / "scan.cfg").string() +
                                         " --out " + out2.string(),
                                     dir);
        CHECK(r2.exit_code == 0);
        CHECK(read_file(out2 / "scan.csv") == scan);
        CHECK(read_file(out2 / "classification.csv") == cls);
    }
    fs::remove_all(dir);
}

TEST_CASE("path norm selftest passes and leaves its table behind") {
    const fs::path dir = fresh_dir("vnorm");
    write_file(dir / "v.cfg", "paths = 40\nlength = 8\nseed = 11\n");
    const RunResult r = run_cli(
        "vnorm-selftest --config " + (dir / "v.cfg").string() + " --out " + dir.string(), dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("checks passed") != std::string::npos);
    CHECK(fs::exists(dir / "vnorm.csv"));
    fs::remove_all(dir);
}

TEST_CASE("seed override changes the manifest but not the config hash") {
    const fs::path dir = fresh_dir("seed");
    write_file(dir / "v.cfg", "paths = 5\nlength = 6\nseed = 11\n");
    const fs::path out1 = dir / "a";
    const fs::path out2 = dir / "b";
    const RunResult r1 = run_cli(
        "vnorm-selftest --config " + (dir / "v.cfg").string() + " --out " + out1.string(), dir);
    const RunResult r2 = run_cli("vnorm-selftest --config " + (dir / "v.cfg").string() +
                                     " --seed 99 --out " + out2.string(),
                                 dir);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    const std::string m1 = read_file(out1 / "manifest.txt");
    const std::string m2 = read_file(out2 / "manifest.txt");
    CHECK(m1.find("seed: 11") != std::string::npos);
    CHECK(m2.find("seed: 99") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("diverging fixed-point iteration exits with the iteration code") {
    const fs::path dir = fresh_dir("picard");
    write_file(dir / "p.cfg",
               "d = 1\n"
               "K = 4\n"
               "alpha = 1\n"
               "beta = 2\n"
               "gamma = 3\n"
               "T = 1\n"
               "tolerance = 1e-10\n"
               "max_iter = 12\n"
               "samples = 33\n"
               "amplitude = 50\n"
               "seed = 3\n");
    const RunResult r = run_cli(
        "picard --config " + (dir / "p.cfg").string() + " --out " + dir.string(), dir);
    CHECK(r.exit_code == 3);
    CHECK(fs::exists(dir / "picard.csv"));
    const std::string table = read_file(dir / "picard.csv");
    CHECK(table.find("iterate,difference,ratio") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("runaway field growth exits with the blow-up code") {
    const fs::path dir = fresh_dir("blowup");
    write_file(dir / "s.cfg",
               "d = 1\n"
               "K = 4\n"
               "alpha = 1\n"
               "beta = 2\n"
               "gamma = 3\n"
               "T = 1\n"
               "dt = 0.01\n"
               "amplitude = 1000\n"
               "blow_up_factor = 10\n"
               "seed = 3\n");
    const RunResult r = run_cli(
        "simulate --config " + (dir / "s.cfg").string() + " --out " + dir.string(), dir);
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("blow-up guard") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("oversized scans exit with the cost guard code before allocating") {
    const fs::path dir = fresh_dir("guard");
    write_file(dir / "g.cfg",
               "sigma1 = 1\nsigma2 = -2\nsigma3 = -3\nd = 3\nk_list = 600\nseed = 1\n");
    const RunResult r = run_cli(
        "resonance-scan --config " + (dir / "g.cfg").string() + " --out " + dir.string(), dir);
    CHECK(r.exit_code == 5);
    CHECK(r.output.find("cost guard") != std::string::npos);
    fs::remove_all(dir);
}

}  // TEST_SUITE
