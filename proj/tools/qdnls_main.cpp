#include "qdnls/runner.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral experiments for a coupled quadratic-derivative "
                 "Schrodinger system on the torus"};
    app.set_version_flag("--version", std::string("qdnls ") + qdnls::kToolVersion);

    std::string experiment;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;

    app.add_option("experiment", experiment,
                   "simulate | picard | resonance-scan | strichartz | bilinear | trilinear | "
                   "vnorm-selftest")
        ->required();
    app.add_option("--config", config_path, "key = value config file")->required();
    app.add_option("--out", out_dir,
                   "output directory (default: the config's `out` entry, else `.`)");
    app.add_option("--seed", seed, "override the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    return qdnls::run_experiment(experiment, config_path, out_dir, seed, std::cout, std::cerr);
}
