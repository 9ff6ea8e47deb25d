#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace qdnls {

inline constexpr const char* kToolVersion = "0.1.0";

// Parses and validates the config, dispatches one experiment, and writes its
// CSV tables, optional snapshots, plot series, and a run manifest into
// out_dir (empty: the config's `out` entry, falling back to the current
// directory). CSV bytes depend only on config + seed; timestamps live in the
// manifest alone. Returns the process exit code: 0 success, 2 config error,
// 3 non-convergence, 4 blow-up guard, 5 cost guard, 1 anything else.
int run_experiment(const std::string& experiment, const std::string& config_path,
                   const std::string& out_dir,
                   std::optional<std::uint64_t> seed_override, std::ostream& out,
                   std::ostream& err);

}  // namespace qdnls
