#pragma once

#include <stdexcept>
#include <string>

namespace qdnls {

// Iteration diverged (contraction ratios >= 1 for several consecutive steps).
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(std::string msg, int iterate, double last_ratio)
        : std::runtime_error(std::move(msg)), iterate(iterate), last_ratio(last_ratio) {}
    int iterate;
    double last_ratio;
};

// A field norm exceeded the configured blow-up guard during time stepping.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(std::string msg, int step, double time, double norm)
        : std::runtime_error(std::move(msg)), step(step), time(time), norm(norm) {}
    int step;
    double time;
    double norm;
};

// A requested computation exceeds the configured cost limit.
class CostGuardError : public std::runtime_error {
public:
    explicit CostGuardError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Malformed configuration input.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

} // namespace qdnls
