#pragma once

#include "qdnls/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qdnls {

// Flat key = value configuration. Values stay verbatim strings until a typed
// getter parses them, so exact rationals like "-2/3" survive the round trip.
// '#' starts a comment, blank lines are skipped, duplicate keys are rejected.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_text(std::string text, std::string origin);

    const std::string& text() const { return text_; }
    const std::string& origin() const { return origin_; }
    // Digest of the parsed text alone: the origin never enters, and later
    // overrides do not either (they are recorded separately by the caller).
    std::string hash() const;

    // Entries in file order.
    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    Rational get_rational(const std::string& key) const;
    Rational get_rational(const std::string& key, const Rational& fallback) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;

    // Replaces or appends a value (used for command-line overrides).
    void override_value(const std::string& key, const std::string& value);

    // Rejects any key outside the allowed set, catching config typos early.
    void require_known_keys(const std::vector<std::string>& allowed) const;

private:
    std::string text_;
    std::string origin_;
    std::vector<std::pair<std::string, std::string>> entries_;

    const std::string* find(const std::string& key) const;
    const std::string& required(const std::string& key) const;
};

}  // namespace qdnls
