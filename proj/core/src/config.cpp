#include "qdnls/config.hpp"

#include "qdnls/errors.hpp"
#include "qdnls/result_table.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace qdnls {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' is not an integer: " + value);
    return v;
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "infinity") return std::numeric_limits<double>::infinity();
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' is not a number: " + value);
    return v;
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str(), path);
}

Config Config::from_text(std::string text, std::string origin) {
    Config cfg;
    cfg.text_ = std::move(text);
    cfg.origin_ = std::move(origin);

    std::istringstream in(cfg.text_);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + cfg.origin_ + ":" + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: " + cfg.origin_ + ":" + std::to_string(line_no) +
                              ": empty key");
        if (cfg.find(key))
            throw ConfigError("config: " + cfg.origin_ + ": duplicate key '" + key + "'");
        cfg.entries_.emplace_back(key, value);
    }
    return cfg;
}

std::string Config::hash() const { return fnv1a_hex(text_); }

const std::string* Config::find(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return &v;
    return nullptr;
}

const std::string& Config::required(const std::string& key) const {
    const std::string* v = find(key);
    if (!v) throw ConfigError("config: missing required key '" + key + "'");
    return *v;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::string Config::get_string(const std::string& key) const { return required(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const std::string* v = find(key);
    return v ? *v : fallback;
}

std::int64_t Config::get_int(const std::string& key) const {
    return parse_int(key, required(key));
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    const std::string* v = find(key);
    return v ? parse_int(key, *v) : fallback;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    errno = 0;
    char* end = nullptr;
    const unsigned long long num = std::strtoull(v->c_str(), &end, 10);
    if (errno != 0 || end == v->c_str() || *end != '\0' || v->front() == '-')
        throw ConfigError("config: key '" + key + "' is not an unsigned integer: " + *v);
    return num;
}

double Config::get_double(const std::string& key) const {
    return parse_double(key, required(key));
}

double Config::get_double(const std::string& key, double fallback) const {
    const std::string* v = find(key);
    return v ? parse_double(key, *v) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    if (*v == "1" || *v == "true" || *v == "yes") return true;
    if (*v == "0" || *v == "false" || *v == "no") return false;
    throw ConfigError("config: key '" + key + "' is not a boolean: " + *v);
}

Rational Config::get_rational(const std::string& key) const {
    try {
        return parse_rational(required(key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: key '" + key + "': " + e.what());
    }
}

Rational Config::get_rational(const std::string& key, const Rational& fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    try {
        return parse_rational(*v);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: key '" + key + "': " + e.what());
    }
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
    const std::string& raw = required(key);
    std::vector<std::int64_t> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (t.empty())
            throw ConfigError("config: key '" + key + "' has an empty list entry");
        out.push_back(parse_int(key, t));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' is an empty list");
    return out;
}

void Config::override_value(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void Config::require_known_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [k, v] : entries_) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("config: unknown key '" + k + "' for this experiment");
    }
}

}  // namespace qdnls
