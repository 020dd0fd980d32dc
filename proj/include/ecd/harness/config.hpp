#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecd/types.hpp"

namespace ecd::harness {

// Raised for malformed or semantically invalid configuration (CLI exit 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for filesystem failures while reading or writing artifacts (CLI exit 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat `key = value` configuration with `[section]` headers and `#` comments.
// Keys before any header live in the "" section. Duplicate keys within a
// section are an error; section and key lookups are case-sensitive.
class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    Scalar get_number(const std::string& section, const std::string& key) const;
    Scalar get_number(const std::string& section, const std::string& key, Scalar fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    std::vector<std::string> sections() const;
    std::vector<std::string> keys(const std::string& section) const;

private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

}  // namespace ecd::harness
