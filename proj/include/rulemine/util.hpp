#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rulemine {

// Error raised when a text input (triple file, rule file, config file)
// cannot be parsed. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Invalid configuration value (bad range, unknown key, mismatched model kind).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lookup of an unknown entity/predicate id or name.
class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pipeline phase was invoked before the phase that produces its inputs.
class PrerequisiteError : public std::runtime_error {
public:
    PrerequisiteError(const std::string& missing, const std::string& phase_to_run)
        : std::runtime_error(missing + "; run `" + phase_to_run + "` first"),
          phase_(phase_to_run) {}
    const std::string& phase_to_run() const { return phase_; }

private:
    std::string phase_;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep);

// FNV-1a, used for cheap stable tags (sub-seeds, config fingerprints are SHA-256).
constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

// Derive a phase-local RNG seed from the run-level seed. Each phase consumes
// randomness independently so reordering phases cannot shift another phase's
// stream.
inline std::uint64_t sub_seed(std::uint64_t global_seed, std::string_view tag) {
    return global_seed ^ fnv1a(tag);
}

// SHA-256 of a byte string / file, hex-encoded. Used for manifest digests.
std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::string& path);

// Atomic text file write: write to `<path>.tmp`, then rename over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

}  // namespace rulemine
