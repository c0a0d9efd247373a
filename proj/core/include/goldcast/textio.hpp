#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace goldcast {

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

/// Parses a double, rejecting trailing garbage. Throws DataError with `context` on failure.
double parse_double(const std::string& s, const std::string& context);

/// Shortest round-trip-ish formatting for metrics ("%.12g"). Deterministic.
std::string fmt_g(double v);
/// Fixed two decimals, for prices/lots/P&L written at tick resolution.
std::string fmt_fixed2(double v);
/// Full round-trip formatting ("%.17g"), for values that must survive re-parsing exactly.
std::string fmt_exact(double v);

/// FNV-1a 64-bit over a byte string; used to fingerprint configs in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string to_hex(std::uint64_t v);

/// Plain `key = value` file with '#' comments. Keys are kept in insertion order.
struct KeyValueFile {
    std::vector<std::pair<std::string, std::string>> entries;

    static KeyValueFile load(const std::string& path);           // throws DataError
    static KeyValueFile parse(const std::string& text, const std::string& origin);
    void save(const std::string& path) const;

    bool has(const std::string& key) const;
    const std::string* find(const std::string& key) const;
    /// Canonical text (sorted keys), used for hashing.
    std::string canonical() const;
};

void write_text_file(const std::string& path, const std::string& content);  // throws DataError
std::string read_text_file(const std::string& path);                        // throws DataError

}  // namespace goldcast
