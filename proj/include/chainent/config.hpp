#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>

namespace chainent {

/// Pre/post-quench parameters of the periodic oscillator chain.
///
/// Frequencies enter squared (omega0_sq -> omega_sq), matching the usual way
/// the quench is quoted. All quantities are dimensionless.
struct ChainConfig {
    int L = 124;
    int L_A = 25;
    double omega0_sq = 1.5;
    double K0 = 1.0;
    double omega_sq = 2.5;
    double K = 1.0;
    std::uint64_t seed = 1;

    /// Throws InvalidConfig naming the offending field.
    void validate() const;

    bool has_quench() const { return omega0_sq != omega_sq || K0 != K; }

    /// Stable short digest of the physical parameters (seed excluded).
    std::string hash() const;

    bool operator==(const ChainConfig&) const = default;
};

/// The standard run: L = 124, L_A = 25, omega^2 1.5 -> 2.5, K = K0 = 1.
ChainConfig reference_quench();

/// Same chain with identical pre- and post-quench parameters.
ChainConfig without_quench(ChainConfig cfg);

// Key-value text files: one `key = value` per line, `#` starts a comment.
struct KeyValueEntry {
    std::string value;
    int line = 0;
};

class KeyValueFile {
public:
    static KeyValueFile parse(std::istream& in, std::string source = "<stream>");
    static KeyValueFile load(const std::string& path);

    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    std::optional<KeyValueEntry> find(const std::string& key) const;
    const std::map<std::string, KeyValueEntry>& entries() const { return entries_; }
    const std::string& source() const { return source_; }

    void set(const std::string& key, std::string value);

    // Typed getters; parse failures raise InvalidConfig with file:line context.
    std::optional<double> get_double(const std::string& key) const;
    std::optional<long long> get_int(const std::string& key) const;
    std::optional<std::uint64_t> get_uint64(const std::string& key) const;
    std::optional<std::string> get_string(const std::string& key) const;

private:
    std::string where(const std::string& key) const;

    std::string source_;
    std::map<std::string, KeyValueEntry> entries_;
};

/// Reads the chain keys (L, L_A, omega0_sq, K0, omega_sq, K, seed) on top of
/// `base` and validates the result.
ChainConfig chain_config_from(const KeyValueFile& file, ChainConfig base = {});

}  // namespace chainent
