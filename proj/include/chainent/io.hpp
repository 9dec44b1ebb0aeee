#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chainent/config.hpp"

namespace chainent {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Shortest round-trip-safe decimal form at 17 significant digits.
std::string format_double(double value);

/// Column-oriented CSV table with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    void add_column(std::string name, std::vector<double> values);
    std::string render() const;
};

void write_text(const std::filesystem::path& path, const std::string& text);

nlohmann::json to_json(const ChainConfig& cfg);

/// Record of one CLI run: inputs, resolved defaults and every emitted file.
struct RunManifest {
    std::string command;
    ChainConfig cfg;
    nlohmann::json resolved = nlohmann::json::object();
    std::string version;
    std::vector<std::pair<std::string, std::string>> files;  // name, sha256
    std::map<std::string, double> timings;
    std::vector<std::string> warnings;

    /// Writes `text` under `dir`, hashes it and records it.
    void emit(const std::filesystem::path& dir, const std::string& name, const std::string& text);
    nlohmann::json to_json() const;
};

/// `<command>_<probe>_L<L>_LA<L_A>_seed<seed>`; identical inputs give identical names.
std::string output_stem(std::string_view command, std::string_view probe, const ChainConfig& cfg,
                        std::uint64_t seed);

std::string library_version();

}  // namespace chainent
