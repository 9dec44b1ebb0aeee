#include "chainent/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef CHAINENT_VERSION
#define CHAINENT_VERSION "unknown"
#endif

namespace chainent {

namespace {

std::string to_hex(const unsigned char* digest, unsigned int len)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(digits[digest[i] >> 4]);
        out.push_back(digits[digest[i] & 0xf]);
    }
    return out;
}

}  // namespace

std::string sha256_hex(std::string_view bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 digest failed");
    return to_hex(digest.data(), len);
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void CsvTable::add_column(std::string name, std::vector<double> values)
{
    if (!columns.empty() && values.size() != columns.front().size())
        throw std::invalid_argument("csv column `" + name + "` has mismatched length");
    header.push_back(std::move(name));
    columns.push_back(std::move(values));
}

std::string CsvTable::render() const
{
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

nlohmann::json to_json(const ChainConfig& cfg)
{
    return {{"L", cfg.L},           {"L_A", cfg.L_A}, {"omega0_sq", cfg.omega0_sq},
            {"K0", cfg.K0},         {"omega_sq", cfg.omega_sq},
            {"K", cfg.K},           {"seed", cfg.seed}, {"hash", cfg.hash()}};
}

void RunManifest::emit(const std::filesystem::path& dir, const std::string& name,
                       const std::string& text)
{
    write_text(dir / name, text);
    files.emplace_back(name, sha256_hex(text));
}

nlohmann::json RunManifest::to_json() const
{
    nlohmann::json j;
    j["command"] = command;
    j["config"] = chainent::to_json(cfg);
    j["resolved"] = resolved;
    j["seed"] = cfg.seed;
    j["version"] = version.empty() ? library_version() : version;
    j["files"] = nlohmann::json::array();
    for (const auto& [name, hash] : files) j["files"].push_back({{"name", name}, {"sha256", hash}});
    j["timings_s"] = timings;
    j["warnings"] = warnings;
    return j;
}

std::string output_stem(std::string_view command, std::string_view probe, const ChainConfig& cfg,
                        std::uint64_t seed)
{
    std::ostringstream os;
    os << command << '_' << probe << "_L" << cfg.L << "_LA" << cfg.L_A << "_seed" << seed;
    return os.str();
}

std::string library_version()
{
    return CHAINENT_VERSION;
}

}  // namespace chainent
