#include "chainent/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "chainent/error.hpp"
#include "chainent/io.hpp"

namespace chainent {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidConfig(std::string(name) + " must be a finite positive number");
}

}  // namespace

void ChainConfig::validate() const
{
    if (L < 4) throw InvalidConfig("L must be at least 4");
    if (L % 2 != 0) throw InvalidConfig("L must be even");
    if (L_A < 1 || L_A > L / 2) throw InvalidConfig("L_A must satisfy 1 <= L_A <= L/2");
    require_positive(omega0_sq, "omega0_sq");
    require_positive(K0, "K0");
    require_positive(omega_sq, "omega_sq");
    require_positive(K, "K");
}

std::string ChainConfig::hash() const
{
    std::ostringstream os;
    os << std::setprecision(17) << "L=" << L << ";L_A=" << L_A << ";omega0_sq=" << omega0_sq
       << ";K0=" << K0 << ";omega_sq=" << omega_sq << ";K=" << K;
    return sha256_hex(os.str()).substr(0, 16);
}

ChainConfig reference_quench()
{
    return ChainConfig{};
}

ChainConfig without_quench(ChainConfig cfg)
{
    cfg.omega0_sq = cfg.omega_sq;
    cfg.K0 = cfg.K;
    return cfg;
}

KeyValueFile KeyValueFile::parse(std::istream& in, std::string source)
{
    KeyValueFile file;
    file.source_ = std::move(source);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig(file.source_ + ":" + std::to_string(line_no) +
                                ": expected `key = value`");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw InvalidConfig(file.source_ + ":" + std::to_string(line_no) + ": empty key");
        file.entries_[key] = KeyValueEntry{std::move(value), line_no};
    }
    return file;
}

KeyValueFile KeyValueFile::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file " + path);
    return parse(in, path);
}

std::optional<KeyValueEntry> KeyValueFile::find(const std::string& key) const
{
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void KeyValueFile::set(const std::string& key, std::string value)
{
    entries_[key] = KeyValueEntry{std::move(value), 0};
}

std::string KeyValueFile::where(const std::string& key) const
{
    const auto& e = entries_.at(key);
    if (e.line == 0) return "override `" + key + "`";
    return source_ + ":" + std::to_string(e.line) + " (`" + key + "`)";
}

std::optional<double> KeyValueFile::get_double(const std::string& key) const
{
    auto e = find(key);
    if (!e) return std::nullopt;
    try {
        std::size_t used = 0;
        double v = std::stod(e->value, &used);
        if (used != e->value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig(where(key) + ": not a number: " + e->value);
    }
}

std::optional<long long> KeyValueFile::get_int(const std::string& key) const
{
    auto e = find(key);
    if (!e) return std::nullopt;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
    if (ec != std::errc{} || ptr != e->value.data() + e->value.size()) {
        // Accept integral values written in floating form, e.g. 1e6.
        auto d = get_double(key);
        if (*d != std::floor(*d) || std::abs(*d) > 9e15)
            throw InvalidConfig(where(key) + ": not an integer: " + e->value);
        return static_cast<long long>(*d);
    }
    return v;
}

std::optional<std::uint64_t> KeyValueFile::get_uint64(const std::string& key) const
{
    auto e = find(key);
    if (!e) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
    if (ec != std::errc{} || ptr != e->value.data() + e->value.size())
        throw InvalidConfig(where(key) + ": not an unsigned integer: " + e->value);
    return v;
}

std::optional<std::string> KeyValueFile::get_string(const std::string& key) const
{
    auto e = find(key);
    if (!e) return std::nullopt;
    return e->value;
}

ChainConfig chain_config_from(const KeyValueFile& file, ChainConfig cfg)
{
    if (auto v = file.get_int("L")) cfg.L = static_cast<int>(*v);
    if (auto v = file.get_int("L_A")) cfg.L_A = static_cast<int>(*v);
    if (auto v = file.get_double("omega0_sq")) cfg.omega0_sq = *v;
    if (auto v = file.get_double("K0")) cfg.K0 = *v;
    if (auto v = file.get_double("omega_sq")) cfg.omega_sq = *v;
    if (auto v = file.get_double("K")) cfg.K = *v;
    if (auto v = file.get_uint64("seed")) cfg.seed = *v;
    try {
        cfg.validate();
    } catch (const InvalidConfig& e) {
        throw InvalidConfig(file.source() + ": " + e.what());
    }
    return cfg;
}

}  // namespace chainent
