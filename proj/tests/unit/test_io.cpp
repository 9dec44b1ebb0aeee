#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "chainent/io.hpp"

using namespace chainent;

TEST_CASE("sha256 of known strings")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("doubles are written with 17 significant digits")
{
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV rendering has a header and is deterministic")
{
    CsvTable t;
    t.add_column("a", {1.0, 2.5});
    t.add_column("b", {-3.0, 0.25});
    const std::string s = t.render();
    CHECK(s == "a,b\n1,-3\n2.5,0.25\n");
    CHECK(t.render() == s);
}

TEST_CASE("manifest records emitted files with hashes")
{
    const auto dir = std::filesystem::temp_directory_path() / "chainent_io_test";
    std::filesystem::remove_all(dir);
    RunManifest m;
    m.command = "torus";
    m.version = library_version();
    m.emit(dir, "x.csv", "a\n1\n");
    REQUIRE(m.files.size() == 1);
    CHECK(m.files[0].second == sha256_hex("a\n1\n"));
    CHECK(sha256_file(dir / "x.csv") == m.files[0].second);
    const auto j = m.to_json();
    CHECK(j["command"] == "torus");
    CHECK(j["config"]["L"] == 124);
    std::filesystem::remove_all(dir);
}

TEST_CASE("output stems encode probe, sizes and seed")
{
    ChainConfig cfg;
    CHECK(output_stem("stats", "S2", cfg, 7) == "stats_S2_L124_LA25_seed7");
}
