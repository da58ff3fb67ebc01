#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string output;
};

Result run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" NDWP_TOOL_PATH "\" " + args + " 2>&1";
    Result r{0, {}};
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, "popen failed"};
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), p)) r.output += buf.data();
    r.status = pclose(p);
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("ndwp_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST(Cli, MathieuRunIsDeterministic) {
    const auto d = scratch("det");
    ASSERT_EQ(run("mathieu --set q_points=11 --out " + (d / "a").string()).status, 0);
    ASSERT_EQ(run("mathieu --set q_points=11 --out " + (d / "b").string()).status, 0);
    const auto ma = manifest(d / "a"), mb = manifest(d / "b");
    ASSERT_EQ(ma["outputs"].size(), mb["outputs"].size());
    for (std::size_t i = 0; i < ma["outputs"].size(); ++i) {
        EXPECT_EQ(ma["outputs"][i]["sha256"], mb["outputs"][i]["sha256"]);
        const std::string f = ma["outputs"][i]["file"];
        EXPECT_EQ(slurp(d / "a" / f), slurp(d / "b" / f));
    }
}

TEST(Cli, SeededSamplerReproducesAndSeedMatters) {
    const auto d = scratch("seed");
    const std::string base = "rmt --set samples=300 --set n_chaotic=40 ";
    ASSERT_EQ(run(base + "--seed 7 --out " + (d / "a").string()).status, 0);
    ASSERT_EQ(run(base + "--seed 7 --out " + (d / "b").string()).status, 0);
    ASSERT_EQ(run(base + "--seed 8 --out " + (d / "c").string()).status, 0);
    EXPECT_EQ(slurp(d / "a" / "samples.csv"), slurp(d / "b" / "samples.csv"));
    EXPECT_NE(slurp(d / "a" / "samples.csv"), slurp(d / "c" / "samples.csv"));
}

TEST(Cli, ManifestListsEveryOutput) {
    const auto d = scratch("manifest");
    ASSERT_EQ(run("wavepacket --set t_end=2 --out " + d.string()).status, 0);
    const auto m = manifest(d);
    std::set<std::string> listed;
    for (const auto& o : m["outputs"]) {
        const std::string f = o["file"];
        listed.insert(f);
        ASSERT_TRUE(fs::exists(d / f));
        EXPECT_EQ(o["bytes"].get<std::uintmax_t>(), fs::file_size(d / f));
        EXPECT_EQ(o["sha256"].get<std::string>().size(), 64u);
    }
    for (const auto& e : fs::directory_iterator(d))
        if (e.path().filename() != "manifest.json") EXPECT_TRUE(listed.count(e.path().filename().string())) << e.path();
    EXPECT_TRUE(m.contains("timing_seconds"));
    EXPECT_EQ(m["inputs"]["subcommand"], "wavepacket");
}

TEST(Cli, UnknownKeyReportsLine) {
    const auto d = scratch("badkey");
    std::ofstream(d / "bad.ini") << "[params]\nn0 = 60\nFO = 0.01\n";
    const auto r = run("sos --config " + (d / "bad.ini").string() + " --out " + (d / "o").string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("bad.ini:3"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("FO"), std::string::npos);
    EXPECT_FALSE(fs::exists(d / "o" / "manifest.json"));
}

TEST(Cli, BadValuesAndModuleErrorsFail) {
    const auto d = scratch("badval");
    auto r = run("mathieu --set q_points=ten --out " + d.string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("q_points"), std::string::npos);
    r = run("secular --set surface=torus --out " + d.string());
    EXPECT_NE(r.status, 0);
    r = run("sos --set F0=-0.1 --out " + d.string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("F0"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverridesCombine) {
    const auto d = scratch("ini");
    std::ofstream(d / "run.ini") << "[params]\nq_max = 5\nq_points = 6\n[output]\nsvg = false\n";
    ASSERT_EQ(run("mathieu --config " + (d / "run.ini").string() + " --set q_points=3 --out " + (d / "o").string()).status, 0);
    const auto csv = slurp(d / "o" / "characteristic_values.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    EXPECT_FALSE(fs::exists(d / "o" / "characteristic_values.svg"));
}

TEST(Cli, CacheHitIsRecorded) {
    const auto d = scratch("cache");
    const std::string env = "NDWP_CACHE_DIR=" + (d / "cache").string();
    const std::string args = "spectrum --set F0=0.01 --set n_min=50 --set n_max=70 --set k_min=-8 --set k_max=8 --set count=4 ";
    ASSERT_EQ(run(args + "--out " + (d / "a").string(), env).status, 0);
    EXPECT_FALSE(manifest(d / "a")["cache"]["hit"].get<bool>());
    const auto r = run(args + "--out " + (d / "b").string(), env);
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(manifest(d / "b")["cache"]["hit"].get<bool>());
    EXPECT_EQ(slurp(d / "a" / "states.csv"), slurp(d / "b" / "states.csv"));
    EXPECT_EQ(manifest(d / "a")["cache"]["key"], manifest(d / "b")["cache"]["key"]);
    ASSERT_EQ(run(args + "--no-cache --out " + (d / "c").string(), env).status, 0);
    EXPECT_FALSE(manifest(d / "c").contains("cache"));
}
