#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ndwp/errors.hpp"

#ifndef NDWP_VERSION
#define NDWP_VERSION "0"
#endif

namespace fs = std::filesystem;
using namespace ndwp::cli;

namespace {

fs::path cache_root(const fs::path& out) {
    if (const char* env = std::getenv("NDWP_CACHE_DIR"); env && *env) return env;
    return out / ".cache";
}

bool restore(const fs::path& entry, RunRecorder& rec) {
    std::ifstream idx(entry / "files.txt");
    if (!idx) return false;
    std::vector<std::pair<std::string, std::string>> files;
    std::string name;
    while (std::getline(idx, name)) {
        std::ifstream in(entry / name, std::ios::binary);
        if (!in) return false;
        files.emplace_back(name, std::string(std::istreambuf_iterator<char>(in), {}));
    }
    std::ifstream nin(entry / "notes.json");
    for (auto& [n, content] : files) rec.write(n, content);
    if (nin) {
        const auto notes = nlohmann::json::parse(nin, nullptr, false);
        if (notes.is_object())
            for (auto& [k, v] : notes.items()) rec.note(k, v);
    }
    return true;
}

void store(const fs::path& entry, const RunRecorder& rec, const nlohmann::json& notes) {
    std::error_code ec;
    fs::create_directories(entry, ec);
    if (ec) return;
    std::ofstream idx(entry / "files.txt");
    for (const auto& f : rec.files()) {
        fs::copy_file(rec.dir() / f, entry / f, fs::copy_options::overwrite_existing, ec);
        idx << f << '\n';
    }
    std::ofstream(entry / "notes.json") << notes.dump();
}

int run(const Command& cmd, const std::optional<std::string>& config, const std::vector<std::string>& sets,
        const std::optional<std::string>& out, std::optional<std::uint64_t> seed, bool no_cache) {
    auto sc = load_config(cmd.schema, config, sets);
    if (out) sc.output_dir = *out;
    if (seed) sc.seed = seed;
    if (no_cache) sc.cache = false;

    nlohmann::json inputs;
    inputs["subcommand"] = sc.subcommand;
    inputs["version"] = NDWP_VERSION;
    inputs["config_file"] = config ? *config : "";
    inputs["canonical"] = sc.canonical();
    if (sc.seed) inputs["seed"] = *sc.seed;
    const fs::path out_dir = sc.output_dir;
    RunRecorder rec(out_dir, inputs);

    const auto t0 = std::chrono::steady_clock::now();
    const std::string key = sha256_hex(std::string(NDWP_VERSION) + "\n" + sc.canonical() + "\nseed=" +
                                       (sc.seed ? std::to_string(*sc.seed) : "none"));
    const fs::path entry = cache_root(out_dir) / key;
    bool hit = false;
    if (cmd.cacheable && sc.cache) {
        hit = restore(entry, rec);
        rec.set_cache(key, hit);
    }
    if (!hit) cmd.run(sc, rec);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.finish(secs);
    if (cmd.cacheable && sc.cache && !hit) {
        std::ifstream m(out_dir / "manifest.json");
        const auto man = nlohmann::json::parse(m, nullptr, false);
        store(entry, rec, man.is_object() && man.contains("notes") ? man["notes"] : nlohmann::json::object());
    }
    std::cout << sc.subcommand << ": wrote " << rec.files().size() << " files to " << out_dir.string()
              << (hit ? " (cache hit)" : "") << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nondispersive wave-packet toolkit"};
    app.set_version_flag("--version", std::string(NDWP_VERSION));
    app.require_subcommand(1);

    std::optional<std::string> config, out;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    bool no_cache = false;
    const Command* chosen = nullptr;

    for (const auto& [name, cmd] : commands()) {
        auto* sub = app.add_subcommand(name, cmd.summary);
        sub->add_option("--config,-c", config, "INI scenario file");
        sub->add_option("--set,-s", sets, "override, e.g. F0=0.02 or run.seed=3");
        sub->add_option("--out,-o", out, "output directory");
        sub->add_option("--seed", seed, "random seed");
        sub->add_flag("--no-cache", no_cache, "ignore and do not fill the result cache");
        std::string keys;
        for (const auto& k : cmd.schema.params) keys += "  " + k.name + " = " + k.default_value + "  (" + k.help + ")\n";
        sub->footer("Parameters ([params] section):\n" + keys);
        sub->callback([&chosen, c = &cmd] { chosen = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        return run(*chosen, config, sets, out, seed, no_cache);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const ndwp::DomainError& e) {
        std::cerr << chosen->schema.subcommand << ": invalid input: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << chosen->schema.subcommand << ": " << e.what() << '\n';
        return 4;
    }
}
