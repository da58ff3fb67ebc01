#include "config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ndwp::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& t) {
    const std::string s = trim(t);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError("expected a finite number, got '" + t + "'");
    return v;
}

long long parse_int(const std::string& t) {
    const std::string s = trim(t);
    long long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ConfigError("expected an integer, got '" + t + "'");
    return v;
}

// Line of `key` inside `[section]` of an INI text, 0 if not found.
int locate(const std::string& text, const std::string& section, const std::string& key) {
    std::istringstream in(text);
    std::string line, current;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            current = trim(t.substr(1, t.size() - 2));
            if (key.empty() && current == section) return n;
            continue;
        }
        const auto eq = t.find('=');
        if (eq != std::string::npos && current == section && trim(t.substr(0, eq)) == key) return n;
    }
    return 0;
}

}  // namespace

const KeySpec* Schema::find(const std::string& key) const {
    for (const auto& k : params)
        if (k.name == key) return &k;
    return nullptr;
}

Value parse_value(const KeySpec& spec, const std::string& text) {
    switch (spec.type) {
        case ValueType::Int: return parse_int(text);
        case ValueType::Double: return parse_double(text);
        case ValueType::Bool: {
            const std::string s = trim(text);
            if (s == "true" || s == "on" || s == "1" || s == "yes") return true;
            if (s == "false" || s == "off" || s == "0" || s == "no") return false;
            throw ConfigError("expected a boolean (true/false/on/off), got '" + text + "'");
        }
        case ValueType::String: {
            const std::string s = trim(text);
            if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), s) == spec.choices.end()) {
                std::string all;
                for (const auto& c : spec.choices) all += (all.empty() ? "" : "|") + c;
                throw ConfigError("expected one of " + all + ", got '" + text + "'");
            }
            return s;
        }
        case ValueType::DoubleList: {
            std::vector<double> out;
            std::string item;
            std::istringstream in(text);
            while (std::getline(in, item, ',')) out.push_back(parse_double(item));
            if (out.empty()) throw ConfigError("expected a comma-separated list of numbers");
            return out;
        }
    }
    throw ConfigError("unsupported value type");
}

std::string format_value(const Value& v) {
    struct {
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(double x) const {
            char b[32];
            std::snprintf(b, sizeof b, "%.17g", x);
            return b;
        }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& x) const { return x; }
        std::string operator()(const std::vector<double>& x) const {
            std::string s;
            for (double d : x) s += (s.empty() ? "" : ",") + (*this)(d);
            return s;
        }
    } f;
    return std::visit(f, v);
}

long long ScenarioConfig::get_int(const std::string& k) const { return std::get<long long>(params.at(k)); }
double ScenarioConfig::get_double(const std::string& k) const { return std::get<double>(params.at(k)); }
bool ScenarioConfig::get_bool(const std::string& k) const { return std::get<bool>(params.at(k)); }
const std::string& ScenarioConfig::get_string(const std::string& k) const {
    return std::get<std::string>(params.at(k));
}
const std::vector<double>& ScenarioConfig::get_list(const std::string& k) const {
    return std::get<std::vector<double>>(params.at(k));
}

std::string ScenarioConfig::canonical() const {
    std::string s = subcommand + "\n";
    for (const auto& [k, v] : params) s += k + "=" + format_value(v) + "\n";
    if (seed) s += "seed=" + std::to_string(*seed) + "\n";
    return s;
}

ScenarioConfig load_config(const Schema& schema, const std::optional<std::string>& path,
                           const std::vector<std::string>& overrides) {
    ScenarioConfig cfg;
    cfg.subcommand = schema.subcommand;
    for (const auto& k : schema.params) {
        if (k.default_value.empty()) continue;
        cfg.params[k.name] = parse_value(k, k.default_value);
    }

    auto assign = [&](const std::string& section, const std::string& key, const std::string& value,
                      const std::string& where) {
        try {
            if (section == "params") {
                const KeySpec* spec = schema.find(key);
                if (!spec) throw ConfigError("unknown parameter for '" + schema.subcommand + "'");
                cfg.params[key] = parse_value(*spec, value);
            } else if (section == "run") {
                if (key == "seed") {
                    const long long s = parse_int(value);
                    if (s < 0) throw ConfigError("seed must be non-negative");
                    cfg.seed = static_cast<std::uint64_t>(s);
                } else if (key == "cache") {
                    cfg.cache = std::get<bool>(parse_value({key, ValueType::Bool, "", "", {}}, value));
                } else if (key == "output_dir") {
                    cfg.output_dir = trim(value);
                } else if (key == "subcommand") {
                    if (trim(value) != schema.subcommand)
                        throw ConfigError("file is for '" + trim(value) + "', not '" + schema.subcommand + "'");
                } else {
                    throw ConfigError("unknown run setting");
                }
            } else if (section == "output") {
                if (key != "svg") throw ConfigError("unknown output setting");
                cfg.svg = std::get<bool>(parse_value({key, ValueType::Bool, "", "", {}}, value));
            } else {
                throw ConfigError("unknown section");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + section + "." + key + ": " + e.what());
        }
    };

    if (path) {
        std::ifstream in(*path);
        if (!in) throw ConfigError(*path + ": cannot open configuration file");
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        boost::property_tree::ptree tree;
        try {
            std::istringstream is(text);
            boost::property_tree::ini_parser::read_ini(is, tree);
        } catch (const boost::property_tree::ini_parser_error& e) {
            throw ConfigError(*path + ":" + std::to_string(e.line()) + ": " + e.message());
        }
        for (const auto& [section, body] : tree) {
            if (body.empty() && !body.data().empty())
                throw ConfigError(*path + ":" + std::to_string(locate(text, "", section)) + ": key '" + section +
                                  "' outside of a section");
            for (const auto& [key, node] : body) {
                const int line = locate(text, section, key);
                assign(section, key, node.data(), *path + ":" + std::to_string(line));
            }
        }
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("--set " + o + ": expected key=value");
        std::string key = trim(o.substr(0, eq));
        std::string section = "params";
        if (const auto dot = key.find('.'); dot != std::string::npos) {
            section = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        assign(section, key, o.substr(eq + 1), "--set " + o);
    }
    for (const auto& k : schema.params)
        if (!cfg.params.count(k.name))
            throw ConfigError("params." + k.name + ": required parameter missing (" + k.help + ")");
    return cfg;
}

}  // namespace ndwp::cli
