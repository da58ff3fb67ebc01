#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ndwp::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ValueType { Int, Double, Bool, String, DoubleList };

struct KeySpec {
    std::string name;
    ValueType type = ValueType::Double;
    std::string default_value;
    std::string help;
    std::vector<std::string> choices;  // String only
};

using Value = std::variant<long long, double, bool, std::string, std::vector<double>>;

struct Schema {
    std::string subcommand;
    std::vector<KeySpec> params;
    const KeySpec* find(const std::string& key) const;
};

struct ScenarioConfig {
    std::string subcommand;
    std::map<std::string, Value> params;
    std::string output_dir = "out";
    std::optional<std::uint64_t> seed;
    bool cache = true;
    bool svg = true;

    long long get_int(const std::string& k) const;
    double get_double(const std::string& k) const;
    bool get_bool(const std::string& k) const;
    const std::string& get_string(const std::string& k) const;
    const std::vector<double>& get_list(const std::string& k) const;
    // Stable textual form of the resolved parameters, used for hashing.
    std::string canonical() const;
};

Value parse_value(const KeySpec& spec, const std::string& text);
std::string format_value(const Value& v);

// Builds the configuration from an optional INI file and `section.key=value`
// overrides.  Unknown sections and keys are rejected with the offending line.
ScenarioConfig load_config(const Schema& schema, const std::optional<std::string>& path,
                           const std::vector<std::string>& overrides);

}  // namespace ndwp::cli
