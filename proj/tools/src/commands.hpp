#pragma once

#include <functional>
#include <map>
#include <string>

#include "config.hpp"
#include "output.hpp"

namespace ndwp::cli {

struct Command {
    Schema schema;
    std::string summary;
    bool cacheable = false;
    // Produces the data and plot files of one run.
    std::function<void(const ScenarioConfig&, RunRecorder&)> run;
};

const std::map<std::string, Command>& commands();

}  // namespace ndwp::cli
