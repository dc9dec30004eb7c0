#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nls/evolution.hpp"
#include "nls/operator.hpp"

namespace nls {

/// Parsed and validated run configuration. `raw` keeps the verbatim document
/// for echoing into manifests.
struct RunConfig {
    nlohmann::json raw;
    OperatorSpec problem;
    EvolutionConfig solver;
    nlohmann::json command = nlohmann::json::object();  // subcommand arguments
    std::string output_directory = "out";
    std::vector<std::string> formats{"json", "csv"};
};

/// Parses a config document; throws ConfigInvalid with a JSON-pointer-style
/// field path on the first offending field.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

}  // namespace nls
