#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpc.hpp"
#include "psychro.hpp"

namespace acmpc::manifest {

// Flat TOML-style document: [section] headers over key = value lines
// (strings, numbers, booleans). Enough for experiment manifests; nesting
// and arrays are out of scope.
class Document {
public:
    static Document parse_file(const std::string& path);
    static Document parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::vector<std::string> sections() const;

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_number(const std::string& section, const std::string& key, double fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

private:
    std::map<std::string, std::map<std::string, std::string>> values_;
    std::string origin_;
};

struct ScenarioSpec {
    std::string label;
    std::string controller;  // benchmark | mpc_sensible | mpc_latent
    std::string mode = "cost";  // cost | limit
};

struct ExperimentManifest {
    std::uint64_t seed = 42;
    int train_days = 14;
    int eval_days = 6;
    std::string eval_profile = "hot_humid";
    std::string train_profile = "july";
    double mpc_training_fraction = 0.25;
    double moisture_scale = 1.0;
    std::optional<std::string> weather_csv;  // external evaluation weather
    psychro::ComfortAssumptions comfort;
    mpc::MpcConfig mpc;
    std::vector<ScenarioSpec> scenarios;
};

// Parse and validate an experiment manifest (unique scenario labels,
// referenced files must exist).
ExperimentManifest load_manifest(const std::string& path);
ExperimentManifest manifest_from_document(const Document& doc, const std::string& base_dir);

}  // namespace acmpc::manifest
