#pragma once

#include "adacomp/model.hpp"
#include "adacomp/oracle.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adacomp::cli {

enum class Policy {
    greedy_scalar,
    greedy_finite,
    alternating,
    waterfill,
    blockfill,
    oracle_exhaustive,
    oracle_grid,
};

Policy policy_from_string(const std::string& s);
std::string to_string(Policy p);

enum class Format { json, csv };

struct OutputSpec {
    std::string path;
    Format format = Format::json;
};

/// A fully validated scenario: the model plus one policy to run on it.
struct ScenarioConfig {
    std::string name;
    GaussianSignalModel model{Matrix::Identity(1, 1), Vector::Zero(1), Matrix::Identity(1, 1),
                              Matrix::Zero(1, 1), Matrix::Identity(1, 1), 1};
    Policy policy = Policy::greedy_scalar;
    std::optional<oracle::FiniteActionSet> actions;
    std::optional<std::uint64_t> seed;
    int grid_resolution = 10000;
    std::vector<int> eigenvector_subset; // 1-based; empty means 1..N
    std::optional<OutputSpec> output;
};

/// Parses and validates a scenario document. Invariant violations raise
/// ConfigError naming the failing field.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::string& path);

/// Canonical (normalized) form: a round-trip through save/load keeps the
/// config hash stable.
nlohmann::json canonical_json(const ScenarioConfig& config);
std::string config_hash(const ScenarioConfig& config);
void save_scenario(const ScenarioConfig& config, const std::string& path);

} // namespace adacomp::cli
