#pragma once

#include "adacomp/report.hpp"
#include "adacomp/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adacomp::cli {

struct RunOptions {
    bool bits = false;
    std::optional<std::uint64_t> seed;     // overrides the scenario seed
    std::optional<int> grid_resolution;    // overrides the scenario value
    int jobs = 1;                          // parallelism for compare
    bool with_timestamp = true;
};

/// Executes the scenario's policy and assembles the report.
RunReport run(const ScenarioConfig& config, const RunOptions& opts = {});

/// Runs several policies on the same model and merges their summaries.
RunReport compare(const ScenarioConfig& config, const std::vector<Policy>& policies,
                  const RunOptions& opts = {});

/// Evaluates the two greedy-optimality conditions on a scalar scenario.
RunReport check_theorems(const ScenarioConfig& config, const RunOptions& opts = {});

/// Curated reproductions with pinned golden checks.
RunReport repro(const std::string& name, const RunOptions& opts = {});
std::vector<std::string> repro_names();

} // namespace adacomp::cli
