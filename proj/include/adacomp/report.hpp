#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace adacomp::cli {

struct StageRow {
    int k = 0;
    std::string label;
    nlohmann::json choice; // matrix or vector, row-major nested arrays
    double stage_gain = 0.0; // nats
    double det_P = 0.0;
    double entropy = 0.0; // nats
};

struct GoldenCheck {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    std::string kind = "abs"; // abs | rel | greater
    bool pass = false;
};

/// Everything a run emits: scenario echo, the per-stage table, the summary
/// block, optional theorem and golden-check sections, and provenance.
struct RunReport {
    nlohmann::json scenario;
    std::vector<StageRow> stages;
    nlohmann::json summary = nlohmann::json::object();
    nlohmann::json theorems; // null unless requested
    std::vector<GoldenCheck> golden_checks;

    std::string version;
    std::string config_hash;
    std::string timestamp;

    /// Ready-made CSV body (e.g. the alpha sweep); otherwise stages are
    /// rendered.
    std::optional<std::string> csv_override;

    bool all_golden_pass() const;

    /// bits = report logarithmic quantities in bits instead of nats. The
    /// summary always carries both net-gain units.
    nlohmann::json to_json(bool bits) const;
    std::string to_json_string(bool bits) const;
    std::string to_csv(bool bits) const;
};

GoldenCheck make_check(const std::string& name, double expected, double actual, double tolerance,
                       const std::string& kind);

} // namespace adacomp::cli
