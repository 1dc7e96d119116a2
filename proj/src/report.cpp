#include "adacomp/report.hpp"

#include <cmath>
#include <sstream>

namespace adacomp::cli {

using nlohmann::json;

namespace {

constexpr double kLn2 = 0.6931471805599453;

double in_units(double nats, bool bits) { return bits ? nats / kLn2 : nats; }

} // namespace

GoldenCheck make_check(const std::string& name, double expected, double actual, double tolerance,
                       const std::string& kind) {
    GoldenCheck c;
    c.name = name;
    c.expected = expected;
    c.actual = actual;
    c.tolerance = tolerance;
    c.kind = kind;
    if (kind == "abs")
        c.pass = std::abs(actual - expected) <= tolerance;
    else if (kind == "rel")
        c.pass = std::abs(actual - expected) <= tolerance * std::abs(expected);
    else if (kind == "greater")
        c.pass = actual > expected;
    else
        c.pass = false;
    return c;
}

bool RunReport::all_golden_pass() const {
    for (const auto& c : golden_checks)
        if (!c.pass) return false;
    return true;
}

json RunReport::to_json(bool bits) const {
    json doc;
    doc["scenario"] = scenario;
    doc["units"] = bits ? "bits" : "nats";

    json stage_arr = json::array();
    for (const StageRow& row : stages) {
        json r;
        r["k"] = row.k;
        r["choice"] = row.label;
        r["compressor"] = row.choice;
        r["stage_gain"] = in_units(row.stage_gain, bits);
        r["det_P"] = row.det_P;
        r["entropy"] = in_units(row.entropy, bits);
        stage_arr.push_back(std::move(r));
    }
    doc["stages"] = std::move(stage_arr);

    json sum = summary;
    if (bits && summary.is_object()) {
        // Scale the per-policy logarithmic summary entries; net gain keeps
        // explicit nats/bits fields regardless.
        for (auto& [key, value] : sum.items()) {
            if (value.is_number() &&
                (key == "H_G" || key == "H_O" || key == "H_R" || key == "net_gain")) {
                value = value.get<double>() / kLn2;
            }
        }
    }
    doc["summary"] = std::move(sum);

    if (!theorems.is_null()) doc["theorems"] = theorems;
    if (!golden_checks.empty()) {
        json arr = json::array();
        for (const auto& c : golden_checks) {
            json item;
            item["name"] = c.name;
            item["expected"] = c.expected;
            item["actual"] = c.actual;
            item["tolerance"] = c.tolerance;
            item["kind"] = c.kind;
            item["pass"] = c.pass;
            arr.push_back(std::move(item));
        }
        doc["golden_checks"] = std::move(arr);
        doc["golden_pass"] = all_golden_pass();
    }

    json prov;
    prov["artifact_version"] = version;
    prov["config_hash"] = config_hash;
    prov["timestamp"] = timestamp;
    doc["provenance"] = std::move(prov);
    return doc;
}

std::string RunReport::to_json_string(bool bits) const { return to_json(bits).dump(2) + "\n"; }

std::string RunReport::to_csv(bool bits) const {
    if (csv_override) return *csv_override;
    std::ostringstream out;
    const char* unit = bits ? "bits" : "nats";
    out << "k,choice,stage_gain_" << unit << ",det_P,entropy_" << unit << "\n";
    out.precision(17);
    for (const StageRow& row : stages) {
        out << row.k << "," << row.label << "," << in_units(row.stage_gain, bits) << ","
            << row.det_P << "," << in_units(row.entropy, bits) << "\n";
    }
    return out.str();
}

} // namespace adacomp::cli
