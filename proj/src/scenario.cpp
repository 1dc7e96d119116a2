#include "adacomp/scenario.hpp"

#include "adacomp/errors.hpp"

#include <fstream>
#include <sstream>

namespace adacomp::cli {

using nlohmann::json;

Policy policy_from_string(const std::string& s) {
    if (s == "greedy_scalar") return Policy::greedy_scalar;
    if (s == "greedy_finite") return Policy::greedy_finite;
    if (s == "alternating") return Policy::alternating;
    if (s == "waterfill") return Policy::waterfill;
    if (s == "blockfill") return Policy::blockfill;
    if (s == "oracle_exhaustive") return Policy::oracle_exhaustive;
    if (s == "oracle_grid") return Policy::oracle_grid;
    throw ConfigError("unknown policy '" + s + "'");
}

std::string to_string(Policy p) {
    switch (p) {
        case Policy::greedy_scalar: return "greedy_scalar";
        case Policy::greedy_finite: return "greedy_finite";
        case Policy::alternating: return "alternating";
        case Policy::waterfill: return "waterfill";
        case Policy::blockfill: return "blockfill";
        case Policy::oracle_exhaustive: return "oracle_exhaustive";
        case Policy::oracle_grid: return "oracle_grid";
    }
    return "?";
}

namespace {

Matrix parse_matrix(const json& node, int rows, int cols, const std::string& field) {
    if (!node.is_array() || static_cast<int>(node.size()) != rows)
        throw ConfigError(field + ": expected " + std::to_string(rows) + " rows");
    Matrix M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = node[(std::size_t)i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ConfigError(field + ": row " + std::to_string(i + 1) + " must have " +
                              std::to_string(cols) + " entries");
        for (int j = 0; j < cols; ++j) {
            if (!row[(std::size_t)j].is_number())
                throw ConfigError(field + ": non-numeric entry");
            M(i, j) = row[(std::size_t)j].get<double>();
        }
    }
    return M;
}

Vector parse_vector(const json& node, int n, const std::string& field) {
    if (!node.is_array() || static_cast<int>(node.size()) != n)
        throw ConfigError(field + ": expected " + std::to_string(n) + " entries");
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        if (!node[(std::size_t)i].is_number()) throw ConfigError(field + ": non-numeric entry");
        v[i] = node[(std::size_t)i].get<double>();
    }
    return v;
}

json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

int require_int(const json& doc, const std::string& field, int min_value) {
    if (!doc.contains(field) || !doc[field].is_number_integer())
        throw ConfigError("model." + field + " must be an integer");
    const int v = doc[field].get<int>();
    if (v < min_value)
        throw ConfigError("model." + field + " must be >= " + std::to_string(min_value));
    return v;
}

} // namespace

ScenarioConfig parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
    if (!doc.contains("model")) throw ConfigError("missing required field 'model'");
    if (!doc.contains("policy")) throw ConfigError("missing required field 'policy'");

    ScenarioConfig config;
    config.name = doc.value("name", std::string{});

    const json& md = doc["model"];
    const int N = require_int(md, "N", 1);
    const int K = require_int(md, "K", 1);
    const int L = require_int(md, "L", 1);
    const int m = require_int(md, "m", 0);
    for (const char* field : {"H", "P0", "Rnn", "Rww"})
        if (!md.contains(field)) throw ConfigError(std::string("model.") + field + " is missing");

    const Matrix H = parse_matrix(md["H"], K, N, "model.H");
    const Matrix P0 = parse_matrix(md["P0"], N, N, "model.P0");
    const Matrix Rnn = parse_matrix(md["Rnn"], K, K, "model.Rnn");
    const Matrix Rww = parse_matrix(md["Rww"], L, L, "model.Rww");
    const Vector mu =
        md.contains("mu") ? parse_vector(md["mu"], N, "model.mu") : Vector::Zero(N);

    try {
        config.model = GaussianSignalModel(H, mu, P0, Rnn, Rww, m);
    } catch (const Error& e) {
        throw ConfigError(std::string("model invariant violation: ") + e.what());
    }

    config.policy = policy_from_string(doc["policy"].get<std::string>());

    if (doc.contains("actions")) {
        oracle::FiniteActionSet set;
        const json& arr = doc["actions"];
        if (!arr.is_array() || arr.empty())
            throw ConfigError("actions must be a nonempty array");
        int index = 0;
        for (const json& item : arr) {
            ++index;
            const std::string label =
                item.value("label", "action" + std::to_string(index));
            if (item.contains("matrix")) {
                set.actions.push_back(
                    Compressor::matrix(parse_matrix(item["matrix"], L, K,
                                                    "actions[" + std::to_string(index) + "]")));
            } else if (item.contains("vector")) {
                if (L != 1)
                    throw ConfigError("actions[" + std::to_string(index) +
                                      "]: vector actions require L = 1");
                set.actions.push_back(
                    Compressor::vector(parse_vector(item["vector"], K,
                                                    "actions[" + std::to_string(index) + "]")));
            } else {
                throw ConfigError("actions[" + std::to_string(index) +
                                  "] needs a 'matrix' or 'vector' field");
            }
            set.labels.push_back(label);
        }
        config.actions = std::move(set);
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer()) throw ConfigError("seed must be an integer");
        config.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("grid_resolution")) {
        if (!doc["grid_resolution"].is_number_integer() || doc["grid_resolution"].get<int>() < 100)
            throw ConfigError("grid_resolution must be an integer >= 100");
        config.grid_resolution = doc["grid_resolution"].get<int>();
    }
    if (doc.contains("eigenvector_subset")) {
        for (const json& v : doc["eigenvector_subset"]) {
            if (!v.is_number_integer()) throw ConfigError("eigenvector_subset must hold integers");
            const int idx = v.get<int>();
            if (idx < 1 || idx > N)
                throw ConfigError("eigenvector_subset entries must lie in 1..N");
            config.eigenvector_subset.push_back(idx);
        }
    }
    if (doc.contains("output")) {
        OutputSpec out;
        out.path = doc["output"].value("path", std::string{});
        const std::string fmt = doc["output"].value("format", "json");
        if (fmt == "json")
            out.format = Format::json;
        else if (fmt == "csv")
            out.format = Format::csv;
        else
            throw ConfigError("output.format must be 'json' or 'csv'");
        config.output = std::move(out);
    }

    // Policy preconditions are checkable at load time.
    const bool needs_actions = config.policy == Policy::greedy_finite ||
                               config.policy == Policy::alternating ||
                               config.policy == Policy::oracle_exhaustive;
    if (needs_actions && !config.actions)
        throw ConfigError("policy '" + to_string(config.policy) + "' requires an action set");
    const bool needs_scalar = config.policy == Policy::greedy_scalar ||
                              config.policy == Policy::waterfill ||
                              config.policy == Policy::blockfill ||
                              config.policy == Policy::oracle_grid;
    if (needs_scalar && !config.model.is_scalar_specialization())
        throw ConfigError("policy '" + to_string(config.policy) +
                          "' requires the scalar specialization (L = 1, Rnn = sigma_n^2 I)");
    if (config.policy == Policy::oracle_grid &&
        (config.model.N() != 2 || config.model.K() != 2 || config.model.horizon() != 2))
        throw ConfigError("policy 'oracle_grid' requires N = K = 2 and m = 2");

    return config;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error in '" + path + "': " + e.what());
    }
    return parse_scenario(doc);
}

nlohmann::json canonical_json(const ScenarioConfig& config) {
    json doc;
    doc["name"] = config.name;
    json md;
    md["N"] = config.model.N();
    md["K"] = config.model.K();
    md["L"] = config.model.L();
    md["m"] = config.model.horizon();
    md["H"] = matrix_to_json(config.model.H());
    md["mu"] = vector_to_json(config.model.mu());
    md["P0"] = matrix_to_json(config.model.P0());
    md["Rnn"] = matrix_to_json(config.model.Rnn());
    md["Rww"] = matrix_to_json(config.model.Rww());
    doc["model"] = std::move(md);
    doc["policy"] = to_string(config.policy);
    if (config.actions) {
        json arr = json::array();
        for (std::size_t i = 0; i < config.actions->actions.size(); ++i) {
            json item;
            item["label"] = config.actions->labels[i];
            const Compressor& a = config.actions->actions[i];
            if (a.is_vector())
                item["vector"] = vector_to_json(a.as_vector());
            else
                item["matrix"] = matrix_to_json(a.as_matrix());
            arr.push_back(std::move(item));
        }
        doc["actions"] = std::move(arr);
    }
    if (config.seed) doc["seed"] = *config.seed;
    doc["grid_resolution"] = config.grid_resolution;
    if (!config.eigenvector_subset.empty()) doc["eigenvector_subset"] = config.eigenvector_subset;
    if (config.output) {
        json out;
        out["path"] = config.output->path;
        out["format"] = config.output->format == Format::json ? "json" : "csv";
        doc["output"] = std::move(out);
    }
    return doc;
}

std::string config_hash(const ScenarioConfig& config) {
    const std::string dump = canonical_json(config).dump();
    // FNV-1a, 64 bit.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << h;
    return hex.str();
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write scenario file '" + path + "'");
    out << canonical_json(config).dump(2) << "\n";
}

} // namespace adacomp::cli
