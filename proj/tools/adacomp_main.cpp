#include "adacomp/errors.hpp"
#include "adacomp/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

namespace acli = adacomp::cli;
namespace fs = std::filesystem;

struct CommonFlags {
    std::string output;
    std::string format; // empty = config / default
    bool bits = false;
    std::int64_t seed = -1;
    int grid_resolution = 0;
    int jobs = 1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--output", flags.output, "Write the report to this path (default: stdout)");
    cmd->add_option("--format", flags.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--bits", flags.bits, "Report logarithmic values in bits instead of nats");
    cmd->add_option("--seed", flags.seed, "Seed for randomized pieces (rotations, sampling)");
    cmd->add_option("--grid-resolution", flags.grid_resolution,
                    "Grid resolution for the oracle_grid policy");
    cmd->add_option("--jobs", flags.jobs, "Parallel policy evaluations for compare")
        ->check(CLI::PositiveNumber);
}

acli::RunOptions to_options(const CommonFlags& flags) {
    acli::RunOptions opts;
    opts.bits = flags.bits;
    if (flags.seed >= 0) opts.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.grid_resolution > 0) opts.grid_resolution = flags.grid_resolution;
    opts.jobs = flags.jobs;
    return opts;
}

fs::path resolve_output(const std::string& path) {
    fs::path p(path);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("ADACOMP_OUTPUT_DIR"); dir && *dir)
        return fs::path(dir) / p;
    return p;
}

// Writes (or prints) the report; returns 4 when golden checks failed.
int emit(const acli::RunReport& report, const acli::ScenarioConfig* config,
         const CommonFlags& flags) {
    std::string path;
    acli::Format format = acli::Format::json;
    if (config && config->output) {
        path = config->output->path;
        format = config->output->format;
    }
    if (!flags.output.empty()) path = flags.output;
    if (!flags.format.empty()) format = flags.format == "csv" ? acli::Format::csv : acli::Format::json;

    const std::string body =
        format == acli::Format::csv ? report.to_csv(flags.bits) : report.to_json_string(flags.bits);
    if (path.empty()) {
        std::cout << body;
    } else {
        const fs::path full = resolve_output(path);
        if (full.has_parent_path()) fs::create_directories(full.parent_path());
        std::ofstream out(full);
        if (!out) throw adacomp::ConfigError("cannot write report to '" + full.string() + "'");
        out << body;
        std::cerr << "report written to " << full.string() << "\n";
    }

    if (!report.golden_checks.empty() && !report.all_golden_pass()) {
        for (const auto& c : report.golden_checks)
            if (!c.pass)
                std::cerr << "golden-check mismatch: " << c.name << " expected " << c.expected
                          << " got " << c.actual << " (" << c.kind << ", tol " << c.tolerance
                          << ")\n";
        return 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive compression policies for linear Gaussian signal-plus-noise models"};
    app.require_subcommand(1);

    std::string run_config_path, compare_config_path, check_config_path, repro_name;
    std::string policies_csv;
    CommonFlags run_flags, repro_flags, compare_flags, check_flags;

    auto* cmd_run = app.add_subcommand("run", "Run one scenario file");
    cmd_run->add_option("config", run_config_path, "Scenario JSON file")->required();
    add_common_flags(cmd_run, run_flags);

    auto* cmd_repro = app.add_subcommand("repro", "Reproduce a pinned reference scenario");
    cmd_repro->add_option("name", repro_name, "One of: vA, vA_alpha_sweep, vB, roundrobin, theorem5_demo")
        ->required();
    add_common_flags(cmd_repro, repro_flags);

    auto* cmd_compare = app.add_subcommand("compare", "Run several policies on one scenario");
    cmd_compare->add_option("config", compare_config_path, "Scenario JSON file")->required();
    cmd_compare->add_option("--policies", policies_csv, "Comma-separated policy list")->required();
    add_common_flags(cmd_compare, compare_flags);

    auto* cmd_check = app.add_subcommand("check-theorems", "Evaluate the greedy-optimality conditions");
    cmd_check->add_option("config", check_config_path, "Scenario JSON file")->required();
    add_common_flags(cmd_check, check_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) {
            const auto config = acli::load_scenario(run_config_path);
            return emit(acli::run(config, to_options(run_flags)), &config, run_flags);
        }
        if (cmd_repro->parsed()) {
            return emit(acli::repro(repro_name, to_options(repro_flags)), nullptr, repro_flags);
        }
        if (cmd_compare->parsed()) {
            const auto config = acli::load_scenario(compare_config_path);
            std::vector<acli::Policy> policies;
            std::stringstream ss(policies_csv);
            std::string token;
            while (std::getline(ss, token, ','))
                if (!token.empty()) policies.push_back(acli::policy_from_string(token));
            return emit(acli::compare(config, policies, to_options(compare_flags)), &config,
                        compare_flags);
        }
        if (cmd_check->parsed()) {
            const auto config = acli::load_scenario(check_config_path);
            return emit(acli::check_theorems(config, to_options(check_flags)), &config,
                        check_flags);
        }
    } catch (const adacomp::ConfigError& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 2;
    } catch (const adacomp::GoldenMismatchError& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 4;
    } catch (const adacomp::Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
