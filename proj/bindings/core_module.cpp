#include "adacomp/blockfill.hpp"
#include "adacomp/errors.hpp"
#include "adacomp/model.hpp"
#include "adacomp/oracle.hpp"
#include "adacomp/runner.hpp"
#include "adacomp/scalar_greedy.hpp"
#include "adacomp/waterfill.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace adacomp;
namespace sg = adacomp::scalar_greedy;
namespace wf = adacomp::waterfill;
namespace bf = adacomp::blockfill;
namespace orc = adacomp::oracle;

namespace {

cli::RunOptions options_from_kwargs(bool bits, std::optional<std::uint64_t> seed,
                                    std::optional<int> grid_resolution) {
    cli::RunOptions opts;
    opts.bits = bits;
    opts.seed = seed;
    opts.grid_resolution = grid_resolution;
    return opts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive compression policies for linear Gaussian signal-plus-noise models";
    m.attr("__version__") = ADACOMP_VERSION;

    py::register_exception<Error>(m, "AdacompError");

    // --- model --------------------------------------------------------
    py::class_<GaussianSignalModel>(m, "GaussianSignalModel")
        .def(py::init<Matrix, Vector, Matrix, Matrix, Matrix, int>(), py::arg("H"),
             py::arg("mu"), py::arg("P0"), py::arg("Rnn"), py::arg("Rww"), py::arg("m"))
        .def_property_readonly("N", &GaussianSignalModel::N)
        .def_property_readonly("K", &GaussianSignalModel::K)
        .def_property_readonly("L", &GaussianSignalModel::L)
        .def_property_readonly("m", &GaussianSignalModel::horizon)
        .def_property_readonly("H", &GaussianSignalModel::H)
        .def_property_readonly("mu", &GaussianSignalModel::mu)
        .def_property_readonly("P0", &GaussianSignalModel::P0)
        .def_property_readonly("Rnn", &GaussianSignalModel::Rnn)
        .def_property_readonly("Rww", &GaussianSignalModel::Rww)
        .def("is_scalar_specialization", &GaussianSignalModel::is_scalar_specialization);

    py::class_<Compressor>(m, "Compressor")
        .def_static("vector", &Compressor::vector, py::arg("a"))
        .def_static("matrix", &Compressor::matrix, py::arg("A"))
        .def_property_readonly("is_vector", &Compressor::is_vector)
        .def("as_matrix", &Compressor::as_matrix)
        .def("as_vector", &Compressor::as_vector);

    py::class_<PosteriorState>(m, "PosteriorState")
        .def_readonly("k", &PosteriorState::k)
        .def_readonly("P", &PosteriorState::P)
        .def_readonly("entropy", &PosteriorState::entropy);

    py::class_<PolicyTrace>(m, "PolicyTrace")
        .def_readonly("choices", &PolicyTrace::choices)
        .def_readonly("stage_gains", &PolicyTrace::stage_gains)
        .def_readonly("net_gain", &PolicyTrace::net_gain)
        .def_readonly("final_posterior", &PolicyTrace::final_posterior);

    m.def("initial_state", &initial_state, py::arg("model"));
    m.def("effective_noise_cov", &effective_noise_cov, py::arg("model"), py::arg("A"));
    m.def("posterior_update", &posterior_update, py::arg("prev"), py::arg("A"), py::arg("model"));
    m.def("posterior_update_woodbury", &posterior_update_woodbury, py::arg("prev"), py::arg("A"),
          py::arg("model"));
    m.def("entropy", &entropy, py::arg("P"));
    m.def("per_stage_gain", &per_stage_gain, py::arg("prev"), py::arg("A"), py::arg("model"));
    m.def("evaluate_policy", &evaluate_policy, py::arg("model"), py::arg("choices"));
    m.def("simulate_measurements", &simulate_measurements, py::arg("model"), py::arg("choices"),
          py::arg("seed"));

    // --- scalar greedy --------------------------------------------------
    py::class_<sg::ScalarSensingState>(m, "ScalarSensingState")
        .def_property_readonly("V", &sg::ScalarSensingState::V)
        .def_property_readonly("lambdas_by_index", &sg::ScalarSensingState::lambdas_by_index)
        .def("sorted_spectrum", &sg::ScalarSensingState::sorted_spectrum)
        .def_property_readonly("sigma_n2", &sg::ScalarSensingState::sigma_n2)
        .def_property_readonly("sigma_w2", &sg::ScalarSensingState::sigma_w2)
        .def_property_readonly("sigma2", &sg::ScalarSensingState::sigma2)
        .def_property_readonly("step", &sg::ScalarSensingState::step)
        .def_property_readonly("pick_history", &sg::ScalarSensingState::pick_history);

    py::class_<sg::GreedyStep>(m, "GreedyStep")
        .def_readonly("a", &sg::GreedyStep::a)
        .def_readonly("picked_index", &sg::GreedyStep::picked_index)
        .def_readonly("next", &sg::GreedyStep::next)
        .def_readonly("gain", &sg::GreedyStep::gain);

    m.def("scalar_init_state", &sg::init_state, py::arg("model"));
    m.def("scalar_greedy_step", &sg::greedy_step, py::arg("state"));
    m.def("scalar_greedy_run", &sg::greedy_run, py::arg("state"), py::arg("m"));
    m.def("scalar_snr_ratio", &sg::snr_ratio, py::arg("state"), py::arg("a"));

    // --- water filling ---------------------------------------------------
    py::class_<wf::WaterFillSolution>(m, "WaterFillSolution")
        .def_readonly("Lambdas", &wf::WaterFillSolution::Lambdas)
        .def_readonly("r", &wf::WaterFillSolution::r)
        .def_readonly("mu", &wf::WaterFillSolution::mu)
        .def_readonly("p", &wf::WaterFillSolution::p)
        .def_readonly("H_R", &wf::WaterFillSolution::H_R)
        .def_readonly("q", &wf::WaterFillSolution::q)
        .def_readonly("m", &wf::WaterFillSolution::m);

    m.def("effective_eigenvalues", &wf::effective_eigenvalues, py::arg("lambdas"), py::arg("m"),
          py::arg("sigma2"));
    m.def("find_r", &wf::find_r, py::arg("Lambdas"));
    m.def("water_level", &wf::water_level, py::arg("Lambdas"), py::arg("r"));
    m.def("allocations", &wf::allocations, py::arg("Lambdas"), py::arg("mu"));
    m.def("relaxed_optimal_value", &wf::relaxed_optimal_value, py::arg("Lambdas"));
    m.def("waterfill_solve", &wf::solve, py::arg("lambdas"), py::arg("m"), py::arg("sigma2"));
    m.def("construct_gtilde", &wf::construct_gtilde, py::arg("solution"),
          py::arg("lambdas_full"), py::arg("U1"), py::arg("U2") = std::nullopt);
    m.def("gtilde_objective", &wf::gtilde_objective, py::arg("Gtilde"), py::arg("lambdas_full"),
          py::arg("m"), py::arg("sigma2"));
    m.def("recover_compressors", &wf::recover_compressors, py::arg("Gtilde"), py::arg("V"),
          py::arg("m"), py::arg("sigma_n2"), py::arg("sigma_w2"));

    // --- block filling ----------------------------------------------------
    py::class_<bf::BlockAllocation>(m, "BlockAllocation")
        .def_readonly("m", &bf::BlockAllocation::m)
        .def_readonly("counts", &bf::BlockAllocation::counts)
        .def_readonly("gamma", &bf::BlockAllocation::gamma)
        .def_readonly("heights", &bf::BlockAllocation::heights)
        .def_readonly("gain", &bf::BlockAllocation::gain);

    py::enum_<bf::Theorem>(m, "Theorem").value("T4", bf::Theorem::T4).value("T5", bf::Theorem::T5);

    py::class_<bf::TheoremConditionReport>(m, "TheoremConditionReport")
        .def_readonly("theorem", &bf::TheoremConditionReport::theorem)
        .def_readonly("holds", &bf::TheoremConditionReport::holds)
        .def_readonly("r", &bf::TheoremConditionReport::r)
        .def_readonly("S", &bf::TheoremConditionReport::S)
        .def_readonly("n_raw", &bf::TheoremConditionReport::n_raw)
        .def_readonly("n_int", &bf::TheoremConditionReport::n_int)
        .def_readonly("m_hat", &bf::TheoremConditionReport::m_hat)
        .def_readonly("integral", &bf::TheoremConditionReport::integral)
        .def_readonly("enough_blocks", &bf::TheoremConditionReport::enough_blocks)
        .def_readonly("divisible", &bf::TheoremConditionReport::divisible);

    m.def("make_allocation", &bf::make_allocation, py::arg("Lambdas"), py::arg("m"),
          py::arg("counts"));
    m.def("greedy_blockfill", &bf::greedy_blockfill, py::arg("Lambdas"), py::arg("m"));
    m.def("optimal_blockfill", &bf::optimal_blockfill, py::arg("Lambdas"), py::arg("m"));
    m.def("lemma6_certificate", &bf::lemma6_certificate, py::arg("alloc"), py::arg("Lambdas"),
          py::arg("m"));
    m.def("check_theorem4", &bf::check_theorem4, py::arg("S"), py::arg("Lambdas"), py::arg("m"));
    m.def("check_theorem5", &bf::check_theorem5, py::arg("lambdas"), py::arg("sigma2"),
          py::arg("m"));

    // --- oracles -----------------------------------------------------------
    py::class_<orc::FiniteActionSet>(m, "FiniteActionSet")
        .def(py::init<>())
        .def_readwrite("actions", &orc::FiniteActionSet::actions)
        .def_readwrite("labels", &orc::FiniteActionSet::labels);

    py::enum_<orc::Method>(m, "Method")
        .value("exhaustive", orc::Method::exhaustive)
        .value("grid", orc::Method::grid);

    py::class_<orc::OracleResult>(m, "OracleResult")
        .def_readonly("best_trace", &orc::OracleResult::best_trace)
        .def_readonly("best_sequence", &orc::OracleResult::best_sequence)
        .def_readonly("gain_table", &orc::OracleResult::gain_table)
        .def_readonly("method", &orc::OracleResult::method);

    py::class_<orc::AlphaFamilyResult>(m, "AlphaFamilyResult")
        .def_readonly("greedy_det", &orc::AlphaFamilyResult::greedy_det)
        .def_readonly("alternating_det", &orc::AlphaFamilyResult::alternating_det)
        .def_readonly("ratio", &orc::AlphaFamilyResult::ratio)
        .def_readonly("greedy_gain", &orc::AlphaFamilyResult::greedy_gain)
        .def_readonly("alternating_gain", &orc::AlphaFamilyResult::alternating_gain);

    m.def("eigenvector_action_set", &orc::eigenvector_action_set, py::arg("V"),
          py::arg("indices"));
    m.def("exhaustive_optimal", &orc::exhaustive_optimal, py::arg("model"), py::arg("actions"),
          py::arg("m"));
    m.def("greedy_over_finite_set", &orc::greedy_over_finite_set, py::arg("model"),
          py::arg("actions"), py::arg("m"));
    m.def("alpha_family", &orc::alpha_family, py::arg("alpha"), py::arg("m") = 2);
    m.def("grid_search_scalar_m2", &orc::grid_search_scalar_m2, py::arg("model"),
          py::arg("resolution"));

    // --- scenario runner ----------------------------------------------------
    m.def(
        "run_scenario_json",
        [](const std::string& config_json, bool bits, std::optional<std::uint64_t> seed,
           std::optional<int> grid_resolution) {
            const auto config = cli::parse_scenario(nlohmann::json::parse(config_json));
            auto opts = options_from_kwargs(bits, seed, grid_resolution);
            opts.with_timestamp = false;
            return cli::run(config, opts).to_json_string(bits);
        },
        py::arg("config_json"), py::arg("bits") = false, py::arg("seed") = std::nullopt,
        py::arg("grid_resolution") = std::nullopt,
        "Run a scenario given as a JSON string; returns the report as JSON.");
    m.def(
        "repro_json",
        [](const std::string& name, bool bits) {
            auto opts = options_from_kwargs(bits, std::nullopt, std::nullopt);
            opts.with_timestamp = false;
            const auto report = cli::repro(name, opts);
            if (!report.all_golden_pass())
                throw GoldenMismatchError("golden checks failed for repro target '" + name + "'");
            return report.to_json_string(bits);
        },
        py::arg("name"), py::arg("bits") = false,
        "Run a pinned reproduction; raises on golden-check mismatch.");
    m.def("repro_names", &cli::repro_names);
}
