#include "adacomp/oracle.hpp"

#include "adacomp/errors.hpp"
#include "adacomp/scalar_greedy.hpp"
#include "adacomp/waterfill.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace adacomp;
namespace orc = adacomp::oracle;
using test_support::example_vA_model;
using test_support::example_vB_model;

namespace {

Matrix diag2(double a, double b) {
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = a;
    D(1, 1) = b;
    return D;
}

orc::FiniteActionSet vA_actions() {
    orc::FiniteActionSet set;
    set.actions = {Compressor::matrix(diag2(1, 0)), Compressor::matrix(diag2(0, 1)),
                   Compressor::matrix(0.5 * Matrix::Identity(2, 2))};
    set.labels = {"Diag(1,0)", "Diag(0,1)", "I/2"};
    return set;
}

} // namespace

TEST_CASE("exhaustive search on the three-action instance") {
    const auto model = example_vA_model();
    const auto result = orc::exhaustive_optimal(model, vA_actions(), 2);

    SUBCASE("best sequence alternates the axis compressors") {
        REQUIRE(result.best_sequence.size() == 2);
        const bool alt01 = result.best_sequence[0] == 0 && result.best_sequence[1] == 1;
        const bool alt10 = result.best_sequence[0] == 1 && result.best_sequence[1] == 0;
        CHECK((alt01 || alt10));
        CHECK(result.best_trace.final_posterior.P.determinant() ==
              doctest::Approx(256.0 / 289.0).epsilon(1e-12));
    }
    SUBCASE("gain table carries the greedy sequence too") {
        REQUIRE(result.gain_table.size() == 9);
        bool found = false;
        for (const auto& [seq, gain] : result.gain_table) {
            if (seq == std::vector<int>{2, 0}) {
                found = true;
                // net gain = 0.5 log(det P0 / det P2) with det P2 = 256/105.
                CHECK(gain ==
                      doctest::Approx(0.5 * std::log(256.0 * 105.0 / 256.0)).epsilon(1e-10));
            }
            CHECK(result.best_trace.net_gain >= gain - 1e-12);
        }
        CHECK(found);
    }
    SUBCASE("singleton set repeats its action") {
        orc::FiniteActionSet one;
        one.actions = {Compressor::matrix(diag2(1, 0))};
        one.labels = {"only"};
        const auto r = orc::exhaustive_optimal(model, one, 2);
        CHECK(r.best_sequence == std::vector<int>{0, 0});
    }
    SUBCASE("budget guard") {
        orc::FiniteActionSet set = vA_actions();
        CHECK_THROWS_AS(orc::exhaustive_optimal(model, set, 20), SearchBudgetError);
    }
}

TEST_CASE("greedy over the finite set walks the documented path") {
    const auto model = example_vA_model();
    const auto trace = orc::greedy_over_finite_set(model, vA_actions(), 2);

    // First the half identity (stage-1 inverse determinants 25/256 vs
    // 17/256), then an axis compressor (105/256 vs 81/256).
    CHECK(trace.final_posterior.P.determinant() ==
          doctest::Approx(256.0 / 105.0).epsilon(1e-12));

    const auto s0 = initial_state(model);
    const auto s1 = posterior_update(s0, Compressor::matrix(0.5 * Matrix::Identity(2, 2)), model);
    CHECK(1.0 / s1.P.determinant() == doctest::Approx(25.0 / 256.0).epsilon(1e-12));
    const auto s1_axis = posterior_update(s0, Compressor::matrix(diag2(1, 0)), model);
    CHECK(1.0 / s1_axis.P.determinant() == doctest::Approx(17.0 / 256.0).epsilon(1e-12));

    const auto s2_axis = posterior_update(s1, Compressor::matrix(diag2(1, 0)), model);
    CHECK(1.0 / s2_axis.P.determinant() == doctest::Approx(105.0 / 256.0).epsilon(1e-12));
    const auto s2_half =
        posterior_update(s1, Compressor::matrix(0.5 * Matrix::Identity(2, 2)), model);
    CHECK(1.0 / s2_half.P.determinant() == doctest::Approx(81.0 / 256.0).epsilon(1e-12));

    SUBCASE("greedy never beats the exhaustive optimum") {
        const auto best = orc::exhaustive_optimal(model, vA_actions(), 2);
        CHECK(trace.net_gain <= best.best_trace.net_gain + 1e-12);
    }
    SUBCASE("singleton set") {
        orc::FiniteActionSet one;
        one.actions = {Compressor::matrix(diag2(0, 1))};
        one.labels = {"only"};
        const auto t = orc::greedy_over_finite_set(model, one, 2);
        CHECK(t.choices[0].as_matrix()(1, 1) == 1.0);
        CHECK(t.choices[1].as_matrix()(1, 1) == 1.0);
    }
}

TEST_CASE("alpha family") {
    SUBCASE("alpha = 1/16 reproduces the worked example") {
        const auto r = orc::alpha_family(1.0 / 16.0);
        CHECK(r.greedy_det == doctest::Approx(256.0 / 105.0).epsilon(1e-9));
        CHECK(r.alternating_det == doctest::Approx(256.0 / 289.0).epsilon(1e-9));
    }
    SUBCASE("closed forms hold across the range") {
        for (double alpha : {1e-6, 1e-4, 0.01, 1.0 / 16.0, 0.2, 0.5, 1.0}) {
            const auto r = orc::alpha_family(alpha);
            const double sa = std::sqrt(alpha);
            CHECK(r.greedy_det ==
                  doctest::Approx(1.0 / (sa * (1 + sa) * (1 + sa + alpha))).epsilon(1e-9));
            CHECK(r.alternating_det ==
                  doctest::Approx(1.0 / ((1 + alpha) * (1 + alpha))).epsilon(1e-9));
        }
    }
    SUBCASE("gain parity point") {
        const auto r = orc::alpha_family(0.347809);
        CHECK(std::abs(r.greedy_gain - r.alternating_gain) < 1e-4);
    }
    SUBCASE("unbounded degradation as alpha shrinks") {
        CHECK(orc::alpha_family(1e-6).ratio > 100.0);
    }
    SUBCASE("small alpha matches the live greedy policy") {
        const double alpha = 1.0 / 16.0;
        const Matrix I2 = Matrix::Identity(2, 2);
        const GaussianSignalModel model(I2, Vector::Zero(2), (1.0 / alpha) * I2,
                                        Matrix::Zero(2, 2), I2, 2);
        orc::FiniteActionSet set;
        set.actions = {Compressor::matrix(diag2(1, 0)), Compressor::matrix(diag2(0, 1)),
                       Compressor::matrix(std::pow(alpha, 0.25) * I2)};
        set.labels = {"Diag(1,0)", "Diag(0,1)", "a^(1/4) I"};
        const auto live = orc::greedy_over_finite_set(model, set, 2);
        CHECK(live.final_posterior.P.determinant() ==
              doctest::Approx(orc::alpha_family(alpha).greedy_det).epsilon(1e-10));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(orc::alpha_family(0.0), DomainError);
        CHECK_THROWS_AS(orc::alpha_family(1.5), DomainError);
    }
}

TEST_CASE("grid search on the scalar two-stage instance") {
    const auto model = example_vB_model();
    const auto result = orc::grid_search_scalar_m2(model, 10000);

    SUBCASE("optimum value and component product") {
        CHECK(result.best_trace.net_gain ==
              doctest::Approx(0.5 * std::log(12.8)).epsilon(1e-6));
        const Vector a1 = result.best_trace.choices[0].as_vector();
        CHECK(std::abs(a1[0] * a1[1] - 0.2) < 1e-3);
    }
    SUBCASE("matches the closed-form optimizer up to symmetry") {
        const Vector a1 = result.best_trace.choices[0].as_vector();
        const double lo = std::sqrt((5.0 - std::sqrt(21.0)) / 10.0);
        const double hi = std::sqrt((std::sqrt(21.0) + 5.0) / 10.0);
        const double small = std::min(std::abs(a1[0]), std::abs(a1[1]));
        const double large = std::max(std::abs(a1[0]), std::abs(a1[1]));
        CHECK(small == doctest::Approx(lo).epsilon(1e-3));
        CHECK(large == doctest::Approx(hi).epsilon(1e-3));
    }
    SUBCASE("beats the scalar greedy by the documented margin") {
        const auto greedy = scalar_greedy::greedy_run(scalar_greedy::init_state(model), 2);
        const double margin = result.best_trace.net_gain - greedy.net_gain;
        CHECK(margin == doctest::Approx(0.5 * std::log(12.8 / 12.0)).epsilon(1e-3));
    }
    SUBCASE("negating a1 changes nothing") {
        const Vector a1 = result.best_trace.choices[0].as_vector();
        const auto s0 = initial_state(model);
        CHECK(per_stage_gain(s0, Compressor::vector(a1), model) ==
              doctest::Approx(per_stage_gain(s0, Compressor::vector(-a1), model))
                  .epsilon(1e-12));
    }
    SUBCASE("flat-top diagonal prior keeps the optimum on an eigenvector pair") {
        // lambda = (1, 1/3) satisfies the integer-spacing condition, so no
        // off-eigenvector direction can beat the eigenbasis search here.
        Matrix P0 = diag2(1.0, 1.0 / 3.0);
        Matrix Rww(1, 1);
        Rww << 1.0;
        const GaussianSignalModel diag_model(Matrix::Identity(2, 2), Vector::Zero(2), P0,
                                             Matrix::Zero(2, 2), Rww, 2);
        const auto grid = orc::grid_search_scalar_m2(diag_model, 10000);
        const auto state = scalar_greedy::init_state(diag_model);
        const auto eig_best = orc::exhaustive_optimal(
            diag_model, orc::eigenvector_action_set(state.V(), {1, 2}), 2);
        CHECK(grid.best_trace.net_gain ==
              doctest::Approx(eig_best.best_trace.net_gain).epsilon(1e-7));
        CHECK(grid.best_trace.net_gain ==
              doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-7));
    }
    SUBCASE("specialization guards") {
        CHECK_THROWS_AS(orc::grid_search_scalar_m2(example_vA_model(), 10000),
                        SpecializationError);
        CHECK_THROWS_AS(orc::grid_search_scalar_m2(model, 10), DomainError);
    }
}

TEST_CASE("ordering chain on random scalar instances") {
    std::mt19937_64 rng(173);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const auto model = test_support::random_scalar_model(rng, 4, m, trial % 2 == 0);
        const auto state = scalar_greedy::init_state(model);

        std::vector<int> indices;
        for (int i = 1; i <= model.N(); ++i) indices.push_back(i);
        const auto actions = orc::eigenvector_action_set(state.V(), indices);

        const double hg = scalar_greedy::greedy_run(state, m).net_gain;
        const double ho = orc::exhaustive_optimal(model, actions, m).best_trace.net_gain;
        const double hr =
            waterfill::solve(state.lambdas_by_index(), m, state.sigma2()).H_R;

        CHECK(hg <= ho + 1e-8);
        CHECK(ho <= hr + 1e-8);
        ++checked;
    }
    CHECK(checked == 100);
}
