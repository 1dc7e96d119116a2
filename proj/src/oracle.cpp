#include "adacomp/oracle.hpp"

#include "adacomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace adacomp::oracle {

namespace {

// evaluate_policy without the horizon arity check, so oracles can probe
// horizons other than the model's.
PolicyTrace fold_trace(const GaussianSignalModel& model, const std::vector<Compressor>& choices) {
    PolicyTrace trace;
    trace.choices = choices;
    PosteriorState state = initial_state(model);
    for (const Compressor& A : choices) {
        PosteriorState next = posterior_update(state, A, model);
        trace.stage_gains.push_back(state.entropy - next.entropy);
        state = std::move(next);
    }
    trace.net_gain = 0.0;
    for (double g : trace.stage_gains) trace.net_gain += g;
    trace.final_posterior = std::move(state);
    return trace;
}

constexpr long long kBudget = 1'000'000;
constexpr std::size_t kTableLimit = 4096;

} // namespace

FiniteActionSet eigenvector_action_set(const Matrix& V, const std::vector<int>& indices) {
    FiniteActionSet set;
    for (int idx : indices) {
        if (idx < 1 || idx > V.cols())
            throw DomainError("eigenvector_action_set: index outside 1..K");
        set.actions.push_back(Compressor::vector(V.col(idx - 1)));
        set.labels.push_back("v" + std::to_string(idx));
    }
    if (set.actions.empty()) throw DomainError("eigenvector_action_set: empty index set");
    return set;
}

OracleResult exhaustive_optimal(const GaussianSignalModel& model, const FiniteActionSet& actions,
                                int m) {
    const std::size_t n = actions.actions.size();
    if (n == 0) throw DomainError("exhaustive_optimal: empty action set");
    if (m < 0) throw DomainError("exhaustive_optimal: m must be nonnegative");

    long long total = 1;
    for (int k = 0; k < m; ++k) {
        total *= static_cast<long long>(n);
        if (total > kBudget)
            throw SearchBudgetError("exhaustive search needs more than 10^6 evaluations; "
                                    "use the relaxed water-filling bound instead");
    }

    OracleResult result;
    result.method = Method::exhaustive;
    const bool keep_table = total <= static_cast<long long>(kTableLimit);

    std::vector<int> seq(static_cast<std::size_t>(m), 0);
    std::vector<Compressor> choices;
    bool first = true;
    while (true) {
        choices.clear();
        for (int idx : seq) choices.push_back(actions.actions[(std::size_t)idx]);
        PolicyTrace trace = fold_trace(model, choices);
        if (keep_table) result.gain_table.emplace_back(seq, trace.net_gain);
        // Lexicographic enumeration + strict improvement = smallest tied sequence.
        if (first || trace.net_gain > result.best_trace.net_gain) {
            result.best_trace = std::move(trace);
            result.best_sequence = seq;
            first = false;
        }
        // Odometer increment.
        int pos = m - 1;
        while (pos >= 0 && seq[(std::size_t)pos] == static_cast<int>(n) - 1) {
            seq[(std::size_t)pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++seq[(std::size_t)pos];
    }
    return result;
}

PolicyTrace greedy_over_finite_set(const GaussianSignalModel& model,
                                   const FiniteActionSet& actions, int m) {
    if (actions.actions.empty()) throw DomainError("greedy_over_finite_set: empty action set");
    if (m < 0) throw DomainError("greedy_over_finite_set: m must be nonnegative");

    std::vector<Compressor> choices;
    PosteriorState state = initial_state(model);
    for (int k = 0; k < m; ++k) {
        int best = 0;
        double best_gain = 0.0;
        PosteriorState best_next;
        for (std::size_t j = 0; j < actions.actions.size(); ++j) {
            PosteriorState next = posterior_update(state, actions.actions[j], model);
            const double gain = state.entropy - next.entropy;
            if (j == 0 || gain > best_gain) {
                best = static_cast<int>(j);
                best_gain = gain;
                best_next = std::move(next);
            }
        }
        choices.push_back(actions.actions[(std::size_t)best]);
        state = std::move(best_next);
    }
    return fold_trace(model, choices);
}

AlphaFamilyResult alpha_family(double alpha, int m) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha_family: alpha must be in (0, 1]");
    if (m != 2) throw DomainError("alpha_family: only the two-stage family is defined");

    const Matrix I2 = Matrix::Identity(2, 2);
    const GaussianSignalModel model(I2, Vector::Zero(2), (1.0 / alpha) * I2, Matrix::Zero(2, 2),
                                    I2, 2);
    Matrix d1 = Matrix::Zero(2, 2);
    d1(0, 0) = 1.0;
    Matrix d2 = Matrix::Zero(2, 2);
    d2(1, 1) = 1.0;
    const Matrix scaled = std::pow(alpha, 0.25) * I2;

    const PolicyTrace greedy = fold_trace(
        model, {Compressor::matrix(scaled), Compressor::matrix(d1)});
    const PolicyTrace alternating = fold_trace(
        model, {Compressor::matrix(d1), Compressor::matrix(d2)});

    AlphaFamilyResult out;
    out.greedy_det = greedy.final_posterior.P.determinant();
    out.alternating_det = alternating.final_posterior.P.determinant();
    out.ratio = out.greedy_det / out.alternating_det;
    out.greedy_gain = greedy.net_gain;
    out.alternating_gain = alternating.net_gain;
    return out;
}

OracleResult grid_search_scalar_m2(const GaussianSignalModel& model, int resolution) {
    if (model.N() != 2 || model.K() != 2 || model.L() != 1 || !model.is_scalar_specialization())
        throw SpecializationError("grid search requires N = K = 2 scalar measurements");
    if (model.horizon() != 2)
        throw SpecializationError("grid search is defined for the two-stage problem");
    if (resolution < 100) throw DomainError("grid_search_scalar_m2: resolution must be >= 100");

    const double sigma2 = model.sigma_n2() + model.sigma_w2();
    const PosteriorState start = initial_state(model);

    int best_j = 0;
    double best_gain = 0.0;
    bool first = true;
    for (int j = 0; j < resolution; ++j) {
        // a and -a are equivalent, so half a turn covers every direction.
        const double theta = std::numbers::pi * j / resolution;
        Vector a1(2);
        a1 << std::cos(theta), std::sin(theta);
        const PosteriorState p1 = posterior_update(start, Compressor::vector(a1), model);
        const Matrix D1 = linalg::symmetrize(model.H() * p1.P * model.H().transpose());
        const double lam1 = linalg::eig_sym(D1).values.maxCoeff();
        const double gain = (start.entropy - p1.entropy) + 0.5 * std::log1p(lam1 / sigma2);
        if (first || gain > best_gain) {
            best_gain = gain;
            best_j = j;
            first = false;
        }
    }

    const double theta = std::numbers::pi * best_j / resolution;
    Vector a1(2);
    a1 << std::cos(theta), std::sin(theta);
    const PosteriorState p1 = posterior_update(start, Compressor::vector(a1), model);
    const Matrix D1 = linalg::symmetrize(model.H() * p1.P * model.H().transpose());
    const Vector a2 = linalg::eig_sym(D1).V.col(0);

    OracleResult result;
    result.method = Method::grid;
    result.best_trace = fold_trace(model, {Compressor::vector(a1), Compressor::vector(a2)});
    result.best_sequence = {best_j};
    return result;
}

} // namespace adacomp::oracle
