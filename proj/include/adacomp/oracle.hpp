#pragma once

#include "adacomp/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace adacomp::oracle {

/// A prescribed finite menu of compressors.
struct FiniteActionSet {
    std::vector<Compressor> actions;
    std::vector<std::string> labels;
};

/// Action set made of eigenbasis columns (1-based indices into V).
FiniteActionSet eigenvector_action_set(const Matrix& V, const std::vector<int>& indices);

enum class Method { exhaustive, grid };

struct OracleResult {
    PolicyTrace best_trace;
    std::vector<int> best_sequence; // action indices, or the grid index
    // (sequence, net gain) for every candidate; filled on small instances only.
    std::vector<std::pair<std::vector<int>, double>> gain_table;
    Method method = Method::exhaustive;
};

/// Gains are deterministic functions of the choices, so the optimal policy
/// over a finite set is found by plain enumeration of all |A|^m sequences.
/// Ties go to the lexicographically smallest index sequence. Guarded at
/// 10^6 evaluations.
OracleResult exhaustive_optimal(const GaussianSignalModel& model, const FiniteActionSet& actions,
                                int m);

/// Stage-by-stage argmax of the per-stage gain over the action set, ties
/// to the smallest index.
PolicyTrace greedy_over_finite_set(const GaussianSignalModel& model,
                                   const FiniteActionSet& actions, int m);

/// The two-stage counterexample family: P0 = I/alpha with actions
/// {Diag(1,0), Diag(0,1), alpha^{1/4} I}. Evaluates the small-alpha greedy
/// sequence (scaled identity, then an axis compressor) and the alternating
/// sequence through the exact recursion, reproducing the closed forms
/// det = 1/(sqrt(a)(1+sqrt(a))(1+sqrt(a)+a)) and 1/(1+a)^2.
struct AlphaFamilyResult {
    double greedy_det = 0.0;
    double alternating_det = 0.0;
    double ratio = 0.0;            // greedy_det / alternating_det
    double greedy_gain = 0.0;      // nats
    double alternating_gain = 0.0; // nats
};
AlphaFamilyResult alpha_family(double alpha, int m = 2);

/// Unit-norm scalar search for N = K = 2, m = 2: sweeps a uniform theta
/// grid for a_1 = (cos t, sin t); the closing stage is a greedy step, so
/// only one dimension needs searching.
OracleResult grid_search_scalar_m2(const GaussianSignalModel& model, int resolution);

} // namespace adacomp::oracle
