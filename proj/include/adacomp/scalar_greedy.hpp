#pragma once

#include "adacomp/model.hpp"

#include <utility>
#include <vector>

namespace adacomp::scalar_greedy {

class ScalarSensingState;
struct GreedyStep;

/// Eigendecomposes D_0 = H P_0 H^T for a scalar-measurement model and
/// fixes the reproducibility conventions (descending order, sign rule).
ScalarSensingState init_state(const GaussianSignalModel& model);

/// One greedy pick: the eigenvector with the largest current eigenvalue
/// (ties go to the smallest original index, detected with 1e-10 relative
/// tolerance). Its eigenvalue becomes (1/lambda + 1/sigma^2)^{-1}.
GreedyStep greedy_step(const ScalarSensingState& state);

/// Working state of the greedy policy for sequential scalar measurements.
/// D_k = H P_k H^T keeps the eigenbasis of D_0 under greedy updates, so the
/// state is just that fixed basis plus the per-direction eigenvalues, which
/// the policy re-sorts step by step.
class ScalarSensingState {
public:
    const GaussianSignalModel& model() const { return model_; }
    /// Eigenvectors of D_0, one column per original index, fixed for the
    /// whole run. Columns are ordered by descending initial eigenvalue.
    const Matrix& V() const { return V_; }
    /// Current eigenvalue of each column of V (original-index order).
    const Vector& lambdas_by_index() const { return lambdas_; }
    /// Current spectrum sorted descending, ties broken by original index.
    /// Each entry is (eigenvalue, original index).
    std::vector<std::pair<double, int>> sorted_spectrum() const;

    double sigma_n2() const { return sigma_n2_; }
    double sigma_w2() const { return sigma_w2_; }
    double sigma2() const { return sigma2_; }
    int step() const { return step_; }
    const std::vector<int>& pick_history() const { return picks_; }

private:
    friend ScalarSensingState init_state(const GaussianSignalModel& model);
    friend GreedyStep greedy_step(const ScalarSensingState& state);

    GaussianSignalModel model_{Matrix::Identity(1, 1), Vector::Zero(1), Matrix::Identity(1, 1),
                               Matrix::Zero(1, 1), Matrix::Identity(1, 1), 1};
    Matrix V_;
    Vector lambdas_;
    double sigma_n2_ = 0.0, sigma_w2_ = 1.0, sigma2_ = 1.0;
    int step_ = 0;
    std::vector<int> picks_;
};

struct GreedyStep {
    Vector a;                // the picked eigenvector
    int picked_index;        // its original index (0-based)
    ScalarSensingState next; // state after the analytic eigenvalue update
    double gain;             // 0.5 log(1 + lambda_max / sigma^2)
};

/// Runs m greedy steps and evaluates the resulting choices through the
/// exact covariance recursion.
PolicyTrace greedy_run(const ScalarSensingState& state, int m);

/// Signal-to-noise ratio a^T H P_{k-1} H^T a / (sigma_n^2 |a|^2 + sigma_w^2)
/// evaluated from the current spectrum. The greedy pick maximizes this.
double snr_ratio(const ScalarSensingState& state, const Vector& a);

} // namespace adacomp::scalar_greedy
