#pragma once

#include "adacomp/linalg.hpp"

#include <cstdint>
#include <vector>

namespace adacomp {

using linalg::Matrix;
using linalg::Vector;

/// Linear Gaussian measurement problem: a signal x ~ N(mu, P0) in R^N is
/// carried over a K-channel (z = H x + n) and compressed into L-dimensional
/// measurements y_k = A_k (H x + n_k) + w_k for k = 1..m.
///
/// Construction validates all invariants (symmetry, definiteness, rank,
/// K >= N) and throws DomainError naming the offending field.
class GaussianSignalModel {
public:
    GaussianSignalModel(Matrix H, Vector mu, Matrix P0, Matrix Rnn, Matrix Rww, int horizon);

    int N() const { return static_cast<int>(P0_.rows()); }
    int K() const { return static_cast<int>(H_.rows()); }
    int L() const { return static_cast<int>(Rww_.rows()); }
    int horizon() const { return m_; }

    const Matrix& H() const { return H_; }
    const Vector& mu() const { return mu_; }
    const Matrix& P0() const { return P0_; }
    const Matrix& Rnn() const { return Rnn_; }
    const Matrix& Rww() const { return Rww_; }

    /// True when the model is the scalar-measurement specialization:
    /// L = 1, Rnn = sigma_n^2 I, Rww = [sigma_w^2].
    bool is_scalar_specialization() const;
    double sigma_n2() const; // throws SpecializationError unless isotropic
    double sigma_w2() const; // throws SpecializationError unless L = 1

private:
    Matrix H_, P0_, Rnn_, Rww_;
    Vector mu_;
    int m_;
};

/// Posterior covariance and entropy after k measurements.
struct PosteriorState {
    int k = 0;
    Matrix P;
    double entropy = 0.0;
};

PosteriorState initial_state(const GaussianSignalModel& model);

/// A stage action: either a full L x K compression matrix or, for scalar
/// measurements, a K-vector a_k acting as the single row a_k^T.
class Compressor {
public:
    static Compressor vector(Vector a);
    static Compressor matrix(Matrix A);

    bool is_vector() const { return is_vector_; }
    /// The action as an L x K matrix (1 x K for vectors).
    const Matrix& as_matrix() const { return A_; }
    /// The K-vector form; throws DomainError for matrix actions.
    Vector as_vector() const;

    int rows() const { return static_cast<int>(A_.rows()); }
    int cols() const { return static_cast<int>(A_.cols()); }

private:
    Matrix A_;
    bool is_vector_ = false;
};

/// One policy run: the chosen compressors with per-stage and net
/// information gains (nats) and the final posterior.
struct PolicyTrace {
    std::vector<Compressor> choices;
    std::vector<double> stage_gains;
    double net_gain = 0.0;
    PosteriorState final_posterior;
};

/// N_k = A R_nn A^T + R_ww.
Matrix effective_noise_cov(const GaussianSignalModel& model, const Compressor& A);

/// Covariance recursion P_k = P - P B^T (B P B^T + N_k)^{-1} B P with
/// B = A H. Symmetrizes the result and recomputes the entropy.
PosteriorState posterior_update(const PosteriorState& prev, const Compressor& A,
                                const GaussianSignalModel& model);

/// Information-form update P_k = (P^{-1} + B^T N_k^{-1} B)^{-1}; requires
/// nonsingular P and N_k. Agrees with posterior_update to roundoff.
PosteriorState posterior_update_woodbury(const PosteriorState& prev, const Compressor& A,
                                         const GaussianSignalModel& model);

/// Differential entropy 0.5 logdet(P) + (N/2) log(2 pi e), in nats.
double entropy(const Matrix& P);

/// H_{k-1} - H_k for taking action A from state prev.
double per_stage_gain(const PosteriorState& prev, const Compressor& A,
                      const GaussianSignalModel& model);

/// Folds posterior_update over an m-long choice sequence.
PolicyTrace evaluate_policy(const GaussianSignalModel& model,
                            const std::vector<Compressor>& choices);

/// Draws x once and fresh noise per stage, returning y_k = A_k(Hx+n_k)+w_k.
/// Deterministic for a fixed seed. Gains never depend on these samples.
std::vector<Vector> simulate_measurements(const GaussianSignalModel& model,
                                          const std::vector<Compressor>& choices,
                                          std::uint64_t seed);

} // namespace adacomp
