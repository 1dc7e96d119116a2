#include "adacomp/model.hpp"

#include "adacomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace adacomp {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kPsdTol = 1e-10;   // eigenvalue > -kPsdTol * lambda_max is PSD-valid
constexpr double kRankTol = 1e-10;  // smallest/largest singular value of H
constexpr double kCondLimit = 1e12; // innovation matrix conditioning

void require_symmetric(const Matrix& M, const std::string& name) {
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (!linalg::is_symmetric(M, kSymTol * scale))
        throw DomainError(name + " is not symmetric within 1e-12");
}

// All eigenvalues strictly positive.
void require_pd(const Matrix& M, const std::string& name) {
    const auto e = linalg::eig_sym(M);
    if (e.values.size() == 0 || e.values.minCoeff() <= 0.0)
        throw DomainError(name + " is not positive definite");
}

// Eigenvalues above -kPsdTol * lambda_max.
void require_psd(const Matrix& M, const std::string& name) {
    const auto e = linalg::eig_sym(M);
    if (e.values.size() == 0) return;
    const double lmax = std::max(e.values.maxCoeff(), 0.0);
    if (e.values.minCoeff() < -kPsdTol * std::max(lmax, 1.0))
        throw DomainError(name + " is not positive semidefinite");
}

void check_conformance(const GaussianSignalModel& model, const Compressor& A) {
    if (A.cols() != model.K())
        throw ConformanceError("compressor has " + std::to_string(A.cols()) +
                               " columns, model channel dimension K is " +
                               std::to_string(model.K()));
    if (A.rows() != model.L())
        throw ConformanceError("compressor has " + std::to_string(A.rows()) +
                               " rows, model measurement dimension L is " +
                               std::to_string(model.L()));
}

} // namespace

GaussianSignalModel::GaussianSignalModel(Matrix H, Vector mu, Matrix P0, Matrix Rnn, Matrix Rww,
                                         int horizon)
    : H_(std::move(H)), P0_(std::move(P0)), Rnn_(std::move(Rnn)), Rww_(std::move(Rww)),
      mu_(std::move(mu)), m_(horizon) {
    const auto N = P0_.rows();
    const auto K = H_.rows();
    const auto L = Rww_.rows();
    if (N < 1) throw DomainError("P0: signal dimension must be positive");
    if (P0_.cols() != N) throw DomainError("P0 must be square");
    if (H_.cols() != N) throw DomainError("H must be K x N");
    if (K < N) throw DomainError("H: channel dimension K must satisfy K >= N");
    if (L < 1 || Rww_.cols() != L) throw DomainError("Rww must be square L x L, L >= 1");
    if (Rnn_.rows() != K || Rnn_.cols() != K) throw DomainError("Rnn must be K x K");
    if (mu_.size() != N) throw DomainError("mu must have length N");
    if (m_ < 0) throw DomainError("horizon m must be nonnegative");

    require_symmetric(P0_, "P0");
    require_pd(P0_, "P0");
    require_symmetric(Rnn_, "Rnn");
    require_psd(Rnn_, "Rnn");
    require_symmetric(Rww_, "Rww");
    require_pd(Rww_, "Rww");

    const Eigen::JacobiSVD<Matrix> svd(H_);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= kRankTol * sv[0])
        throw DomainError("H does not have full column rank N");
}

bool GaussianSignalModel::is_scalar_specialization() const {
    if (L() != 1) return false;
    const double sn2 = Rnn_(0, 0);
    const Matrix iso = sn2 * Matrix::Identity(K(), K());
    const double scale = std::max(1.0, Rnn_.cwiseAbs().maxCoeff());
    return (Rnn_ - iso).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

double GaussianSignalModel::sigma_n2() const {
    if (!is_scalar_specialization())
        throw SpecializationError(
            "model is not the scalar specialization (L = 1, Rnn = sigma_n^2 I, scalar Rww)");
    return Rnn_(0, 0);
}

double GaussianSignalModel::sigma_w2() const {
    if (!is_scalar_specialization())
        throw SpecializationError(
            "model is not the scalar specialization (L = 1, Rnn = sigma_n^2 I, scalar Rww)");
    return Rww_(0, 0);
}

PosteriorState initial_state(const GaussianSignalModel& model) {
    return PosteriorState{0, model.P0(), entropy(model.P0())};
}

Compressor Compressor::vector(Vector a) {
    Compressor c;
    c.A_ = a.transpose();
    c.is_vector_ = true;
    return c;
}

Compressor Compressor::matrix(Matrix A) {
    Compressor c;
    c.A_ = std::move(A);
    c.is_vector_ = false;
    return c;
}

Vector Compressor::as_vector() const {
    if (!is_vector_ && A_.rows() != 1)
        throw DomainError("compressor is not a scalar (single-row) action");
    return A_.row(0).transpose();
}

Matrix effective_noise_cov(const GaussianSignalModel& model, const Compressor& A) {
    check_conformance(model, A);
    const Matrix& Am = A.as_matrix();
    return linalg::symmetrize(Am * model.Rnn() * Am.transpose() + model.Rww());
}

PosteriorState posterior_update(const PosteriorState& prev, const Compressor& A,
                                const GaussianSignalModel& model) {
    check_conformance(model, A);
    const Matrix B = A.as_matrix() * model.H();
    const Matrix Nk = effective_noise_cov(model, A);
    const Matrix S = linalg::symmetrize(B * prev.P * B.transpose() + Nk);
    if (linalg::condition_number_sym(S) > kCondLimit)
        throw SingularityError("innovation matrix B P B^T + N_k is numerically singular");

    const Matrix PBt = prev.P * B.transpose();
    Matrix P = prev.P - PBt * S.llt().solve(PBt.transpose());
    P = linalg::symmetrize(P);
    return PosteriorState{prev.k + 1, P, entropy(P)};
}

PosteriorState posterior_update_woodbury(const PosteriorState& prev, const Compressor& A,
                                         const GaussianSignalModel& model) {
    check_conformance(model, A);
    if (linalg::condition_number_sym(prev.P) > kCondLimit)
        throw SingularityError("posterior covariance P_{k-1} is numerically singular");
    const Matrix Nk = effective_noise_cov(model, A);
    if (linalg::condition_number_sym(Nk) > kCondLimit)
        throw SingularityError("effective noise covariance N_k is numerically singular");

    const Matrix B = A.as_matrix() * model.H();
    const int n = model.N();
    const Matrix Pinv = prev.P.llt().solve(Matrix::Identity(n, n));
    const Matrix info = linalg::symmetrize(Pinv + B.transpose() * Nk.llt().solve(B));
    Matrix P = info.llt().solve(Matrix::Identity(n, n));
    P = linalg::symmetrize(P);
    return PosteriorState{prev.k + 1, P, entropy(P)};
}

double entropy(const Matrix& P) {
    const double n = static_cast<double>(P.rows());
    return 0.5 * linalg::logdet_pd(P) + 0.5 * n * std::log(2.0 * std::numbers::pi * std::numbers::e);
}

double per_stage_gain(const PosteriorState& prev, const Compressor& A,
                      const GaussianSignalModel& model) {
    return prev.entropy - posterior_update(prev, A, model).entropy;
}

PolicyTrace evaluate_policy(const GaussianSignalModel& model,
                            const std::vector<Compressor>& choices) {
    if (static_cast<int>(choices.size()) != model.horizon())
        throw ArityError("policy supplies " + std::to_string(choices.size()) +
                         " choices for horizon m = " + std::to_string(model.horizon()));
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

std::vector<Vector> simulate_measurements(const GaussianSignalModel& model,
                                          const std::vector<Compressor>& choices,
                                          std::uint64_t seed) {
    for (const Compressor& A : choices) check_conformance(model, A);

    linalg::GaussianSampler g(seed);
    const Matrix P0root = linalg::psd_sqrt(model.P0());
    const Matrix Rnnroot = linalg::psd_sqrt(model.Rnn());
    const Matrix Rwwroot = linalg::psd_sqrt(model.Rww());

    const Vector x = model.mu() + P0root * g.standard_vector(model.N());
    const Vector Hx = model.H() * x;

    std::vector<Vector> ys;
    ys.reserve(choices.size());
    for (const Compressor& A : choices) {
        const Vector n_k = Rnnroot * g.standard_vector(model.K());
        const Vector w_k = Rwwroot * g.standard_vector(model.L());
        ys.push_back(A.as_matrix() * (Hx + n_k) + w_k);
    }
    return ys;
}

} // namespace adacomp
