#include "adacomp/waterfill.hpp"

#include "adacomp/errors.hpp"

#include <cmath>
#include <string>

namespace adacomp::waterfill {

Vector effective_eigenvalues(const Vector& lambdas, int m, double sigma2) {
    if (m < 1) throw DomainError("effective_eigenvalues: horizon m must be >= 1");
    if (sigma2 <= 0.0) throw DomainError("effective_eigenvalues: sigma^2 must be positive");
    if (lambdas.size() == 0) throw DegenerateError("effective_eigenvalues: empty spectrum");

    const double lmax = lambdas.maxCoeff();
    if (lmax <= 0.0)
        throw DegenerateError("effective_eigenvalues: all eigenvalues are zero");
    for (int i = 0; i + 1 < lambdas.size(); ++i)
        if (lambdas[i + 1] > lambdas[i] + 1e-12 * lmax)
            throw DomainError("effective_eigenvalues: eigenvalues must be nonincreasing");
    if (lambdas.minCoeff() < -1e-12 * lmax)
        throw DomainError("effective_eigenvalues: eigenvalues must be nonnegative");

    int positive = 0;
    while (positive < lambdas.size() && lambdas[positive] > 1e-14 * lmax) ++positive;
    const int q = std::min<int>(m, positive);

    Vector out(q);
    for (int i = 0; i < q; ++i) out[i] = static_cast<double>(m) * lambdas[i] / sigma2;
    return out;
}

int find_r(const Vector& Lambdas) {
    const int q = static_cast<int>(Lambdas.size());
    if (q == 0) throw DomainError("find_r: empty spectrum");
    for (int i = 0; i < q; ++i)
        if (Lambdas[i] <= 0.0) throw DomainError("find_r: eigenvalues must be strictly positive");

    int r = 0;
    double inv_sum = 0.0;
    bool prefix_ended = false;
    for (int k = 1; k <= q; ++k) {
        inv_sum += 1.0 / Lambdas[k - 1];
        const bool holds = 1.0 / Lambdas[k - 1] < (1.0 + inv_sum) / static_cast<double>(k);
        if (holds && prefix_ended)
            throw DomainError("find_r: dichotomy violated (input not nonincreasing?)");
        if (holds)
            r = k;
        else
            prefix_ended = true;
    }
    if (r == 0) throw DomainError("find_r: no valid split index (k = 1 must always qualify)");
    return r;
}

double water_level(const Vector& Lambdas, int r) {
    if (r < 1 || r > Lambdas.size()) throw DomainError("water_level: r out of range");
    double inv_sum = 0.0;
    for (int i = 0; i < r; ++i) inv_sum += 1.0 / Lambdas[i];
    return (1.0 + inv_sum) / static_cast<double>(r);
}

Vector allocations(const Vector& Lambdas, double mu) {
    Vector p(Lambdas.size());
    for (int i = 0; i < Lambdas.size(); ++i) p[i] = std::max(mu - 1.0 / Lambdas[i], 0.0);
    return p;
}

double relaxed_optimal_value(const Vector& Lambdas) {
    const int r = find_r(Lambdas);
    const double mu = water_level(Lambdas, r);
    // Each active factor 1 + Lambda_i p_i collapses to Lambda_i mu.
    double acc = 0.0;
    for (int i = 0; i < r; ++i) acc += std::log(Lambdas[i] * mu);
    return 0.5 * acc;
}

WaterFillSolution solve(const Vector& lambdas, int m, double sigma2) {
    WaterFillSolution s;
    s.Lambdas = effective_eigenvalues(lambdas, m, sigma2);
    s.q = static_cast<int>(s.Lambdas.size());
    s.m = m;
    s.r = find_r(s.Lambdas);
    s.mu = water_level(s.Lambdas, s.r);
    s.p = allocations(s.Lambdas, s.mu);
    s.H_R = relaxed_optimal_value(s.Lambdas);
    return s;
}

namespace {

void require_orthonormal(const Matrix& U, const std::string& name) {
    if (U.rows() != U.cols()) throw DomainError(name + " must be square");
    const Matrix G = U.transpose() * U;
    if ((G - Matrix::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw DomainError(name + " is not orthonormal within 1e-10");
}

} // namespace

Matrix construct_gtilde(const WaterFillSolution& solution, const Vector& lambdas_full,
                        const Matrix& U1, const std::optional<Matrix>& U2) {
    const int K = static_cast<int>(lambdas_full.size());
    const int m = solution.m;
    const int r = solution.r;
    if (K < r) throw DomainError("construct_gtilde: full spectrum shorter than r");
    if (U1.rows() != m || U1.cols() != m)
        throw DomainError("construct_gtilde: U1 must be m x m");
    require_orthonormal(U1, "U1");

    const double lmax = lambdas_full[0];
    int positive = 0;
    while (positive < K && lambdas_full[positive] > 1e-14 * std::max(lmax, 1e-300)) ++positive;

    Matrix G0 = Matrix::Zero(K, m);
    for (int i = 0; i < r; ++i) G0(i, i) = std::sqrt(solution.p[i]);

    const double tol = 1e-10 * std::max(lmax, 1e-300);
    const bool gap_at_r = (r == K) || (lambdas_full[r - 1] - lambdas_full[r] > tol);
    if (gap_at_r || r == positive) {
        // Case 1: spectral gap below the active set (or the active set is
        // the whole positive spectrum).
        return G0 * U1;
    }

    // Case 2: the eigenvalue at r continues past it; only possible with
    // r = q = m < N.
    if (!(r == solution.q && r == m && r < positive))
        throw CaseSelectionError(
            "eigenvalue tie at the active boundary but r = q = m < N does not hold");

    int first = r; // 1-based first index of the tied group
    while (first > 1 && lambdas_full[first - 2] - lambdas_full[r - 1] <= tol) --first;
    int last = r; // 1-based last index of the tied group
    while (last < positive && lambdas_full[r - 1] - lambdas_full[last] <= tol) ++last;
    const int alpha = r - first + 1;
    const int beta = last - r;

    Matrix rot = U2.value_or(Matrix::Identity(alpha + beta, alpha + beta));
    if (rot.rows() != alpha + beta)
        throw DomainError("construct_gtilde: U2 must be (alpha+beta) x (alpha+beta) = " +
                          std::to_string(alpha + beta) + " square");
    require_orthonormal(rot, "U2");

    Matrix block = Matrix::Identity(K, K);
    block.block(first - 1, first - 1, alpha + beta, alpha + beta) = rot;
    return block * G0 * U1;
}

double gtilde_objective(const Matrix& Gtilde, const Vector& lambdas_full, int m, double sigma2) {
    if (Gtilde.rows() != lambdas_full.size())
        throw DomainError("gtilde_objective: G~ row count must match the spectrum length");
    Vector Lam(lambdas_full.size());
    for (int i = 0; i < Lam.size(); ++i)
        Lam[i] = static_cast<double>(m) * lambdas_full[i] / sigma2;
    const Matrix inner = Matrix::Identity(Gtilde.cols(), Gtilde.cols()) +
                         Gtilde.transpose() * Lam.asDiagonal() * Gtilde;
    return 0.5 * linalg::logdet_pd(linalg::symmetrize(inner));
}

std::vector<Vector> recover_compressors(const Matrix& Gtilde, const Matrix& V, int m,
                                        double sigma_n2, double sigma_w2) {
    if (sigma_w2 <= 0.0) throw DomainError("recover_compressors: sigma_w^2 must be positive");
    if (sigma_n2 < 0.0) throw DomainError("recover_compressors: sigma_n^2 must be nonnegative");
    if (V.rows() != Gtilde.rows() || V.cols() != Gtilde.rows())
        throw DomainError("recover_compressors: V must be K x K with K = rows(G~)");
    if (m < 1) throw DomainError("recover_compressors: m must be >= 1");

    const double sigma = std::sqrt(sigma_n2 + sigma_w2);
    const Matrix C = V * (std::sqrt(static_cast<double>(m)) / sigma) * Gtilde;

    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(C.cols()));
    for (int k = 0; k < C.cols(); ++k) {
        const Vector c = C.col(k);
        const double nc2 = c.squaredNorm();
        if (nc2 == 0.0) {
            out.push_back(Vector::Zero(C.rows()));
            continue;
        }
        const double denom = 1.0 - nc2 * sigma_n2;
        if (denom <= 0.0)
            throw InfeasibleRecoveryError(
                "column " + std::to_string(k + 1) +
                ": |c|^2 sigma_n^2 >= 1, no finite compressor reproduces it");
        out.push_back(c * std::sqrt(sigma_w2 / denom));
    }
    return out;
}

} // namespace adacomp::waterfill
