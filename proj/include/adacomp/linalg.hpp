#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace adacomp::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigendecomposition of a symmetric matrix. Eigenvalues are sorted
/// descending (stable, so equal values keep their relative order) and each
/// eigenvector's sign is fixed so its largest-magnitude component is
/// positive. values[i] belongs to V.col(i).
struct SymmetricEigen {
    Matrix V;
    Vector values;
};

/// Cyclic Jacobi rotations. Converges when the largest off-diagonal entry
/// drops below 1e-12 times the Frobenius norm; at most 100 sweeps.
SymmetricEigen eig_sym(const Matrix& S);

bool is_symmetric(const Matrix& M, double tol);

/// (M + M^T) / 2
Matrix symmetrize(const Matrix& M);

/// log(det(P)) for symmetric positive definite P. Throws DomainError
/// otherwise.
double logdet_pd(const Matrix& P);

/// Largest over smallest eigenvalue magnitude of a symmetric matrix.
/// Returns +inf when the smallest magnitude is zero.
double condition_number_sym(const Matrix& S);

/// Symmetric square root of a positive semidefinite matrix; eigenvalues
/// within roundoff below zero are clamped to zero.
Matrix psd_sqrt(const Matrix& S);

/// Deterministic random orthonormal matrix (Gram-Schmidt on a seeded
/// Gaussian matrix).
Matrix random_orthonormal(int n, std::uint64_t seed);

/// Standard normal deviates via Box-Muller on top of mt19937_64. The
/// mt19937_64 stream is pinned by the C++ standard, so the same seed gives
/// the same draws on every platform; <random> distributions do not make
/// that guarantee.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double operator()();

    /// n-vector of i.i.d. standard normals.
    Vector standard_vector(int n);

private:
    std::mt19937_64 rng_;
};

} // namespace adacomp::linalg
