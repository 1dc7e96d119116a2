#pragma once

#include "adacomp/linalg.hpp"

#include <optional>
#include <vector>

namespace adacomp::waterfill {

using linalg::Matrix;
using linalg::Vector;

/// Closed-form solution of the relaxed (trace-constrained) design problem.
struct WaterFillSolution {
    Vector Lambdas; // effective eigenvalues m lambda_i / sigma^2, descending, > 0
    int r = 0;      // number of active channels (1-based count)
    double mu = 0.0;
    Vector p;        // allocations, length q
    double H_R = 0.0; // relaxed optimal net gain, nats
    int q = 0;       // min(m, number of positive eigenvalues)
    int m = 0;       // horizon the solution was built for
};

/// Effective eigenvalues Lambda_i = m lambda_i / sigma^2, keeping the
/// q = min(m, #positive) leading strictly positive entries.
Vector effective_eigenvalues(const Vector& lambdas, int m, double sigma2);

/// The unique split index of the active-channel dichotomy: channels
/// k <= r satisfy 1/Lambda_k < (1/k)(1 + sum_{j<=k} 1/Lambda_j), channels
/// beyond r fail it. Verifies both inequality families.
int find_r(const Vector& Lambdas);

/// mu = (1/r)(1 + sum_{i<=r} 1/Lambda_i).
double water_level(const Vector& Lambdas, int r);

/// p_i = (mu - 1/Lambda_i)^+.
Vector allocations(const Vector& Lambdas, double mu);

/// Relaxed optimal net gain 0.5 log prod_{i<=r} (Lambda_i mu), nats.
double relaxed_optimal_value(const Vector& Lambdas);

WaterFillSolution solve(const Vector& lambdas, int m, double sigma2);

/// Optimal scaled factor G~ (K x m). Case 1 (spectral gap at r, or r equal
/// to the positive rank): G~ = G0 U1. Case 2 (eigenvalue tie straddling r;
/// requires r = q = m < N): G~ = blockDiag(I, U2, I) G0 U1. U2 defaults to
/// the identity; rotations never change the objective.
Matrix construct_gtilde(const WaterFillSolution& solution, const Vector& lambdas_full,
                        const Matrix& U1, const std::optional<Matrix>& U2 = std::nullopt);

/// The relaxed objective 0.5 log det(I_m + G~^T Lambda~ G~) of a candidate
/// factor, with Lambda~ built from the full D_0 spectrum.
double gtilde_objective(const Matrix& Gtilde, const Vector& lambdas_full, int m, double sigma2);

/// Maps the columns of G~ back to compressors a_k through
/// g_k = (sqrt(m)/sigma) g~_k, c_k = V g_k, and the inversion of
/// c = a / sqrt(|a|^2 sigma_n^2 + sigma_w^2). Columns with |c|^2
/// sigma_n^2 >= 1 have no finite preimage.
std::vector<Vector> recover_compressors(const Matrix& Gtilde, const Matrix& V, int m,
                                        double sigma_n2, double sigma_w2);

} // namespace adacomp::waterfill
