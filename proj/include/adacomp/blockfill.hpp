#pragma once

#include "adacomp/waterfill.hpp"

#include <vector>

namespace adacomp::blockfill {

using linalg::Vector;

/// Integer allocation of m blocks of size 1/m to channels. Counts are the
/// authoritative representation; gamma, heights and gain derive from them.
struct BlockAllocation {
    int m = 0;
    std::vector<long long> counts; // blocks per channel, sums to m
    Vector gamma;                  // counts[i] / m
    Vector heights;                // 1/Lambda_i + gamma_i
    double gain = 0.0;             // 0.5 log prod (1 + Lambda_i gamma_i), nats
};

/// Builds the derived fields for a given count vector (validates the sum).
BlockAllocation make_allocation(const Vector& Lambdas, int m,
                                const std::vector<long long>& counts);

/// Adds blocks one at a time to the lowest channel (ties to the smallest
/// index). Matches the scalar greedy policy through the height
/// correspondence h_i = (sigma^2/m) / lambda_i^(k).
BlockAllocation greedy_blockfill(const Vector& Lambdas, int m);

/// The re-allocation construction: fill every channel to the water level
/// (auxiliary allocation theta'), then give the m' leftover blocks to the
/// m' lowest channels, one each. Maximizes the block-filling gain over all
/// integer allocations.
BlockAllocation optimal_blockfill(const Vector& Lambdas, int m);

/// True iff every filled channel's final height lies strictly inside
/// (mu - 1/m, mu + 1/m) and channels beyond r are empty.
bool lemma6_certificate(const BlockAllocation& alloc, const Vector& Lambdas, int m);

enum class Theorem { T4, T5 };

struct TheoremConditionReport {
    Theorem theorem = Theorem::T4;
    bool holds = false;
    int r = 0;

    // T4 detail
    std::vector<int> S; // 1-based eigenvector indices

    // T5 detail
    std::vector<double> n_raw;    // sigma^2 (1/lambda_{k+1} - 1/lambda_k)
    std::vector<long long> n_int; // rounded n_k
    long long m_hat = 0;          // sum k n_k
    bool integral = false;
    bool enough_blocks = false;
    bool divisible = false;
};

/// Greedy is optimal over the prescribed eigenvector set S when S contains
/// the first r eigenvectors.
TheoremConditionReport check_theorem4(const std::vector<int>& S, const Vector& Lambdas, int m);

/// Flat-top condition: consecutive inverse eigenvalues differ by integer
/// multiples of 1/sigma^2 and r divides the leftover block count.
TheoremConditionReport check_theorem5(const Vector& lambdas, double sigma2, int m);

} // namespace adacomp::blockfill
