#include "adacomp/linalg.hpp"

#include "adacomp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace adacomp::linalg {

namespace {

double max_offdiag(const Matrix& W) {
    double m = 0.0;
    for (Eigen::Index p = 0; p < W.rows(); ++p)
        for (Eigen::Index q = p + 1; q < W.cols(); ++q)
            m = std::max(m, std::abs(W(p, q)));
    return m;
}

} // namespace

SymmetricEigen eig_sym(const Matrix& S) {
    if (S.rows() != S.cols())
        throw DomainError("eig_sym: matrix is not square");
    const Eigen::Index n = S.rows();

    Matrix W = symmetrize(S);
    Matrix V = Matrix::Identity(n, n);

    const double fro = W.norm();
    const double thresh = 1e-12 * fro;

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    if (n > 1 && fro > 0.0) {
        for (; sweep < kMaxSweeps; ++sweep) {
            if (max_offdiag(W) < thresh) break;
            for (Eigen::Index p = 0; p < n - 1; ++p) {
                for (Eigen::Index q = p + 1; q < n; ++q) {
                    const double apq = W(p, q);
                    if (std::abs(apq) < thresh / (double)(n * n)) continue;
                    const double theta = (W(q, q) - W(p, p)) / (2.0 * apq);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    // W <- J^T W J with the (p,q) Givens rotation J.
                    for (Eigen::Index i = 0; i < n; ++i) {
                        const double wip = W(i, p), wiq = W(i, q);
                        W(i, p) = c * wip - s * wiq;
                        W(i, q) = s * wip + c * wiq;
                    }
                    for (Eigen::Index i = 0; i < n; ++i) {
                        const double wpi = W(p, i), wqi = W(q, i);
                        W(p, i) = c * wpi - s * wqi;
                        W(q, i) = s * wpi + c * wqi;
                    }
                    for (Eigen::Index i = 0; i < n; ++i) {
                        const double vip = V(i, p), viq = V(i, q);
                        V(i, p) = c * vip - s * viq;
                        V(i, q) = s * vip + c * viq;
                    }
                }
            }
        }
        if (sweep == kMaxSweeps && max_offdiag(W) >= thresh)
            throw ConvergenceError("eig_sym: Jacobi sweeps did not converge");
    }

    // Stable descending sort keeps equal eigenvalues in rotation order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return W(a, a) > W(b, b); });

    SymmetricEigen out;
    out.V.resize(n, n);
    out.values.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values[j] = W(order[(std::size_t)j], order[(std::size_t)j]);
        out.V.col(j) = V.col(order[(std::size_t)j]);
        // Sign convention: the largest-magnitude component is positive.
        Eigen::Index imax = 0;
        out.V.col(j).cwiseAbs().maxCoeff(&imax);
        if (out.V(imax, j) < 0.0) out.V.col(j) = -out.V.col(j);
    }
    return out;
}

bool is_symmetric(const Matrix& M, double tol) {
    if (M.rows() != M.cols()) return false;
    return (M - M.transpose()).cwiseAbs().maxCoeff() <= tol;
}

Matrix symmetrize(const Matrix& M) { return 0.5 * (M + M.transpose()); }

double logdet_pd(const Matrix& P) {
    const SymmetricEigen e = eig_sym(P);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        if (e.values[i] <= 0.0)
            throw DomainError("logdet_pd: matrix is not positive definite");
        acc += std::log(e.values[i]);
    }
    return acc;
}

double condition_number_sym(const Matrix& S) {
    const SymmetricEigen e = eig_sym(S);
    const double amax = e.values.cwiseAbs().maxCoeff();
    const double amin = e.values.cwiseAbs().minCoeff();
    if (amin == 0.0) return std::numeric_limits<double>::infinity();
    return amax / amin;
}

Matrix psd_sqrt(const Matrix& S) {
    const SymmetricEigen e = eig_sym(S);
    const double lmax = e.values.size() ? std::max(0.0, e.values.maxCoeff()) : 0.0;
    Vector root = e.values;
    for (Eigen::Index i = 0; i < root.size(); ++i) {
        if (root[i] < -1e-10 * std::max(lmax, 1.0))
            throw DomainError("psd_sqrt: matrix has a significantly negative eigenvalue");
        root[i] = std::sqrt(std::max(0.0, root[i]));
    }
    return e.V * root.asDiagonal() * e.V.transpose();
}

Matrix random_orthonormal(int n, std::uint64_t seed) {
    GaussianSampler g(seed);
    Matrix A(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) A(i, j) = g();
    // Modified Gram-Schmidt; restart a column on rank loss (measure zero).
    Matrix Q(n, n);
    for (int j = 0; j < n; ++j) {
        Vector v = A.col(j);
        for (int k = 0; k < j; ++k) v -= Q.col(k).dot(v) * Q.col(k);
        double nv = v.norm();
        while (nv < 1e-8) {
            for (int i = 0; i < n; ++i) v[i] = g();
            for (int k = 0; k < j; ++k) v -= Q.col(k).dot(v) * Q.col(k);
            nv = v.norm();
        }
        Q.col(j) = v / nv;
    }
    return Q;
}

double GaussianSampler::operator()() {
    // Box-Muller; uniforms built from the top 53 bits so the stream is
    // reproducible for a fixed seed.
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53; // in (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53; // in [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector GaussianSampler::standard_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = (*this)();
    return v;
}

} // namespace adacomp::linalg
