#include "adacomp/linalg.hpp"

#include "adacomp/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace adacomp;
using test_support::random_spd;

TEST_CASE("jacobi eigendecomposition reconstructs the matrix") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const Matrix S = random_spd(n, rng);
        const auto e = linalg::eig_sym(S);

        CHECK((e.V * e.values.asDiagonal() * e.V.transpose() - S).norm() <= 1e-10 * S.norm());
        CHECK((e.V.transpose() * e.V - Matrix::Identity(n, n)).norm() < 1e-10);
        for (int i = 0; i + 1 < n; ++i) CHECK(e.values[i] >= e.values[i + 1]);
    }
}

TEST_CASE("jacobi agrees with Eigen's solver on the spectrum") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Matrix S = test_support::random_matrix(n, n, rng) +
                         test_support::random_matrix(n, n, rng).transpose();
        const Matrix Sym = linalg::symmetrize(S);
        const auto ours = linalg::eig_sym(Sym);
        Eigen::SelfAdjointEigenSolver<Matrix> ref(Sym);
        for (int i = 0; i < n; ++i)
            CHECK(ours.values[i] ==
                  doctest::Approx(ref.eigenvalues()[n - 1 - i]).epsilon(1e-10));
    }
}

TEST_CASE("diagonal input keeps the standard basis") {
    Matrix D = Matrix::Zero(3, 3);
    D.diagonal() << 4.0, 4.0, 4.0;
    const auto e = linalg::eig_sym(D);
    CHECK((e.V - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("sign convention makes the largest component positive") {
    std::mt19937_64 rng(3);
    const Matrix S = random_spd(4, rng);
    const auto e = linalg::eig_sym(S);
    for (int j = 0; j < 4; ++j) {
        Eigen::Index imax = 0;
        e.V.col(j).cwiseAbs().maxCoeff(&imax);
        CHECK(e.V(imax, j) > 0.0);
    }
}

TEST_CASE("logdet_pd matches the eigenvalue-product oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const Matrix S = random_spd(n, rng);
        Eigen::SelfAdjointEigenSolver<Matrix> ref(S);
        double expected = 0.0;
        for (int i = 0; i < n; ++i) expected += std::log(ref.eigenvalues()[i]);
        CHECK(linalg::logdet_pd(S) == doctest::Approx(expected).epsilon(1e-11));
    }
    CHECK_THROWS_AS(linalg::logdet_pd(-Matrix::Identity(2, 2)), DomainError);
}

TEST_CASE("psd_sqrt squares back") {
    std::mt19937_64 rng(17);
    const Matrix S = test_support::random_psd(4, rng);
    const Matrix R = linalg::psd_sqrt(S);
    CHECK((R * R - S).norm() <= 1e-10 * std::max(1.0, S.norm()));
    CHECK(linalg::psd_sqrt(Matrix::Zero(3, 3)).norm() == 0.0);
}

TEST_CASE("random_orthonormal is orthonormal and seed-stable") {
    const Matrix Q1 = linalg::random_orthonormal(5, 42);
    const Matrix Q2 = linalg::random_orthonormal(5, 42);
    const Matrix Q3 = linalg::random_orthonormal(5, 43);
    CHECK((Q1 - Q2).norm() == 0.0);
    CHECK((Q1 - Q3).norm() > 1e-3);
    CHECK((Q1.transpose() * Q1 - Matrix::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("gaussian sampler moments") {
    linalg::GaussianSampler g(123);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = g();
        sum += x;
        sum2 += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));

    linalg::GaussianSampler g1(9), g2(9);
    for (int i = 0; i < 100; ++i) CHECK(g1() == g2());
}
