#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "ellcheck/tridiag.hpp"

using namespace ellcheck;

namespace {

// Diagonally dominant M-matrix with random couplings.
Tridiag<double> random_mmatrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.1, 1.0);
    Tridiag<double> K(n);
    for (int i = 0; i < n; ++i) {
        K.lower(i) = -U(rng);
        K.upper(i) = -U(rng);
        K.excess(i) = 0.01 * U(rng);
        K.diag(i) = K.excess(i) - K.lower(i) - K.upper(i);
    }
    return K;
}

Eigen::MatrixXd dense(const Tridiag<double>& K) {
    const int n = static_cast<int>(K.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = K.diag(i);
        if (i > 0) A(i, i - 1) = K.lower(i);
        if (i + 1 < n) A(i, i + 1) = K.upper(i);
    }
    return A;
}

}  // namespace

TEST_SUITE("tridiag") {
    TEST_CASE("solve matches a dense LU") {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const auto K = random_mmatrix(50, seed);
            const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(50, -1.0, 2.0);
            const Eigen::VectorXd x = solve_excess(K, b);
            const Eigen::VectorXd ref = dense(K).partialPivLu().solve(b);
            CHECK((x - ref).norm() <= 1e-10 * ref.norm());
        }
    }

    TEST_CASE("shifted solve with weights") {
        const auto K = random_mmatrix(40, 7);
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(40, 0.5);
        const Eigen::VectorXd b = Eigen::VectorXd::Ones(40);
        const Eigen::VectorXd x = solve_excess(K, b, -0.3, &w);
        Eigen::MatrixXd A = dense(K);
        A.diagonal() += 0.3 * w;
        CHECK((A * x - b).norm() <= 1e-11);
    }

    TEST_CASE("both products agree") {
        const auto K = random_mmatrix(30, 11);
        const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(30, 0.0, 1.0).array().sin();
        CHECK((K.apply(x) - K.apply_differences(x)).norm() <= 1e-13);
        CHECK((K.apply(x) - dense(K) * x).norm() <= 1e-13);
    }

    TEST_CASE("transpose is the dense transpose") {
        const auto K = random_mmatrix(25, 5);
        const auto T = K.transpose();
        CHECK((dense(T) - dense(K).transpose()).norm() == 0.0);
        for (int i = 0; i < 25; ++i) CHECK(T.excess(i) == doctest::Approx(T.diag(i) + T.lower(i) + T.upper(i)));
    }

    TEST_CASE("singular system raises resonance") {
        // -u'' stencil with zero excess everywhere but a shift equal to its smallest eigenvalue
        const int n = 8;
        Tridiag<double> K(n);
        for (int i = 0; i < n; ++i) {
            K.lower(i) = i > 0 ? -1.0 : 0.0;
            K.upper(i) = i < n - 1 ? -1.0 : 0.0;
            K.diag(i) = 2.0;
            K.excess(i) = K.diag(i) + K.lower(i) + K.upper(i);
        }
        const double mu = 2.0 - 2.0 * std::cos(std::numbers::pi / (n + 1));
        const Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
        CHECK_THROWS_AS(solve_excess(K, Eigen::VectorXd::Ones(n).eval(), mu, &w, 1e-10), ResonanceError);
    }
}
