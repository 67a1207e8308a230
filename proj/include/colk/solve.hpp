#pragma once

#include <Eigen/Core>

namespace colk {

/// Solve K x = b for symmetric positive semidefinite K. Adds diagonal jitter
/// 1e-10 * trace(K)/M before the Cholesky factorization, escalating x10 up to
/// 1e-6 * trace(K)/M, then falls back to a dense least-squares solve. Never
/// throws for PSD inputs.
Eigen::MatrixXd psd_solve(const Eigen::MatrixXd& K, const Eigen::MatrixXd& rhs);

/// Evaluates the RKHS quadratic form q(delta) = delta' K delta for a fixed
/// Gram matrix K in a factored form that cannot go negative and does not lose
/// the small-residual digits to cancellation: q = |L' delta|^2 when the plain
/// (unjittered) Cholesky succeeds, otherwise an eigendecomposition with tiny
/// eigenvalues clamped to zero.
class PsdQuadratic {
public:
    explicit PsdQuadratic(const Eigen::MatrixXd& K);

    double operator()(const Eigen::VectorXd& delta) const;

private:
    bool use_chol_;
    Eigen::MatrixXd lt_;        // L' when use_chol_
    Eigen::MatrixXd vt_;        // scaled eigenvector rows otherwise
};

}  // namespace colk
