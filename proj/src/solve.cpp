#include "colk/solve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace colk {

Eigen::MatrixXd psd_solve(const Eigen::MatrixXd& K, const Eigen::MatrixXd& rhs) {
    const Eigen::Index m = K.rows();
    if (m == 0) return Eigen::MatrixXd(0, rhs.cols());

    double scale = K.trace() / static_cast<double>(m);
    if (!(scale > 0.0)) scale = 1.0;

    const double max_jitter = 1e-6 * scale;
    for (double jitter = 1e-10 * scale; jitter <= max_jitter * 1.0000001; jitter *= 10.0) {
        Eigen::MatrixXd kj = K;
        kj.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(kj);
        if (llt.info() == Eigen::Success) return llt.solve(rhs);
    }
    Eigen::MatrixXd kj = K;
    kj.diagonal().array() += max_jitter;
    return kj.colPivHouseholderQr().solve(rhs);
}

PsdQuadratic::PsdQuadratic(const Eigen::MatrixXd& K) {
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() == Eigen::Success) {
        use_chol_ = true;
        lt_ = llt.matrixL().transpose();
        return;
    }
    use_chol_ = false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double lam_max = lam.size() ? lam.maxCoeff() : 0.0;
    const double cutoff = 1e-12 * std::max(lam_max, 0.0);
    // rows sqrt(lambda_i) v_i' for the retained spectrum
    Eigen::Index kept = 0;
    vt_.resize(lam.size(), K.cols());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam[i] > cutoff) {
            vt_.row(kept++) = std::sqrt(lam[i]) * es.eigenvectors().col(i).transpose();
        }
    }
    vt_.conservativeResize(kept, K.cols());
}

double PsdQuadratic::operator()(const Eigen::VectorXd& delta) const {
    if (use_chol_) return (lt_ * delta).squaredNorm();
    return (vt_ * delta).squaredNorm();
}

}  // namespace colk
