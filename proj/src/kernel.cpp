#include "colk/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "colk/solve.hpp"

namespace colk {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

double ipow(double base, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

}  // namespace

Kernel Kernel::gaussian(double bandwidth) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("Gaussian kernel: bandwidth must be > 0");
    return Kernel{GaussianKernel{bandwidth}};
}

Kernel Kernel::polynomial(double offset, int degree) {
    if (degree < 1) throw std::invalid_argument("polynomial kernel: degree must be >= 1");
    return Kernel{PolynomialKernel{offset, degree}};
}

double Kernel::operator()(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    require_same_dim(u.size(), v.size(), "eval_kernel");
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, GaussianKernel>) {
                return std::exp(-(u - v).squaredNorm() / (2.0 * k.bandwidth * k.bandwidth));
            } else {
                return ipow(u.dot(v) + k.offset, k.degree);
            }
        },
        k_);
}

double Kernel::self(const Eigen::VectorXd& u) const {
    if (is_gaussian()) return 1.0;
    const auto& k = std::get<PolynomialKernel>(k_);
    return ipow(u.squaredNorm() + k.offset, k.degree);
}

std::string Kernel::name() const {
    return is_gaussian() ? "gaussian" : "polynomial";
}

Eigen::MatrixXd kernel_matrix(const Kernel& k, const Dictionary& d1, const Dictionary& d2) {
    require_same_dim(d1.rows(), d2.rows(), "kernel_matrix");
    const bool same = &d1 == &d2;
    Eigen::MatrixXd out(d1.cols(), d2.cols());
    for (Eigen::Index i = 0; i < d1.cols(); ++i) {
        const Eigen::Index j0 = same ? i : 0;
        for (Eigen::Index j = j0; j < d2.cols(); ++j) {
            out(i, j) = k(d1.col(i), d2.col(j));
            if (same && j != i) out(j, i) = out(i, j);
        }
    }
    return out;
}

Eigen::VectorXd kernel_map(const Kernel& k, const Dictionary& dict, const Eigen::VectorXd& u) {
    require_same_dim(dict.rows(), u.size(), "kernel_map");
    Eigen::VectorXd out(dict.cols());
    for (Eigen::Index i = 0; i < dict.cols(); ++i) out[i] = k(dict.col(i), u);
    return out;
}

KernelExpansion::KernelExpansion(Kernel kernel, Eigen::Index dim)
    : kernel_(std::move(kernel)), dict_(dim, 0), weights_(0) {}

KernelExpansion::KernelExpansion(Kernel kernel, Dictionary dict, Eigen::VectorXd weights)
    : kernel_(std::move(kernel)), dict_(std::move(dict)), weights_(std::move(weights)) {
    if (weights_.size() != dict_.cols()) {
        throw std::invalid_argument("KernelExpansion: weight count must equal model order");
    }
}

double KernelExpansion::operator()(const Eigen::VectorXd& u) const {
    require_same_dim(dim(), u.size(), "evaluate");
    double acc = 0.0;
    for (Eigen::Index n = 0; n < order(); ++n) acc += weights_[n] * kernel_(dict_.col(n), u);
    return acc;
}

Eigen::VectorXd KernelExpansion::evaluate_columns(const Eigen::MatrixXd& points) const {
    Eigen::VectorXd out(points.cols());
    for (Eigen::Index i = 0; i < points.cols(); ++i) {
        out[i] = (*this)(Eigen::VectorXd(points.col(i)));
    }
    return out;
}

double hilbert_inner(const KernelExpansion& f, const KernelExpansion& g) {
    if (f.kernel() != g.kernel()) {
        throw std::invalid_argument("hilbert_inner: kernel mismatch");
    }
    require_same_dim(f.dim(), g.dim(), "hilbert_inner");
    if (f.empty() || g.empty()) return 0.0;
    return f.weights().dot(kernel_matrix(f.kernel(), f.dict(), g.dict()) * g.weights());
}

double hilbert_norm(const KernelExpansion& f) {
    if (f.empty()) return 0.0;
    const Eigen::MatrixXd K = kernel_matrix(f.kernel(), f.dict(), f.dict());
    return std::sqrt(PsdQuadratic(K)(f.weights()));
}

double diff_norm(const KernelExpansion& f, const KernelExpansion& g) {
    if (f.kernel() != g.kernel()) {
        throw std::invalid_argument("diff_norm: kernel mismatch");
    }
    require_same_dim(f.dim(), g.dim(), "diff_norm");
    const Eigen::Index mf = f.order(), mg = g.order();
    if (mf + mg == 0) return 0.0;
    Dictionary cat(f.dim(), mf + mg);
    cat << f.dict(), g.dict();
    Eigen::VectorXd delta(mf + mg);
    delta << f.weights(), -g.weights();
    const Eigen::MatrixXd K = kernel_matrix(f.kernel(), cat, cat);
    return std::sqrt(PsdQuadratic(K)(delta));
}

double subspace_distance(const Kernel& k, const Dictionary& dict, const Eigen::VectorXd& xi) {
    if (dict.cols() == 0) return std::sqrt(k.self(xi));
    require_same_dim(dict.rows(), xi.size(), "subspace_distance");

    const Eigen::MatrixXd K = kernel_matrix(k, dict, dict);
    const Eigen::VectorXd kx = kernel_map(k, dict, xi);
    const Eigen::VectorXd v = psd_solve(K, kx);

    // Residual kappa(xi,.) - v' kappa_D(.) measured over the bordered
    // dictionary [D, xi] so the norm stays exact near zero.
    Dictionary bordered(dict.rows(), dict.cols() + 1);
    bordered << dict, xi;
    Eigen::VectorXd delta(dict.cols() + 1);
    delta.head(dict.cols()) = -v;
    delta[dict.cols()] = 1.0;
    const Eigen::MatrixXd Kb = kernel_matrix(k, bordered, bordered);
    return std::sqrt(PsdQuadratic(Kb)(delta));
}

}  // namespace colk
