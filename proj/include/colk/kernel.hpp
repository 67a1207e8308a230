#pragma once

#include <Eigen/Core>
#include <string>
#include <variant>

namespace colk {

struct GaussianKernel {
    double bandwidth;  // c > 0, kappa(u,v) = exp(-|u-v|^2 / (2 c^2))
    bool operator==(const GaussianKernel&) const = default;
};

struct PolynomialKernel {
    double offset;  // b, kappa(u,v) = (u'v + b)^degree
    int degree;     // >= 1
    bool operator==(const PolynomialKernel&) const = default;
};

/// Positive-definite kernel on R^p. Value type, cheap to copy.
class Kernel {
public:
    static Kernel gaussian(double bandwidth);
    static Kernel polynomial(double offset, int degree);

    double operator()(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

    /// kappa(u, u) without forming the difference (1 for the Gaussian case).
    double self(const Eigen::VectorXd& u) const;

    bool is_gaussian() const { return std::holds_alternative<GaussianKernel>(k_); }
    const GaussianKernel* as_gaussian() const { return std::get_if<GaussianKernel>(&k_); }
    const PolynomialKernel* as_polynomial() const { return std::get_if<PolynomialKernel>(&k_); }
    std::string name() const;

    bool operator==(const Kernel&) const = default;

private:
    explicit Kernel(std::variant<GaussianKernel, PolynomialKernel> k) : k_(std::move(k)) {}
    std::variant<GaussianKernel, PolynomialKernel> k_;
};

/// Dictionaries are p x M matrices whose columns are model points.
using Dictionary = Eigen::MatrixXd;

/// K(i,j) = kappa(d1_i, d2_j). Exactly symmetric when both arguments alias
/// the same dictionary.
Eigen::MatrixXd kernel_matrix(const Kernel& k, const Dictionary& d1, const Dictionary& d2);

/// Empirical kernel map kappa_D(u) = [kappa(d_1,u), ..., kappa(d_M,u)].
Eigen::VectorXd kernel_map(const Kernel& k, const Dictionary& dict, const Eigen::VectorXd& u);

/// RKHS function f = sum_n w_n kappa(d_n, .). Immutable after construction;
/// an empty dictionary is the zero function.
class KernelExpansion {
public:
    KernelExpansion(Kernel kernel, Eigen::Index dim);  // zero function on R^dim
    KernelExpansion(Kernel kernel, Dictionary dict, Eigen::VectorXd weights);

    double operator()(const Eigen::VectorXd& u) const;

    /// Evaluate at every column of `points`.
    Eigen::VectorXd evaluate_columns(const Eigen::MatrixXd& points) const;

    Eigen::Index order() const { return dict_.cols(); }
    Eigen::Index dim() const { return dict_.rows(); }
    bool empty() const { return dict_.cols() == 0; }

    const Kernel& kernel() const { return kernel_; }
    const Dictionary& dict() const { return dict_; }
    const Eigen::VectorXd& weights() const { return weights_; }

private:
    Kernel kernel_;
    Dictionary dict_;
    Eigen::VectorXd weights_;
};

/// <f, g>_H = w_f' K_{Df,Dg} w_g. Requires matching kernels and dimensions.
double hilbert_inner(const KernelExpansion& f, const KernelExpansion& g);

double hilbert_norm(const KernelExpansion& f);

/// ||f - g||_H over the concatenated dictionary with weights (w_f, -w_g).
double diff_norm(const KernelExpansion& f, const KernelExpansion& g);

/// Residual norm of the least-squares projection of kappa(xi, .) onto
/// span{kappa(d_n, .)}. Empty dictionaries give sqrt(kappa(xi,xi)).
double subspace_distance(const Kernel& k, const Dictionary& dict, const Eigen::VectorXd& xi);

}  // namespace colk
