#pragma once

#include <span>
#include <vector>

#include "colk/kernel.hpp"

namespace colk {

/// One draw of the paired regression stream: (x, y) and an independent
/// (x', y') from the same distribution.
struct RegressionSample {
    Eigen::VectorXd x;
    double y = 0.0;
    Eigen::VectorXd x_prime;
    double y_prime = 0.0;
};

/// A stochastic-gradient contribution: coefficient * kappa(point, .).
struct GradientAtom {
    Eigen::VectorXd point;
    double coeff = 0.0;
};
using GradientAtoms = std::vector<GradientAtom>;

/// Nested-expectation objective E_theta[ ell_theta( E_xi[ h_xi(f(xi)) ] ) ]
/// presented to the learner through per-sample inner-map values and
/// quasi-gradient atoms. Implementations must be stateless.
class CompositionalProblem {
public:
    virtual ~CompositionalProblem() = default;

    /// Output dimension m of the inner map.
    virtual Eigen::Index inner_dim() const = 0;

    /// h_xi(f(xi)) at the current iterate.
    virtual Eigen::VectorXd inner_h(const KernelExpansion& f, const RegressionSample& s) const = 0;

    /// Same map evaluated at the previous iterate (for the momentum tracker).
    virtual Eigen::VectorXd inner_h_at(const KernelExpansion& f_prev,
                                       const RegressionSample& s) const = 0;

    /// Atoms of the stochastic quasi-gradient given the tracker value g.
    virtual GradientAtoms gradient_atoms(const KernelExpansion& f, const RegressionSample& s,
                                         const Eigen::VectorXd& g) const = 0;

    /// Instantaneous objective surrogate, for monitoring only.
    virtual double loss_estimate(const KernelExpansion& f, const RegressionSample& s,
                                 const Eigen::VectorXd& g) const = 0;
};

double square_loss(const KernelExpansion& f, const Eigen::VectorXd& x, double y);

/// Risk-sensitive regression: square loss plus eta * sum_{p=2}^P of the p-th
/// central moments of the loss, the tracker following the expected loss at
/// the independent sample. m = 1; eta = 0 degenerates to least squares.
class MomentRegression : public CompositionalProblem {
public:
    MomentRegression(double eta, int moment_p);

    Eigen::Index inner_dim() const override { return 1; }
    Eigen::VectorXd inner_h(const KernelExpansion& f, const RegressionSample& s) const override;
    Eigen::VectorXd inner_h_at(const KernelExpansion& f_prev,
                               const RegressionSample& s) const override;
    GradientAtoms gradient_atoms(const KernelExpansion& f, const RegressionSample& s,
                                 const Eigen::VectorXd& g) const override;
    double loss_estimate(const KernelExpansion& f, const RegressionSample& s,
                         const Eigen::VectorXd& g) const override;

    double eta() const { return eta_; }
    int moment_p() const { return moment_p_; }

private:
    double eta_;
    int moment_p_;
};

/// Coefficients of the two gradient atoms for the moment-regression update:
/// first applies at x, second at x'. fx, fxp are f(x), f(x').
std::pair<double, double> moment_atom_coeffs(double fx, double y, double fxp, double y_prime,
                                             double g, double eta, int moment_p);

/// Empirical plug-in of the dispersion: sum_{p=2}^P (1/n) sum_i (l_i - mean)^p.
double moment_dispersion_estimate(std::span<const double> losses, int moment_p);

/// Smooth convex surrogate of max(z, 0): tau * log(1 + exp(z / tau)).
double smoothed_semivariance_pos(double z, double tau);

}  // namespace colk
