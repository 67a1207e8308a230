#pragma once

#include "colk/learner.hpp"

namespace colk {

/// Non-compositional functional SGD with KOMP pruning (square loss only):
/// ftilde = (1 - alpha lambda) f - alpha 2 (f(x) - y) kappa(x, .), then
/// komp_prune(ftilde, eps). The tracker and (x', y') are unused.
IterateResult polk_iterate(const KernelExpansion& f, const RegressionSample& sample,
                           const LearnerConfig& cfg);

/// Plain-averaging tracker g_{t+1} = (1 - beta) g_t + beta h_cur; the
/// two-time-scale ablation swappable into the learner via
/// TrackerKind::plain_average.
Eigen::VectorXd scgd_tracker_update(const Eigen::VectorXd& g, const Eigen::VectorXd& h_cur,
                                    double beta);

/// Budgeted functional SGD: square-loss append, then while the model order
/// exceeds max_order drop the atom with the smallest Hilbert-norm
/// contribution |w_j| sqrt(kappa(d_j,d_j)), without refitting.
KernelExpansion budgeted_sgd_iterate(const KernelExpansion& f, const RegressionSample& sample,
                                     const LearnerConfig& cfg, Eigen::Index max_order);

/// Fixed radial-basis network phi_i(x) = exp(-(x - c_i)^2 / r^2) with
/// uniformly spaced centers. Only scalar features are supported.
struct RbfNetwork {
    Eigen::MatrixXd centers;  // p x N_c
    double bandwidth = 0.06;
    Eigen::VectorXd weights;

    static RbfNetwork uniform(double lo, double hi, Eigen::Index n_centers, double bandwidth);

    Eigen::VectorXd features(const Eigen::VectorXd& x) const;
    double operator()(const Eigen::VectorXd& x) const { return weights.dot(features(x)); }
};

struct RbfTracker {
    double g = 0.0;
    Eigen::VectorXd prev_weights;
};

/// SGD step on the moment-regression surrogate in the fixed basis, using the
/// same atom coefficients as MomentRegression. Updates the tracker in place.
RbfNetwork rbf_sgd_iterate(const RbfNetwork& net, const RegressionSample& sample,
                           const LearnerConfig& cfg, RbfTracker& tracker);

}  // namespace colk
