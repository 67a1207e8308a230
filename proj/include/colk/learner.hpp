#pragma once

#include <cstdint>

#include "colk/kernel.hpp"
#include "colk/komp.hpp"
#include "colk/objectives.hpp"

namespace colk {

enum class TrackerKind {
    momentum,       // g <- (1-b)(g - h(f_prev)) + h(f_cur)
    plain_average,  // g <- (1-b) g + b h(f_cur)
};

struct LearnerConfig {
    double alpha = 0.02;   // step size
    double beta = 0.01;    // tracker rate, in (0,1)
    double lambda = 1e-6;  // Tikhonov regularizer
    double eps = 0.002;    // compression budget
    Kernel kernel = Kernel::gaussian(0.06);
    double eta = 0.1;      // dispersion weight
    int moment_p = 4;      // highest central-moment order, in {2,3,4}
    double w_max = 1e6;    // weight-norm safeguard
    std::uint64_t seed = 1;
    TrackerKind tracker = TrackerKind::momentum;

    void validate() const;  // throws config_error
};

/// Fast time-scale state: the inner-expectation estimate g and the previous
/// function iterate the momentum update needs. Starts at g = 0 with the zero
/// function.
struct TrackerState {
    Eigen::VectorXd g;
    KernelExpansion prev_f;
    bool initialized = false;

    static TrackerState initial(const Kernel& k, Eigen::Index dim, Eigen::Index m);
};

/// Per-step compression certificate: ||f_{t+1} - ftilde_{t+1}||_H and the
/// model orders around the pruning step.
struct StepCertificate {
    double projection_error = 0.0;
    Eigen::Index order_before = 0;
    Eigen::Index order_after = 0;
};

/// g_{t+1} = (1 - beta)(g_t - h_prev) + h_cur, both h evaluated at the same
/// sample. beta = 1 is allowed and returns h_cur.
Eigen::VectorXd update_tracker(const Eigen::VectorXd& g, const Eigen::VectorXd& h_prev,
                               const Eigen::VectorXd& h_cur, double beta);

/// Unprojected quasi-gradient step: scale existing weights by (1 - alpha
/// lambda) and append one dictionary column per atom with weight
/// -alpha * coeff. Atoms with an exactly zero coefficient contribute nothing
/// and are not materialized. Requires alpha * lambda < 1.
KernelExpansion quasi_gradient_step(const KernelExpansion& f, const GradientAtoms& atoms,
                                    double alpha, double lambda);

struct IterateResult {
    KernelExpansion f;
    TrackerState tracker;
    StepCertificate cert;
};

/// One COLK step: tracker update, quasi-gradient step, KOMP compression.
IterateResult colk_iterate(const KernelExpansion& f, const TrackerState& tracker,
                           const RegressionSample& sample, const CompositionalProblem& problem,
                           const LearnerConfig& cfg);

/// ||ftilde_{t+1} - f_{t+1}||_H / alpha: the distance between the stochastic
/// quasi-gradient and its projected version, bounded by eps / alpha.
double projected_gradient_gap(const KernelExpansion& f_tilde_next, const KernelExpansion& f_next,
                              double alpha);

}  // namespace colk
