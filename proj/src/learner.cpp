#include "colk/learner.hpp"

#include <stdexcept>

#include "colk/errors.hpp"

namespace colk {

void LearnerConfig::validate() const {
    if (!(alpha > 0.0)) throw config_error("learner.alpha must be > 0");
    if (!(beta > 0.0 && beta < 1.0)) throw config_error("learner.beta must be in (0,1)");
    if (lambda < 0.0) throw config_error("learner.lambda must be >= 0");
    if (alpha * lambda >= 1.0) throw config_error("learner: alpha * lambda must be < 1");
    if (eps < 0.0) throw config_error("learner.eps must be >= 0");
    if (eta < 0.0) throw config_error("learner.eta must be >= 0");
    if (moment_p < 2 || moment_p > 4) throw config_error("learner.moment_p must be in {2,3,4}");
    if (!(w_max > 0.0)) throw config_error("learner.w_max must be > 0");
}

TrackerState TrackerState::initial(const Kernel& k, Eigen::Index dim, Eigen::Index m) {
    return TrackerState{Eigen::VectorXd::Zero(m), KernelExpansion(k, dim), false};
}

Eigen::VectorXd update_tracker(const Eigen::VectorXd& g, const Eigen::VectorXd& h_prev,
                               const Eigen::VectorXd& h_cur, double beta) {
    if (g.size() != h_prev.size() || g.size() != h_cur.size()) {
        throw std::invalid_argument("update_tracker: length mismatch");
    }
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("update_tracker: beta must be in (0,1]");
    }
    return (1.0 - beta) * (g - h_prev) + h_cur;
}

KernelExpansion quasi_gradient_step(const KernelExpansion& f, const GradientAtoms& atoms,
                                    double alpha, double lambda) {
    if (alpha * lambda >= 1.0) {
        throw config_error("quasi_gradient_step: alpha * lambda must be < 1");
    }
    Eigen::Index n_new = 0;
    for (const auto& a : atoms) {
        if (a.coeff != 0.0) ++n_new;
    }
    Dictionary dict(f.dim(), f.order() + n_new);
    Eigen::VectorXd w(f.order() + n_new);
    dict.leftCols(f.order()) = f.dict();
    w.head(f.order()) = (1.0 - alpha * lambda) * f.weights();
    Eigen::Index j = f.order();
    for (const auto& a : atoms) {
        if (a.coeff == 0.0) continue;
        if (a.point.size() != f.dim()) {
            throw std::invalid_argument("quasi_gradient_step: atom dimension mismatch");
        }
        dict.col(j) = a.point;
        w[j] = -alpha * a.coeff;
        ++j;
    }
    return KernelExpansion(f.kernel(), std::move(dict), std::move(w));
}

IterateResult colk_iterate(const KernelExpansion& f, const TrackerState& tracker,
                           const RegressionSample& sample, const CompositionalProblem& problem,
                           const LearnerConfig& cfg) {
    const Eigen::VectorXd h_cur = problem.inner_h(f, sample);
    Eigen::VectorXd g_next;
    if (cfg.tracker == TrackerKind::momentum) {
        const Eigen::VectorXd h_prev = problem.inner_h_at(tracker.prev_f, sample);
        g_next = update_tracker(tracker.g, h_prev, h_cur, cfg.beta);
    } else {
        g_next = (1.0 - cfg.beta) * tracker.g + cfg.beta * h_cur;
    }

    const GradientAtoms atoms = problem.gradient_atoms(f, sample, g_next);
    KernelExpansion f_tilde = quasi_gradient_step(f, atoms, cfg.alpha, cfg.lambda);
    const Eigen::Index order_before = f_tilde.order();

    PruneResult pruned = komp_prune(f_tilde, cfg.eps, cfg.w_max);

    IterateResult out{std::move(pruned.function),
                      TrackerState{std::move(g_next), f, true},
                      StepCertificate{pruned.final_error, order_before, 0}};
    out.cert.order_after = out.f.order();
    return out;
}

double projected_gradient_gap(const KernelExpansion& f_tilde_next, const KernelExpansion& f_next,
                              double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("projected_gradient_gap: alpha must be > 0");
    return diff_norm(f_tilde_next, f_next) / alpha;
}

}  // namespace colk
