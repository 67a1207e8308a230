#include "colk/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace colk {

IterateResult polk_iterate(const KernelExpansion& f, const RegressionSample& sample,
                           const LearnerConfig& cfg) {
    const double coeff = 2.0 * (f(sample.x) - sample.y);
    KernelExpansion f_tilde =
        quasi_gradient_step(f, {{sample.x, coeff}}, cfg.alpha, cfg.lambda);
    const Eigen::Index order_before = f_tilde.order();
    PruneResult pruned = komp_prune(f_tilde, cfg.eps, cfg.w_max);
    IterateResult out{std::move(pruned.function),
                      TrackerState{Eigen::VectorXd::Zero(1), f, true},
                      StepCertificate{pruned.final_error, order_before, 0}};
    out.cert.order_after = out.f.order();
    return out;
}

Eigen::VectorXd scgd_tracker_update(const Eigen::VectorXd& g, const Eigen::VectorXd& h_cur,
                                    double beta) {
    if (g.size() != h_cur.size()) {
        throw std::invalid_argument("scgd_tracker_update: length mismatch");
    }
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("scgd_tracker_update: beta must be in (0,1]");
    }
    return (1.0 - beta) * g + beta * h_cur;
}

KernelExpansion budgeted_sgd_iterate(const KernelExpansion& f, const RegressionSample& sample,
                                     const LearnerConfig& cfg, Eigen::Index max_order) {
    if (max_order < 1) throw std::invalid_argument("budgeted_sgd_iterate: max_order must be >= 1");
    const double coeff = 2.0 * (f(sample.x) - sample.y);
    KernelExpansion grown = quasi_gradient_step(f, {{sample.x, coeff}}, cfg.alpha, cfg.lambda);
    while (grown.order() > max_order) {
        Eigen::Index drop = 0;
        double least = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < grown.order(); ++j) {
            const double contrib =
                std::abs(grown.weights()[j]) * std::sqrt(grown.kernel().self(grown.dict().col(j)));
            if (contrib < least) {
                least = contrib;
                drop = j;
            }
        }
        Dictionary dict(grown.dim(), grown.order() - 1);
        Eigen::VectorXd w(grown.order() - 1);
        Eigen::Index o = 0;
        for (Eigen::Index j = 0; j < grown.order(); ++j) {
            if (j == drop) continue;
            dict.col(o) = grown.dict().col(j);
            w[o++] = grown.weights()[j];
        }
        grown = KernelExpansion(grown.kernel(), std::move(dict), std::move(w));
    }
    return grown;
}

RbfNetwork RbfNetwork::uniform(double lo, double hi, Eigen::Index n_centers, double bandwidth) {
    if (n_centers < 1) throw std::invalid_argument("RbfNetwork: need at least one center");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("RbfNetwork: bandwidth must be > 0");
    RbfNetwork net;
    net.centers.resize(1, n_centers);
    if (n_centers == 1) {
        net.centers(0, 0) = 0.5 * (lo + hi);
    } else {
        for (Eigen::Index i = 0; i < n_centers; ++i) {
            net.centers(0, i) = lo + (hi - lo) * static_cast<double>(i) /
                                         static_cast<double>(n_centers - 1);
        }
    }
    net.bandwidth = bandwidth;
    net.weights = Eigen::VectorXd::Zero(n_centers);
    return net;
}

Eigen::VectorXd RbfNetwork::features(const Eigen::VectorXd& x) const {
    if (x.size() != centers.rows()) {
        throw std::invalid_argument("RbfNetwork: feature dimension mismatch");
    }
    Eigen::VectorXd phi(centers.cols());
    for (Eigen::Index i = 0; i < centers.cols(); ++i) {
        phi[i] = std::exp(-(x - centers.col(i)).squaredNorm() / (bandwidth * bandwidth));
    }
    return phi;
}

RbfNetwork rbf_sgd_iterate(const RbfNetwork& net, const RegressionSample& sample,
                           const LearnerConfig& cfg, RbfTracker& tracker) {
    if (tracker.prev_weights.size() == 0) {
        tracker.prev_weights = Eigen::VectorXd::Zero(net.weights.size());
    }
    RbfNetwork prev_net = net;
    prev_net.weights = tracker.prev_weights;

    const Eigen::VectorXd phi_xp = net.features(sample.x_prime);
    const double rp_prev = prev_net.weights.dot(phi_xp) - sample.y_prime;
    const double rp_cur = net.weights.dot(phi_xp) - sample.y_prime;
    const double h_prev = rp_prev * rp_prev;
    const double h_cur = rp_cur * rp_cur;
    tracker.g = (1.0 - cfg.beta) * (tracker.g - h_prev) + h_cur;

    const auto [cx, cxp] = moment_atom_coeffs(net(sample.x), sample.y, net.weights.dot(phi_xp),
                                              sample.y_prime, tracker.g, cfg.eta, cfg.moment_p);

    RbfNetwork out = net;
    out.weights -= cfg.alpha * (cx * net.features(sample.x) + cxp * phi_xp);
    tracker.prev_weights = net.weights;
    return out;
}

}  // namespace colk
