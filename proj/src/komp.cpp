#include "colk/komp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "colk/solve.hpp"

namespace colk {

namespace {

// Shared state for one pruning problem: the Gram matrix of the original
// dictionary, the atom/function inner products c = K w, and a factored form
// of K so candidate errors are measured without cancellation.
struct PruneContext {
    const KernelExpansion& f;
    Eigen::MatrixXd K;
    Eigen::VectorXd c;
    PsdQuadratic qform;

    explicit PruneContext(const KernelExpansion& f_tilde)
        : f(f_tilde),
          K(kernel_matrix(f_tilde.kernel(), f_tilde.dict(), f_tilde.dict())),
          c(K * f_tilde.weights()),
          qform(K) {}

    struct Fit {
        Eigen::VectorXd w;
        double error;
    };

    // Best fit to the original function using only the `keep` atoms, and the
    // Hilbert error it achieves.
    Fit fit(const std::vector<Eigen::Index>& keep) const {
        const Eigen::Index m = static_cast<Eigen::Index>(keep.size());
        Eigen::MatrixXd kk(m, m);
        Eigen::VectorXd ck(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            ck[a] = c[keep[a]];
            for (Eigen::Index b = 0; b < m; ++b) kk(a, b) = K(keep[a], keep[b]);
        }
        Eigen::VectorXd w = psd_solve(kk, ck);
        Eigen::VectorXd delta = f.weights();
        for (Eigen::Index a = 0; a < m; ++a) delta[keep[a]] -= w[a];
        return {std::move(w), std::sqrt(std::max(qform(delta), 0.0))};
    }
};

// Numerical grace on the stopping comparison; matches the eps + 1e-9 budget
// contract and lets exactly-redundant atoms prune at eps = 0.
constexpr double kStopSlack = 1e-9;

}  // namespace

double removal_error(const KernelExpansion& f_tilde, const std::vector<Eigen::Index>& keep) {
    std::vector<Eigen::Index> ks(keep);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (!ks.empty() && (ks.front() < 0 || ks.back() >= f_tilde.order())) {
        throw std::invalid_argument("removal_error: keep index out of range");
    }
    return PruneContext(f_tilde).fit(ks).error;
}

Eigen::VectorXd refit_weights(const Kernel& k, const Dictionary& dict,
                              const KernelExpansion& f_tilde) {
    if (k != f_tilde.kernel()) throw std::invalid_argument("refit_weights: kernel mismatch");
    if (dict.rows() != f_tilde.dim()) {
        throw std::invalid_argument("refit_weights: dimension mismatch");
    }
    const Eigen::MatrixXd kdd = kernel_matrix(k, dict, dict);
    const Eigen::VectorXd rhs = kernel_matrix(k, dict, f_tilde.dict()) * f_tilde.weights();
    return psd_solve(kdd, rhs);
}

PruneResult komp_prune(const KernelExpansion& f_tilde, double eps, double w_max) {
    if (eps < 0.0) throw std::invalid_argument("komp_prune: eps must be >= 0");
    if (!(w_max > 0.0)) throw std::invalid_argument("komp_prune: w_max must be > 0");

    PruneResult out{f_tilde, {}, {}, 0.0};
    if (f_tilde.empty()) return out;

    PruneContext ctx(f_tilde);
    std::vector<Eigen::Index> alive(f_tilde.order());
    for (Eigen::Index i = 0; i < f_tilde.order(); ++i) alive[i] = i;
    Eigen::VectorXd w_cur = f_tilde.weights();
    bool rescaled = false;

    while (!alive.empty()) {
        double best_err = std::numeric_limits<double>::infinity();
        std::size_t best_pos = 0;
        PruneContext::Fit best_fit;
        std::vector<Eigen::Index> keep(alive.size() - 1);
        for (std::size_t pos = 0; pos < alive.size(); ++pos) {
            std::size_t o = 0;
            for (std::size_t i = 0; i < alive.size(); ++i) {
                if (i != pos) keep[o++] = alive[i];
            }
            auto fit = ctx.fit(keep);
            if (fit.error < best_err) {
                best_err = fit.error;
                best_pos = pos;
                best_fit = std::move(fit);
            }
        }
        if (best_err > eps + kStopSlack) break;

        out.removed_indices.push_back(alive[best_pos]);
        out.step_errors.push_back(best_err);
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(best_pos));
        w_cur = std::move(best_fit.w);
        const double wn = w_cur.norm();
        if (wn > w_max) {
            w_cur *= w_max / wn;
            rescaled = true;
        }
    }

    Dictionary pruned_dict(f_tilde.dim(), static_cast<Eigen::Index>(alive.size()));
    for (std::size_t i = 0; i < alive.size(); ++i) pruned_dict.col(static_cast<Eigen::Index>(i)) =
        f_tilde.dict().col(alive[i]);
    out.function = KernelExpansion(f_tilde.kernel(), std::move(pruned_dict), w_cur);
    out.final_error = out.step_errors.empty() ? 0.0 : out.step_errors.back();
    if (rescaled) out.final_error = diff_norm(out.function, f_tilde);
    return out;
}

}  // namespace colk
