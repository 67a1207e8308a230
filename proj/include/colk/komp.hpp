#pragma once

#include <vector>

#include "colk/kernel.hpp"

namespace colk {

/// Output of komp_prune. `removed_indices` index the *input* dictionary in
/// removal order; `step_errors` are the Hilbert errors accepted at each
/// removal and `final_error` = ||pruned - input||_H <= eps + 1e-9.
struct PruneResult {
    KernelExpansion function;
    std::vector<Eigen::Index> removed_indices;
    std::vector<double> step_errors;
    double final_error = 0.0;
};

/// min over weights supported on `keep` of ||f_tilde - sum_k w_k kappa(d_k,.)||_H.
/// Zero (up to rounding) when `keep` spans the whole function.
double removal_error(const KernelExpansion& f_tilde, const std::vector<Eigen::Index>& keep);

/// w = K_{D,D}^{-1} K_{D,Dtilde} w_tilde (jittered solve): weights of the
/// Hilbert-norm projection of f_tilde onto span{kappa(d,.): d in D}.
Eigen::VectorXd refit_weights(const Kernel& k, const Dictionary& dict,
                              const KernelExpansion& f_tilde);

/// Destructive kernel orthogonal matching pursuit with pre-fitting: greedily
/// remove the atom whose removal least degrades the fit to the *original*
/// f_tilde, refit the surviving weights, and stop once the best removal would
/// exceed eps. Ties at the argmin go to the lowest index. After each refit the
/// weight vector is rescaled to w_max if its 2-norm exceeds it.
PruneResult komp_prune(const KernelExpansion& f_tilde, double eps, double w_max = 1e6);

}  // namespace colk
