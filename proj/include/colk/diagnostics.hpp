#pragma once

#include <string>
#include <vector>

#include "colk/objectives.hpp"
#include "colk/runner.hpp"

namespace colk {

struct CheckReport {
    std::string name;
    bool pass = false;
    double worst = 0.0;  // worst-case magnitude the check saw
    std::string details;
};

/// Compare the atom-built parametric gradient of the frozen-g surrogate with
/// central finite differences over every weight coordinate (including the
/// would-be new atoms at x and x'). PASS iff the worst relative error over
/// all trials is below 1e-5.
CheckReport check_gradient_atoms(const MomentRegression& problem, int n_trials, double fd_step,
                                 std::uint64_t seed);

/// Replay the greedy pruning loop against an exhaustive single-removal search
/// on random instances. PASS iff every step agrees on the removed index (ties
/// within 1e-10 allowed) and every final error is within budget.
CheckReport check_komp_oracle(int n_instances, Eigen::Index max_order, std::uint64_t seed);

/// PASS iff every recorded projection gap is at most eps/alpha + 1e-9/alpha.
CheckReport check_prop1(const RunMetrics& run, const ExperimentConfig& cfg);

/// Frozen-function tracker chains: fits log |mean bias| against the iteration
/// index and PASSes when the rate is within 10% of log(1 - beta). The fit
/// window drops points once the bias falls under the Monte Carlo noise floor.
CheckReport check_tracking_rate(double beta, int n_chains, int horizon, std::uint64_t seed);

/// PASS iff the model order attains its maximum within the first 80% of the
/// records, i.e. the tail never grows past it.
CheckReport check_model_order_plateau(const RunMetrics& run);

/// The full suite at default sizes (includes a short learner run for the
/// certificate and plateau checks). Deterministic in the seed.
std::vector<CheckReport> run_diagnostics(std::uint64_t seed);

}  // namespace colk
