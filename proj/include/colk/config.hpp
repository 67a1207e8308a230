#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colk/data.hpp"
#include "colk/learner.hpp"

namespace colk {

enum class Method { colk, colk_scgd_tracker, polk, bsgd, rbf };

std::string method_name(Method m);
Method parse_method(const std::string& s);

/// Full description of one experiment. Defaults reproduce the synthetic
/// risk-averse regression study; see configs/ for ready-made files.
struct ExperimentConfig {
    Method method = Method::colk;
    LearnerConfig learner;

    // data
    bool synthetic = true;
    Eigen::Index data_n = 6000;
    OutlierNoiseSpec noise;
    double x_lo = -1.0;
    double x_hi = 1.0;
    std::string data_path;
    std::vector<int> x_cols = {0};
    int y_col = 1;
    bool has_header = true;
    bool standardize = true;  // min-max features and target onto [-1,1]
    double test_frac = 0.2;
    double train_frac = 0.5;

    // run shape
    long n_iters = 20000;
    long eval_every = 100;
    int n_replicates = 20;
    std::uint64_t seed = 1;

    // baselines
    Eigen::Index bsgd_max_order = 50;
    Eigen::Index rbf_n_centers = 50;
    double rbf_bandwidth = 0.06;

    std::string out_dir = ".";

    void validate() const;  // throws config_error
};

/// Line-oriented `key = value` files with dotted keys and '#' comments.
/// Unknown keys are rejected.
ExperimentConfig parse_config_file(const std::string& path);

/// Apply one `key=value` override (the CLI --set flag).
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

}  // namespace colk
