#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace colk {

struct Dataset {
    Eigen::MatrixXd xs;  // p x n, one column per point
    Eigen::VectorXd ys;
    std::string name;

    Eigen::Index size() const { return xs.cols(); }
    Eigen::Index dim() const { return xs.rows(); }
};

/// Gaussian scale-mixture noise: N(0, sigma^2) with probability
/// 1 - contam_prob, else N(0, (contam_scale * sigma)^2).
struct OutlierNoiseSpec {
    double sigma = 0.5;
    double contam_prob = 0.05;
    double contam_scale = 10.0;

    void validate() const;  // throws config_error
};

/// Scalar regression stream y = 2x + 3 sin(6x) + noise with x uniform on
/// [x_lo, x_hi]. Deterministic in the seed.
Dataset gen_regression_outliers(Eigen::Index n, const OutlierNoiseSpec& spec, double x_lo,
                                double x_hi, std::uint64_t seed);

struct ReplicateSplit {
    Dataset test;
    std::vector<Dataset> trains;
};

/// Hold out test_frac of the data, then draw n_replicates independent uniform
/// subsamples of train_frac of the remainder. Test and every train set are
/// disjoint; deterministic in the seed.
ReplicateSplit replicate_split(const Dataset& d, double test_frac, int n_replicates,
                               double train_frac, std::uint64_t seed);

/// Comma-separated numeric columns, optional single header line, '.' decimal.
/// Blank lines are skipped; any other malformed row fails with its row number.
Dataset load_csv(const std::string& path, const std::vector<int>& x_cols, int y_col,
                 bool has_header);

/// Write a dataset as CSV with an "x0,...,y" header.
void write_csv(const Dataset& d, const std::string& path);

/// Min-max scale each feature coordinate (and, when scale_target is set, the
/// target) onto [-1, 1]. Constant coordinates map to 0.
Dataset minmax_scale(const Dataset& d, bool scale_target);

}  // namespace colk
