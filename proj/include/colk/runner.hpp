#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colk/config.hpp"

namespace colk {

struct MetricsRecord {
    long iter = 0;
    double objective = 0.0;       // test-set mean loss + eta * dispersion
    double test_mse = 0.0;
    Eigen::Index model_order = 0;
    double projection_gap = 0.0;  // ||ftilde - f||_H / alpha at this iterate
};

struct RunMetrics {
    std::vector<MetricsRecord> records;
    double final_test_mse = 0.0;
    Eigen::Index final_model_order = 0;
    double wall_seconds = 0.0;
};

struct ReplicateRow {
    int replicate = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    double final_objective = 0.0;
    double final_test_mse = 0.0;
    Eigen::Index final_model_order = 0;
    std::string error;
};

struct ReplicateStudy {
    std::vector<ReplicateRow> rows;
    int n_ok = 0;
    double mean = 0.0, stddev = 0.0;
    double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
};

/// Train/test material after generation (or loading), optional scaling, and
/// the replicate split.
struct PreparedData {
    Dataset test;
    std::vector<Dataset> trains;
};

PreparedData prepare_data(const ExperimentConfig& cfg);

/// One run of the configured method on replicate 0. Records a row at
/// iteration 0 and after every eval_every iterations.
RunMetrics run_single(const ExperimentConfig& cfg);

/// Like run_single but on a caller-supplied train/test pair.
RunMetrics run_on(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                  std::uint64_t stream_seed);

/// R independent runs over the replicate training sets (shared test set).
/// A failed replicate is recorded in its row, not fatal.
ReplicateStudy run_replicates(const ExperimentConfig& cfg, int n_replicates);

void write_metrics_csv(const RunMetrics& m, const std::string& path);
void write_replicates_csv(const ReplicateStudy& s, const std::string& path);
void write_summary_csv(const ReplicateStudy& s, const std::string& method,
                       const std::string& path);

/// Deterministic paired sample stream: index 2t feeds (x, y), 2t+1 feeds
/// (x', y'); reshuffles with a seeded permutation when the epoch is consumed.
class SampleStream {
public:
    SampleStream(const Dataset& data, std::uint64_t seed);
    RegressionSample next();

private:
    void reshuffle();

    const Dataset* data_;
    std::vector<Eigen::Index> perm_;
    std::size_t pos_ = 0;
    std::uint64_t state_;
};

}  // namespace colk
