#include "colk/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>

#include "colk/baselines.hpp"
#include "colk/errors.hpp"

namespace colk {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      stream};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

struct Evaluator {
    const Dataset& test;
    double eta;
    int moment_p;
    std::vector<double> losses;

    MetricsRecord evaluate(long iter, const std::function<double(const Eigen::VectorXd&)>& predict,
                           Eigen::Index model_order, double projection_gap) {
        losses.resize(static_cast<std::size_t>(test.size()));
        double mse = 0.0;
        for (Eigen::Index i = 0; i < test.size(); ++i) {
            const double r = predict(test.xs.col(i)) - test.ys[i];
            losses[static_cast<std::size_t>(i)] = r * r;
            mse += r * r;
        }
        mse /= static_cast<double>(test.size());
        const double obj = mse + eta * moment_dispersion_estimate(losses, moment_p);
        return MetricsRecord{iter, obj, mse, model_order, projection_gap};
    }
};

void guard_finite(const Eigen::VectorXd& w, long iter) {
    if (!w.allFinite()) {
        throw std::runtime_error("run aborted: non-finite weights at iteration " +
                                 std::to_string(iter));
    }
}

void csv_row(std::ofstream& out, const MetricsRecord& r) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%ld,%.12g,%.12g,%ld,%.12g\n", r.iter, r.objective, r.test_mse,
                  static_cast<long>(r.model_order), r.projection_gap);
    out << buf;
}

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

SampleStream::SampleStream(const Dataset& data, std::uint64_t seed) : data_(&data), state_(seed) {
    if (data.size() < 2) throw config_error("sample stream needs at least two training points");
    perm_.resize(static_cast<std::size_t>(data.size()));
    std::iota(perm_.begin(), perm_.end(), Eigen::Index{0});
    reshuffle();
}

void SampleStream::reshuffle() {
    std::mt19937_64 rng(state_);
    std::shuffle(perm_.begin(), perm_.end(), rng);
    state_ = rng();
    pos_ = 0;
}

RegressionSample SampleStream::next() {
    if (pos_ + 1 >= perm_.size()) reshuffle();
    const Eigen::Index a = perm_[pos_];
    const Eigen::Index b = perm_[pos_ + 1];
    pos_ += 2;
    return RegressionSample{data_->xs.col(a), data_->ys[a], data_->xs.col(b), data_->ys[b]};
}

PreparedData prepare_data(const ExperimentConfig& cfg) {
    cfg.validate();
    Dataset all = cfg.synthetic
                      ? gen_regression_outliers(cfg.data_n, cfg.noise, cfg.x_lo, cfg.x_hi,
                                                derive_seed(cfg.seed, 100))
                      : load_csv(cfg.data_path, cfg.x_cols, cfg.y_col, cfg.has_header);
    if (cfg.standardize) all = minmax_scale(all, /*scale_target=*/true);
    ReplicateSplit split = replicate_split(all, cfg.test_frac, cfg.n_replicates, cfg.train_frac,
                                           derive_seed(cfg.seed, 200));
    return PreparedData{std::move(split.test), std::move(split.trains)};
}

RunMetrics run_on(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                  std::uint64_t stream_seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Evaluator ev{test, cfg.learner.eta, cfg.learner.moment_p, {}};
    SampleStream stream(train, stream_seed);

    LearnerConfig lc = cfg.learner;
    if (cfg.method == Method::colk_scgd_tracker) lc.tracker = TrackerKind::plain_average;

    RunMetrics out;
    const Eigen::Index p = train.dim();

    auto push_eval = [&](long iter, const std::function<double(const Eigen::VectorXd&)>& predict,
                         Eigen::Index order, double gap) {
        out.records.push_back(ev.evaluate(iter, predict, order, gap));
    };

    if (cfg.method == Method::rbf) {
        if (p != 1) throw config_error("rbf baseline supports scalar features only");
        RbfNetwork net = RbfNetwork::uniform(train.xs.row(0).minCoeff(), train.xs.row(0).maxCoeff(),
                                             cfg.rbf_n_centers, cfg.rbf_bandwidth);
        RbfTracker tracker;
        auto predict = [&net](const Eigen::VectorXd& x) { return net(x); };
        push_eval(0, predict, net.weights.size(), 0.0);
        for (long t = 0; t < cfg.n_iters; ++t) {
            net = rbf_sgd_iterate(net, stream.next(), lc, tracker);
            guard_finite(net.weights, t + 1);
            if ((t + 1) % cfg.eval_every == 0) push_eval(t + 1, predict, net.weights.size(), 0.0);
        }
        out.final_test_mse = out.records.back().test_mse;
        out.final_model_order = net.weights.size();
    } else {
        KernelExpansion f(lc.kernel, p);
        TrackerState tracker = TrackerState::initial(lc.kernel, p, 1);
        MomentRegression problem(lc.eta, lc.moment_p);
        auto predict = [&f](const Eigen::VectorXd& x) { return f(x); };
        push_eval(0, predict, 0, 0.0);
        double gap = 0.0;
        for (long t = 0; t < cfg.n_iters; ++t) {
            const RegressionSample s = stream.next();
            if (cfg.method == Method::polk) {
                IterateResult res = polk_iterate(f, s, lc);
                f = std::move(res.f);
                gap = res.cert.projection_error / lc.alpha;
            } else if (cfg.method == Method::bsgd) {
                f = budgeted_sgd_iterate(f, s, lc, cfg.bsgd_max_order);
                gap = 0.0;
            } else {
                IterateResult res = colk_iterate(f, tracker, s, problem, lc);
                f = std::move(res.f);
                tracker = std::move(res.tracker);
                gap = res.cert.projection_error / lc.alpha;
            }
            guard_finite(f.weights(), t + 1);
            if ((t + 1) % cfg.eval_every == 0) push_eval(t + 1, predict, f.order(), gap);
        }
        out.final_test_mse = out.records.back().test_mse;
        out.final_model_order = f.order();
    }

    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

RunMetrics run_single(const ExperimentConfig& cfg) {
    PreparedData data = prepare_data(cfg);
    return run_on(cfg, data.trains.front(), data.test, derive_seed(cfg.seed, 300));
}

ReplicateStudy run_replicates(const ExperimentConfig& cfg, int n_replicates) {
    if (n_replicates < 2) throw config_error("replicate study needs n_replicates >= 2");
    ExperimentConfig rcfg = cfg;
    rcfg.n_replicates = n_replicates;
    PreparedData data = prepare_data(rcfg);

    ReplicateStudy study;
    std::vector<double> finals;
    for (int r = 0; r < n_replicates; ++r) {
        ReplicateRow row;
        row.replicate = r;
        row.seed = derive_seed(cfg.seed, static_cast<std::uint32_t>(300 + r));
        try {
            RunMetrics m = run_on(rcfg, data.trains[static_cast<std::size_t>(r)], data.test,
                                  row.seed);
            row.ok = true;
            row.final_objective = m.records.back().objective;
            row.final_test_mse = m.final_test_mse;
            row.final_model_order = m.final_model_order;
            finals.push_back(row.final_test_mse);
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        study.rows.push_back(std::move(row));
    }

    study.n_ok = static_cast<int>(finals.size());
    if (!finals.empty()) {
        std::sort(finals.begin(), finals.end());
        const double n = static_cast<double>(finals.size());
        study.mean = std::accumulate(finals.begin(), finals.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : finals) ss += (v - study.mean) * (v - study.mean);
        study.stddev = finals.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        study.min = finals.front();
        study.max = finals.back();
        study.q25 = quantile(finals, 0.25);
        study.median = quantile(finals, 0.5);
        study.q75 = quantile(finals, 0.75);
    }
    return study;
}

void write_metrics_csv(const RunMetrics& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    out << "iter,objective,test_mse,model_order,projection_gap\n";
    for (const auto& r : m.records) csv_row(out, r);
}

void write_replicates_csv(const ReplicateStudy& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    out << "replicate,seed,status,final_objective,final_test_mse,final_model_order\n";
    char buf[256];
    for (const auto& r : s.rows) {
        if (r.ok) {
            std::snprintf(buf, sizeof buf, "%d,%llu,ok,%.12g,%.12g,%ld\n", r.replicate,
                          static_cast<unsigned long long>(r.seed), r.final_objective,
                          r.final_test_mse, static_cast<long>(r.final_model_order));
            out << buf;
        } else {
            out << r.replicate << "," << r.seed << ",failed,,,\n";
        }
    }
}

void write_summary_csv(const ReplicateStudy& s, const std::string& method,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    out << "method,n,mean,std,min,q25,median,q75,max\n";
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  method.c_str(), s.n_ok, s.mean, s.stddev, s.min, s.q25, s.median, s.q75, s.max);
    out << buf;
}

}  // namespace colk
