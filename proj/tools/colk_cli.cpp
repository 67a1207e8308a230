// Command line front end: single runs, replicate studies, synthetic data
// generation, and the diagnostics suite.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colk/diagnostics.hpp"
#include "colk/errors.hpp"
#include "colk/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = ".";
    long seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--set", opts.sets, "override a config key, e.g. --set learner.alpha=0.05")
        ->expected(-1);
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "override the experiment seed");
}

colk::ExperimentConfig build_config(const CommonOpts& opts) {
    colk::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = colk::parse_config_file(opts.config_path);
    for (const auto& kv : opts.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw colk::config_error("--set expects key=value, got '" + kv + "'");
        }
        colk::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.out_dir != ".") cfg.out_dir = opts.out_dir;
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

int cmd_run(const CommonOpts& opts) {
    const auto cfg = build_config(opts);
    const colk::RunMetrics m = colk::run_single(cfg);
    const std::string path = cfg.out_dir + "/metrics.csv";
    colk::write_metrics_csv(m, path);
    std::printf("method=%s iters=%ld final_test_mse=%.6g final_model_order=%ld wall=%.1fs\n",
                colk::method_name(cfg.method).c_str(), cfg.n_iters, m.final_test_mse,
                static_cast<long>(m.final_model_order), m.wall_seconds);
    std::printf("metrics written to %s\n", path.c_str());
    return 0;
}

int cmd_replicate(const CommonOpts& opts) {
    const auto cfg = build_config(opts);
    const colk::ReplicateStudy study = colk::run_replicates(cfg, cfg.n_replicates);
    colk::write_replicates_csv(study, cfg.out_dir + "/replicates.csv");
    colk::write_summary_csv(study, colk::method_name(cfg.method), cfg.out_dir + "/summary.csv");
    std::printf("method=%s replicates=%d ok=%d mean=%.6g std=%.6g\n",
                colk::method_name(cfg.method).c_str(), cfg.n_replicates, study.n_ok, study.mean,
                study.stddev);
    std::printf("tables written to %s/replicates.csv and %s/summary.csv\n", cfg.out_dir.c_str(),
                cfg.out_dir.c_str());
    return study.n_ok == static_cast<int>(study.rows.size()) ? 0 : 2;
}

int cmd_gen_data(long n, long seed, const std::string& out, const colk::OutlierNoiseSpec& spec,
                 double x_min, double x_max) {
    const colk::Dataset d = colk::gen_regression_outliers(n, spec, x_min, x_max,
                                                          static_cast<std::uint64_t>(seed));
    colk::write_csv(d, out);
    std::printf("wrote %ld samples to %s\n", static_cast<long>(d.size()), out.c_str());
    return 0;
}

int cmd_diagnose(const CommonOpts& opts) {
    const std::uint64_t seed = opts.seed >= 0 ? static_cast<std::uint64_t>(opts.seed) : 1;
    std::filesystem::create_directories(opts.out_dir);
    const auto reports = colk::run_diagnostics(seed);

    std::ofstream txt(opts.out_dir + "/diagnostics.txt");
    std::ofstream csv(opts.out_dir + "/diagnostics.csv");
    csv << "check,pass,worst\n";
    bool all_pass = true;
    for (const auto& r : reports) {
        const char* verdict = r.pass ? "PASS" : "FAIL";
        std::printf("%-32s %s  %s\n", r.name.c_str(), verdict, r.details.c_str());
        txt << r.name << " " << verdict << " " << r.details << "\n";
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%d,%.12g\n", r.name.c_str(), r.pass ? 1 : 0, r.worst);
        csv << buf;
        all_pass = all_pass && r.pass;
    }
    std::printf("diagnostics: %s\n", all_pass ? "all checks passed" : "FAILURES present");
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compositional online learning with kernels"};
    app.require_subcommand(1);

    CommonOpts run_opts, rep_opts, diag_opts;
    auto* run = app.add_subcommand("run", "run a single experiment");
    add_common(run, run_opts);
    auto* rep = app.add_subcommand("replicate", "run a replicate study");
    add_common(rep, rep_opts);

    long gd_n = 6000, gd_seed = 1;
    std::string gd_out = "data.csv";
    colk::OutlierNoiseSpec gd_spec;
    double gd_xmin = -1.0, gd_xmax = 1.0;
    auto* gen = app.add_subcommand("gen-data", "write a synthetic regression CSV");
    gen->add_option("--n", gd_n, "number of samples");
    gen->add_option("--seed", gd_seed, "generator seed");
    gen->add_option("--out", gd_out, "output CSV path");
    gen->add_option("--sigma", gd_spec.sigma, "base noise std");
    gen->add_option("--contam-prob", gd_spec.contam_prob, "outlier probability");
    gen->add_option("--contam-scale", gd_spec.contam_scale, "outlier noise multiplier");
    gen->add_option("--x-min", gd_xmin, "feature range lower end");
    gen->add_option("--x-max", gd_xmax, "feature range upper end");

    auto* diag = app.add_subcommand("diagnose", "run the diagnostics suite");
    diag->add_option("--out", diag_opts.out_dir, "output directory");
    diag->add_option("--seed", diag_opts.seed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts);
        if (rep->parsed()) return cmd_replicate(rep_opts);
        if (gen->parsed()) return cmd_gen_data(gd_n, gd_seed, gd_out, gd_spec, gd_xmin, gd_xmax);
        if (diag->parsed()) return cmd_diagnose(diag_opts);
    } catch (const colk::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const colk::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
