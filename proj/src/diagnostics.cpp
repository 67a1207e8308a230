#include "colk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "colk/komp.hpp"
#include "colk/learner.hpp"

namespace colk {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      stream};
    return std::mt19937_64(seq);
}

KernelExpansion random_expansion(std::mt19937_64& rng, Eigen::Index max_order, Eigen::Index dim,
                                 bool allow_duplicates) {
    std::uniform_int_distribution<Eigen::Index> om(1, max_order);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index m = om(rng);
    Dictionary dict(dim, m);
    Eigen::VectorXd w(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k < dim; ++k) dict(k, j) = ux(rng);
        w[j] = gauss(rng);
    }
    if (allow_duplicates && m >= 2 && ux(rng) > 0.0) {
        dict.col(m - 1) = dict.col(0);  // exact duplicate atom
    }
    return KernelExpansion(Kernel::gaussian(0.5), std::move(dict), std::move(w));
}

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

CheckReport check_gradient_atoms(const MomentRegression& problem, int n_trials, double fd_step,
                                 std::uint64_t seed) {
    if (!(fd_step > 0.0)) throw std::invalid_argument("check_gradient_atoms: fd_step must be > 0");
    auto rng = seeded(seed, 11);
    std::uniform_int_distribution<Eigen::Index> om(0, 5);
    std::uniform_int_distribution<Eigen::Index> dp(1, 2);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Kernel k = Kernel::gaussian(0.5);
    const double eta = problem.eta();
    const int mp = problem.moment_p();

    double worst = 0.0;
    for (int trial = 0; trial < n_trials; ++trial) {
        const Eigen::Index p = dp(rng);
        const Eigen::Index m = om(rng);
        Dictionary dict(p, m + 2);
        Eigen::VectorXd w0(m + 2);
        for (Eigen::Index j = 0; j < m; ++j) {
            for (Eigen::Index c = 0; c < p; ++c) dict(c, j) = ux(rng);
            w0[j] = gauss(rng);
        }
        RegressionSample s;
        s.x.resize(p);
        s.x_prime.resize(p);
        for (Eigen::Index c = 0; c < p; ++c) {
            s.x[c] = ux(rng);
            s.x_prime[c] = ux(rng);
        }
        s.y = gauss(rng);
        s.y_prime = gauss(rng);
        const double g = std::abs(gauss(rng));

        // extend the dictionary with the would-be new atoms at zero weight so
        // the finite differences also cover the appended coefficients
        dict.col(m) = s.x;
        dict.col(m + 1) = s.x_prime;
        w0[m] = 0.0;
        w0[m + 1] = 0.0;

        const Eigen::VectorXd kx = kernel_map(k, dict, s.x);
        const Eigen::VectorXd kxp = kernel_map(k, dict, s.x_prime);
        const double c0_base = w0.dot(kxp) - s.y_prime;
        const double c0 = c0_base * c0_base;

        // frozen-g surrogate whose parametric gradient is the atom construction
        auto surrogate = [&](const Eigen::VectorXd& w) {
            const double rx = w.dot(kx) - s.y;
            const double rp = w.dot(kxp) - s.y_prime;
            const double base = rx * rx - g - (rp * rp - c0);
            double disp = 0.0;
            double pw = base * base;
            for (int q = 2; q <= mp; ++q) {
                disp += pw;
                pw *= base;
            }
            return rx * rx + eta * disp;
        };

        const auto [cx, cxp] = moment_atom_coeffs(w0.dot(kx), s.y, w0.dot(kxp), s.y_prime, g,
                                                  eta, mp);
        for (Eigen::Index n = 0; n < w0.size(); ++n) {
            const double predicted = cx * kx[n] + cxp * kxp[n];
            Eigen::VectorXd wp = w0, wm = w0;
            wp[n] += fd_step;
            wm[n] -= fd_step;
            const double fd = (surrogate(wp) - surrogate(wm)) / (2.0 * fd_step);
            worst = std::max(worst, rel_err(fd, predicted));
        }
    }

    std::ostringstream details;
    details << "max relative error " << worst << " over " << n_trials << " trials (fd step "
            << fd_step << ")";
    return CheckReport{"gradient-atoms", worst < 1e-5, worst, details.str()};
}

CheckReport check_komp_oracle(int n_instances, Eigen::Index max_order, std::uint64_t seed) {
    auto rng = seeded(seed, 23);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double worst_gap = 0.0;
    int disagreements = 0;
    int budget_violations = 0;
    for (int inst = 0; inst < n_instances; ++inst) {
        const KernelExpansion f = random_expansion(rng, max_order, 1 + (inst % 2),
                                                   /*allow_duplicates=*/u01(rng) < 0.3);
        double eps;
        const double mode = u01(rng);
        if (mode < 0.2) eps = 0.0;
        else if (mode < 0.8) eps = std::pow(10.0, -3.0 + 3.0 * u01(rng));
        else eps = 1e9;

        const PruneResult pruned = komp_prune(f, eps);

        // replay the greedy loop with an exhaustive single-removal search
        std::vector<Eigen::Index> alive(static_cast<std::size_t>(f.order()));
        for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<Eigen::Index>(i);
        bool ok = true;
        for (std::size_t step = 0; step < pruned.removed_indices.size(); ++step) {
            double best = std::numeric_limits<double>::infinity();
            Eigen::Index best_j = -1;
            double chosen_gamma = std::numeric_limits<double>::infinity();
            for (Eigen::Index j : alive) {
                std::vector<Eigen::Index> keep;
                keep.reserve(alive.size() - 1);
                for (Eigen::Index i : alive) {
                    if (i != j) keep.push_back(i);
                }
                const double gamma = removal_error(f, keep);
                if (gamma < best) {
                    best = gamma;
                    best_j = j;
                }
                if (j == pruned.removed_indices[step]) chosen_gamma = gamma;
            }
            const double gap = std::abs(chosen_gamma - best);
            worst_gap = std::max(worst_gap, gap);
            if (pruned.removed_indices[step] != best_j && gap >= 1e-10) ok = false;
            if (std::abs(chosen_gamma - pruned.step_errors[step]) >= 1e-10) ok = false;
            alive.erase(std::find(alive.begin(), alive.end(), pruned.removed_indices[step]));
        }
        if (!ok) ++disagreements;
        if (!(pruned.final_error <= eps + 1e-9)) ++budget_violations;
    }

    std::ostringstream details;
    details << disagreements << " greedy/oracle disagreements, " << budget_violations
            << " budget violations over " << n_instances
            << " instances (worst tie gap " << worst_gap << ")";
    return CheckReport{"komp-oracle", disagreements == 0 && budget_violations == 0, worst_gap,
                       details.str()};
}

CheckReport check_prop1(const RunMetrics& run, const ExperimentConfig& cfg) {
    const double bound = (cfg.learner.eps + 1e-9) / cfg.learner.alpha;
    double worst = 0.0;
    long bad = 0;
    for (const auto& r : run.records) {
        worst = std::max(worst, r.projection_gap);
        if (r.projection_gap > bound) ++bad;
    }
    std::ostringstream details;
    details << "max projection gap " << worst << " vs bound eps/alpha = "
            << cfg.learner.eps / cfg.learner.alpha << " (" << bad << " violations over "
            << run.records.size() << " records)";
    return CheckReport{"prop1-certificate", bad == 0, worst, details.str()};
}

CheckReport check_tracking_rate(double beta, int n_chains, int horizon, std::uint64_t seed) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("check_tracking_rate: beta must be in (0,1)");
    }
    auto rng = seeded(seed, 37);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double h_mean = 1.0;
    const double h_std = 0.3;

    // frozen function: h(f_t) == h(f_{t-1}), so the momentum update reduces
    // to plain averaging and E[g_t] - E[h] decays as (1-beta)^t from -E[h]
    std::vector<double> g(static_cast<std::size_t>(n_chains), 0.0);
    std::vector<double> bias(static_cast<std::size_t>(horizon) + 1);
    bias[0] = h_mean;  // |mean g_0 - E h|
    Eigen::VectorXd gv(1), hv(1);
    for (int t = 1; t <= horizon; ++t) {
        double acc = 0.0;
        for (int c = 0; c < n_chains; ++c) {
            const double h = h_mean + h_std * gauss(rng);
            gv[0] = g[static_cast<std::size_t>(c)];
            hv[0] = h;
            g[static_cast<std::size_t>(c)] = update_tracker(gv, hv, hv, beta)[0];
            acc += g[static_cast<std::size_t>(c)];
        }
        bias[static_cast<std::size_t>(t)] = std::abs(acc / n_chains - h_mean);
    }

    // Monte Carlo noise floor from the terminal cross-chain spread
    double var = 0.0, mean_gT = 0.0;
    for (double v : g) mean_gT += v;
    mean_gT /= n_chains;
    for (double v : g) var += (v - mean_gT) * (v - mean_gT);
    var /= std::max(1, n_chains - 1);
    const double floor = std::max(10.0 * std::sqrt(var / n_chains), 1e-13 * h_mean);

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int npts = 0;
    for (int t = 0; t <= horizon; ++t) {
        const double b = bias[static_cast<std::size_t>(t)];
        if (b <= floor && npts >= 5) break;  // truncate at the noise floor
        if (b <= 0.0) continue;
        const double x = static_cast<double>(t), y = std::log(b);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++npts;
    }
    const double denom = npts * sxx - sx * sx;
    const double slope = denom != 0.0 ? (npts * sxy - sx * sy) / denom : 0.0;
    const double expected = std::log(1.0 - beta);
    const double rel = std::abs(slope - expected) / std::abs(expected);

    std::ostringstream details;
    details << "fitted rate " << slope << " vs log(1-beta) = " << expected << " (rel err " << rel
            << ", " << npts << " points in fit window)";
    return CheckReport{"tracking-rate", rel <= 0.10, rel, details.str()};
}

CheckReport check_model_order_plateau(const RunMetrics& run) {
    if (run.records.empty()) {
        return CheckReport{"model-order-plateau", false, 0.0, "no records"};
    }
    const std::size_t n = run.records.size();
    const std::size_t head = static_cast<std::size_t>(std::ceil(0.8 * static_cast<double>(n)));
    Eigen::Index max_head = 0, max_all = 0;
    for (std::size_t i = 0; i < n; ++i) {
        max_all = std::max(max_all, run.records[i].model_order);
        if (i < head) max_head = std::max(max_head, run.records[i].model_order);
    }
    std::ostringstream details;
    details << "max order " << max_all << ", max within first 80% " << max_head;
    return CheckReport{"model-order-plateau", max_head == max_all,
                       static_cast<double>(max_all - max_head), details.str()};
}

std::vector<CheckReport> run_diagnostics(std::uint64_t seed) {
    std::vector<CheckReport> out;

    auto grad_risk = check_gradient_atoms(MomentRegression(0.1, 4), 100, 1e-6, seed);
    grad_risk.name = "gradient-atoms[eta=0.1,P=4]";
    out.push_back(std::move(grad_risk));
    auto grad_ls = check_gradient_atoms(MomentRegression(0.0, 4), 100, 1e-6, seed + 1);
    grad_ls.name = "gradient-atoms[eta=0]";
    out.push_back(std::move(grad_ls));

    out.push_back(check_komp_oracle(200, 8, seed));

    for (double beta : {0.01, 0.1, 0.5}) {
        auto r = check_tracking_rate(beta, 1000, 500, seed);
        r.name += "[beta=" + std::to_string(beta).substr(0, 4) + "]";
        out.push_back(std::move(r));
    }

    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.n_iters = 4000;
    cfg.eval_every = 4;
    cfg.data_n = 2000;
    RunMetrics run = run_single(cfg);
    out.push_back(check_prop1(run, cfg));
    out.push_back(check_model_order_plateau(run));

    return out;
}

}  // namespace colk
