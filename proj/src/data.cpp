#include "colk/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "colk/errors.hpp"

namespace colk {

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      stream};
    return std::mt19937_64(seq);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

Dataset take_rows(const Dataset& d, const std::vector<Eigen::Index>& rows,
                  const std::string& name) {
    Dataset out;
    out.xs.resize(d.dim(), static_cast<Eigen::Index>(rows.size()));
    out.ys.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.xs.col(static_cast<Eigen::Index>(i)) = d.xs.col(rows[i]);
        out.ys[static_cast<Eigen::Index>(i)] = d.ys[rows[i]];
    }
    out.name = name;
    return out;
}

}  // namespace

void OutlierNoiseSpec::validate() const {
    if (!(sigma >= 0.0)) throw config_error("data.sigma must be >= 0");
    if (!(contam_prob >= 0.0 && contam_prob < 1.0)) {
        throw config_error("data.contam_prob must be in [0,1)");
    }
    if (!(contam_scale > 1.0)) throw config_error("data.contam_scale must be > 1");
}

Dataset gen_regression_outliers(Eigen::Index n, const OutlierNoiseSpec& spec, double x_lo,
                                double x_hi, std::uint64_t seed) {
    if (n < 1) throw config_error("gen_regression_outliers: n must be >= 1");
    if (!(x_lo < x_hi)) throw config_error("gen_regression_outliers: empty x range");
    spec.validate();

    auto rng = seeded_rng(seed, 0);
    std::uniform_real_distribution<double> ux(x_lo, x_hi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    Dataset d;
    d.xs.resize(1, n);
    d.ys.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = ux(rng);
        const bool contaminated = u01(rng) < spec.contam_prob;
        const double sd = contaminated ? spec.contam_scale * spec.sigma : spec.sigma;
        d.xs(0, i) = x;
        d.ys[i] = 2.0 * x + 3.0 * std::sin(6.0 * x) + sd * gauss(rng);
    }
    d.name = "regression-outliers";
    return d;
}

ReplicateSplit replicate_split(const Dataset& d, double test_frac, int n_replicates,
                               double train_frac, std::uint64_t seed) {
    if (!(test_frac > 0.0 && test_frac < 1.0) || !(train_frac > 0.0 && train_frac <= 1.0)) {
        throw config_error("replicate_split: fractions must be in (0,1)");
    }
    if (n_replicates < 1) throw config_error("replicate_split: n_replicates must be >= 1");

    const Eigen::Index n = d.size();
    const auto n_test = static_cast<Eigen::Index>(test_frac * static_cast<double>(n));
    const Eigen::Index n_rest = n - n_test;
    const auto n_train = static_cast<Eigen::Index>(train_frac * static_cast<double>(n_rest));
    if (n_test < 1 || n_train < 1) throw config_error("replicate_split: empty test or train set");

    std::vector<Eigen::Index> perm(n);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    auto rng = seeded_rng(seed, 1);
    std::shuffle(perm.begin(), perm.end(), rng);

    ReplicateSplit out;
    out.test = take_rows(d, {perm.begin(), perm.begin() + n_test}, d.name + "/test");
    std::vector<Eigen::Index> rest(perm.begin() + n_test, perm.end());
    out.trains.reserve(static_cast<std::size_t>(n_replicates));
    for (int r = 0; r < n_replicates; ++r) {
        std::vector<Eigen::Index> pool = rest;
        auto rng_r = seeded_rng(seed, static_cast<std::uint32_t>(2 + r));
        std::shuffle(pool.begin(), pool.end(), rng_r);
        pool.resize(static_cast<std::size_t>(n_train));
        out.trains.push_back(take_rows(d, pool, d.name + "/train" + std::to_string(r)));
    }
    return out;
}

Dataset load_csv(const std::string& path, const std::vector<int>& x_cols, int y_col,
                 bool has_header) {
    if (x_cols.empty()) throw config_error("load_csv: need at least one feature column");
    std::ifstream in(path);
    if (!in) throw data_error("load_csv: cannot open '" + path + "'");

    int max_col = y_col;
    for (int c : x_cols) max_col = std::max(max_col, c);

    std::vector<std::vector<double>> xs;
    std::vector<double> ys;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (has_header && row == 1) continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank line
        const auto fields = split_fields(line);
        if (static_cast<int>(fields.size()) <= max_col) {
            throw data_error(path + ":" + std::to_string(row) + ": expected at least " +
                             std::to_string(max_col + 1) + " columns, found " +
                             std::to_string(fields.size()));
        }
        std::vector<double> x(x_cols.size());
        for (std::size_t k = 0; k < x_cols.size(); ++k) {
            if (!parse_double(fields[static_cast<std::size_t>(x_cols[k])], x[k])) {
                throw data_error(path + ":" + std::to_string(row) + ": field " +
                                 std::to_string(x_cols[k]) + " is not a number");
            }
        }
        double y;
        if (!parse_double(fields[static_cast<std::size_t>(y_col)], y)) {
            throw data_error(path + ":" + std::to_string(row) + ": field " +
                             std::to_string(y_col) + " is not a number");
        }
        xs.push_back(std::move(x));
        ys.push_back(y);
    }
    if (ys.empty()) throw data_error("load_csv: '" + path + "' contains no data rows");

    Dataset d;
    d.xs.resize(static_cast<Eigen::Index>(x_cols.size()), static_cast<Eigen::Index>(ys.size()));
    d.ys.resize(static_cast<Eigen::Index>(ys.size()));
    for (std::size_t i = 0; i < ys.size(); ++i) {
        for (std::size_t k = 0; k < x_cols.size(); ++k) {
            d.xs(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = xs[i][k];
        }
        d.ys[static_cast<Eigen::Index>(i)] = ys[i];
    }
    d.name = path;
    return d;
}

void write_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("write_csv: cannot open '" + path + "' for writing");
    for (Eigen::Index k = 0; k < d.dim(); ++k) out << "x" << k << ",";
    out << "y\n";
    char buf[64];
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        for (Eigen::Index k = 0; k < d.dim(); ++k) {
            std::snprintf(buf, sizeof buf, "%.12g", d.xs(k, i));
            out << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.12g", d.ys[i]);
        out << buf << "\n";
    }
}

Dataset minmax_scale(const Dataset& d, bool scale_target) {
    auto rescale = [](double v, double lo, double hi) {
        if (hi <= lo) return 0.0;
        return 2.0 * (v - lo) / (hi - lo) - 1.0;
    };
    Dataset out = d;
    for (Eigen::Index k = 0; k < d.dim(); ++k) {
        const double lo = d.xs.row(k).minCoeff();
        const double hi = d.xs.row(k).maxCoeff();
        for (Eigen::Index i = 0; i < d.size(); ++i) out.xs(k, i) = rescale(d.xs(k, i), lo, hi);
    }
    if (scale_target) {
        const double lo = d.ys.minCoeff();
        const double hi = d.ys.maxCoeff();
        for (Eigen::Index i = 0; i < d.size(); ++i) out.ys[i] = rescale(d.ys[i], lo, hi);
    }
    return out;
}

}  // namespace colk
