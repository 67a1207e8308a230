#include "colk/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "colk/errors.hpp"

namespace colk {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw config_error("config: '" + key + "' expects a number, got '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long d = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw config_error("config: '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error("config: '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(static_cast<int>(to_long(key, item)));
    }
    if (out.empty()) throw config_error("config: '" + key + "' expects column indices");
    return out;
}

// kernel settings need to be collected before the Kernel value is rebuilt
struct KernelDraft {
    std::string type = "gaussian";
    double bandwidth = 0.06;
    double offset = 1.0;
    int degree = 2;

    Kernel build() const {
        if (type == "gaussian") return Kernel::gaussian(bandwidth);
        if (type == "polynomial") return Kernel::polynomial(offset, degree);
        throw config_error("config: kernel.type must be 'gaussian' or 'polynomial'");
    }
};

KernelDraft draft_of(const Kernel& k) {
    KernelDraft d;
    d.type = k.name();
    if (const auto* g = k.as_gaussian()) {
        d.bandwidth = g->bandwidth;
    } else if (const auto* p = k.as_polynomial()) {
        d.offset = p->offset;
        d.degree = p->degree;
    }
    return d;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::colk: return "colk";
        case Method::colk_scgd_tracker: return "colk-scgd-tracker";
        case Method::polk: return "polk";
        case Method::bsgd: return "bsgd";
        case Method::rbf: return "rbf";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    if (s == "colk") return Method::colk;
    if (s == "colk-scgd-tracker") return Method::colk_scgd_tracker;
    if (s == "polk") return Method::polk;
    if (s == "bsgd") return Method::bsgd;
    if (s == "rbf") return Method::rbf;
    throw config_error("config: unknown method '" + s + "'");
}

void ExperimentConfig::validate() const {
    learner.validate();
    if (synthetic) {
        noise.validate();
        if (data_n < 2) throw config_error("data.n must be >= 2");
        if (!(x_lo < x_hi)) throw config_error("data.x_min must be < data.x_max");
    } else if (data_path.empty()) {
        throw config_error("data.path is required when data.source = csv");
    }
    if (!(test_frac > 0.0 && test_frac < 1.0)) throw config_error("data.test_frac must be in (0,1)");
    if (!(train_frac > 0.0 && train_frac <= 1.0)) {
        throw config_error("data.train_frac must be in (0,1]");
    }
    if (n_iters < 0) throw config_error("n_iters must be >= 0");
    if (eval_every < 1) throw config_error("eval_every must be >= 1");
    if (n_replicates < 1) throw config_error("n_replicates must be >= 1");
    if (bsgd_max_order < 1) throw config_error("bsgd.max_order must be >= 1");
    if (rbf_n_centers < 1) throw config_error("rbf.n_centers must be >= 1");
    if (!(rbf_bandwidth > 0.0)) throw config_error("rbf.bandwidth must be > 0");
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    KernelDraft kd = draft_of(cfg.learner.kernel);
    const std::string v = trim(value);
    if (key == "method") cfg.method = parse_method(v);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(key, v));
    else if (key == "n_iters") cfg.n_iters = to_long(key, v);
    else if (key == "eval_every") cfg.eval_every = to_long(key, v);
    else if (key == "n_replicates") cfg.n_replicates = static_cast<int>(to_long(key, v));
    else if (key == "out.dir") cfg.out_dir = v;
    else if (key == "learner.alpha" || key == "alpha") cfg.learner.alpha = to_double(key, v);
    else if (key == "learner.beta" || key == "beta") cfg.learner.beta = to_double(key, v);
    else if (key == "learner.lambda" || key == "lambda") cfg.learner.lambda = to_double(key, v);
    else if (key == "learner.eps" || key == "eps") cfg.learner.eps = to_double(key, v);
    else if (key == "learner.eta" || key == "eta") cfg.learner.eta = to_double(key, v);
    else if (key == "learner.moment_p") cfg.learner.moment_p = static_cast<int>(to_long(key, v));
    else if (key == "learner.w_max") cfg.learner.w_max = to_double(key, v);
    else if (key == "kernel.type") { kd.type = v; cfg.learner.kernel = kd.build(); return; }
    else if (key == "kernel.bandwidth") { kd.bandwidth = to_double(key, v); cfg.learner.kernel = kd.build(); return; }
    else if (key == "kernel.offset") { kd.offset = to_double(key, v); cfg.learner.kernel = kd.build(); return; }
    else if (key == "kernel.degree") { kd.degree = static_cast<int>(to_long(key, v)); cfg.learner.kernel = kd.build(); return; }
    else if (key == "data.source") {
        if (v == "synthetic") cfg.synthetic = true;
        else if (v == "csv") cfg.synthetic = false;
        else throw config_error("config: data.source must be 'synthetic' or 'csv'");
    }
    else if (key == "data.n") cfg.data_n = to_long(key, v);
    else if (key == "data.sigma") cfg.noise.sigma = to_double(key, v);
    else if (key == "data.contam_prob") cfg.noise.contam_prob = to_double(key, v);
    else if (key == "data.contam_scale") cfg.noise.contam_scale = to_double(key, v);
    else if (key == "data.x_min") cfg.x_lo = to_double(key, v);
    else if (key == "data.x_max") cfg.x_hi = to_double(key, v);
    else if (key == "data.path") { cfg.data_path = v; cfg.synthetic = false; }
    else if (key == "data.x_cols") cfg.x_cols = to_int_list(key, v);
    else if (key == "data.y_col") cfg.y_col = static_cast<int>(to_long(key, v));
    else if (key == "data.has_header") cfg.has_header = to_bool(key, v);
    else if (key == "data.standardize") cfg.standardize = to_bool(key, v);
    else if (key == "data.test_frac") cfg.test_frac = to_double(key, v);
    else if (key == "data.train_frac") cfg.train_frac = to_double(key, v);
    else if (key == "bsgd.max_order") cfg.bsgd_max_order = to_long(key, v);
    else if (key == "rbf.n_centers") cfg.rbf_n_centers = to_long(key, v);
    else if (key == "rbf.bandwidth") cfg.rbf_bandwidth = to_double(key, v);
    else throw config_error("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error(path + ":" + std::to_string(row) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_override(cfg, key, value);
        } catch (const config_error& e) {
            throw config_error(path + ":" + std::to_string(row) + ": " + e.what());
        }
    }
    return cfg;
}

}  // namespace colk
