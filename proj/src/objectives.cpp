#include "colk/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace colk {

double square_loss(const KernelExpansion& f, const Eigen::VectorXd& x, double y) {
    const double r = f(x) - y;
    return r * r;
}

MomentRegression::MomentRegression(double eta, int moment_p) : eta_(eta), moment_p_(moment_p) {
    if (eta < 0.0) throw std::invalid_argument("MomentRegression: eta must be >= 0");
    if (moment_p < 2 || moment_p > 4) {
        throw std::invalid_argument("MomentRegression: moment order must be in {2,3,4}");
    }
}

Eigen::VectorXd MomentRegression::inner_h(const KernelExpansion& f,
                                          const RegressionSample& s) const {
    Eigen::VectorXd h(1);
    h[0] = square_loss(f, s.x_prime, s.y_prime);
    return h;
}

Eigen::VectorXd MomentRegression::inner_h_at(const KernelExpansion& f_prev,
                                             const RegressionSample& s) const {
    return inner_h(f_prev, s);
}

std::pair<double, double> moment_atom_coeffs(double fx, double y, double fxp, double y_prime,
                                             double g, double eta, int moment_p) {
    const double r = fx - y;
    const double base = r * r - g;
    // sum_{p=2}^P m(p, g) with m(p, g) = p * base^(p-1)
    double msum = 0.0;
    double pw = base;  // base^(p-1)
    for (int p = 2; p <= moment_p; ++p) {
        msum += p * pw;
        pw *= base;
    }
    const double cx = 2.0 * r * (1.0 + eta * msum);
    const double cxp = -2.0 * (fxp - y_prime) * eta * msum;
    return {cx, cxp};
}

GradientAtoms MomentRegression::gradient_atoms(const KernelExpansion& f,
                                               const RegressionSample& s,
                                               const Eigen::VectorXd& g) const {
    if (g.size() != 1) throw std::invalid_argument("MomentRegression: tracker must be scalar");
    const auto [cx, cxp] = moment_atom_coeffs(f(s.x), s.y, f(s.x_prime), s.y_prime, g[0], eta_,
                                              moment_p_);
    return {{s.x, cx}, {s.x_prime, cxp}};
}

double MomentRegression::loss_estimate(const KernelExpansion& f, const RegressionSample& s,
                                       const Eigen::VectorXd& g) const {
    const double l = square_loss(f, s.x, s.y);
    const double base = l - g[0];
    double disp = 0.0;
    double pw = base * base;
    for (int p = 2; p <= moment_p_; ++p) {
        disp += pw;
        pw *= base;
    }
    return l + eta_ * disp;
}

double moment_dispersion_estimate(std::span<const double> losses, int moment_p) {
    if (losses.empty()) throw std::invalid_argument("moment_dispersion_estimate: empty input");
    if (moment_p < 2 || moment_p > 4) {
        throw std::invalid_argument("moment_dispersion_estimate: moment order must be in {2,3,4}");
    }
    const double n = static_cast<double>(losses.size());
    double mean = 0.0;
    for (double l : losses) mean += l;
    mean /= n;
    double out = 0.0;
    for (int p = 2; p <= moment_p; ++p) {
        double m = 0.0;
        for (double l : losses) m += std::pow(l - mean, p);
        out += m / n;
    }
    return out;
}

double smoothed_semivariance_pos(double z, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("smoothed_semivariance_pos: tau must be > 0");
    // softplus, written to avoid exp overflow for large |z|/tau
    const double a = z / tau;
    return tau * (std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a))));
}

}  // namespace colk
