#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "colk/kernel.hpp"
#include "colk/solve.hpp"

using namespace colk;

namespace {

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v[0] = x;
    return v;
}

KernelExpansion random_expansion(std::mt19937_64& rng, Eigen::Index m, Eigen::Index p,
                                 double bandwidth = 0.5) {
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Dictionary dict(p, m);
    Eigen::VectorXd w(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k < p; ++k) dict(k, j) = ux(rng);
        w[j] = gauss(rng);
    }
    return KernelExpansion(Kernel::gaussian(bandwidth), std::move(dict), std::move(w));
}

}  // namespace

TEST_CASE("gaussian kernel point evaluations") {
    const Kernel k = Kernel::gaussian(0.06);
    CHECK(k(vec1(0.37), vec1(0.37)) == doctest::Approx(1.0));
    // exp(-|0 - 0.06|^2 / (2 * 0.06^2)) = exp(-1/2)
    CHECK(k(vec1(0.0), vec1(0.06)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(k(vec1(0.0), vec1(0.06)) == doctest::Approx(0.606531).epsilon(1e-6));
    CHECK(k(vec1(-0.8), vec1(0.9)) == k(vec1(0.9), vec1(-0.8)));
    CHECK(k(vec1(-0.8), vec1(0.9)) > 0.0);
    CHECK(k(vec1(-0.8), vec1(0.9)) <= 1.0);
}

TEST_CASE("polynomial kernel point evaluations") {
    const Kernel k = Kernel::polynomial(1.0, 2);
    CHECK(k(vec1(1.0), vec1(2.0)) == doctest::Approx(9.0));
    CHECK(k(vec1(2.0), vec1(1.0)) == doctest::Approx(9.0));
    Eigen::VectorXd u(2), v(2);
    u << 1.0, 2.0;
    v << 3.0, -1.0;
    CHECK(k(u, v) == doctest::Approx((1.0 * 3.0 - 2.0 + 1.0) * (1.0 * 3.0 - 2.0 + 1.0)));
}

TEST_CASE("kernel construction rejects bad parameters") {
    CHECK_THROWS_AS(Kernel::gaussian(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Kernel::gaussian(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Kernel::polynomial(1.0, 0), std::invalid_argument);
}

TEST_CASE("kernel evaluation rejects dimension mismatch") {
    const Kernel k = Kernel::gaussian(0.5);
    Eigen::VectorXd u(2);
    u << 0.0, 1.0;
    CHECK_THROWS_AS(k(u, vec1(0.0)), std::invalid_argument);
}

TEST_CASE("kernel matrix entries and symmetry") {
    const Kernel k = Kernel::gaussian(0.06);
    Dictionary d1(1, 2);
    d1 << 0.0, 0.06;
    Dictionary d2(1, 1);
    d2 << 0.0;
    const Eigen::MatrixXd K = kernel_matrix(k, d1, d2);
    REQUIRE(K.rows() == 2);
    REQUIRE(K.cols() == 1);
    CHECK(K(0, 0) == doctest::Approx(1.0));
    CHECK(K(1, 0) == doctest::Approx(0.606531).epsilon(1e-6));

    Dictionary single(1, 1);
    single << 0.42;
    const Eigen::MatrixXd Ks = kernel_matrix(k, single, single);
    CHECK(Ks(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("kernel matrix with duplicate columns is rank deficient") {
    const Kernel k = Kernel::gaussian(0.5);
    Dictionary d(1, 3);
    d << 0.1, 0.1, 0.7;
    const Eigen::MatrixXd K = kernel_matrix(k, d, d);
    CHECK(K.row(0) == K.row(1));
    CHECK(K.col(0) == K.col(1));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    CHECK(lu.rank() == 2);
}

TEST_CASE("kernel matrix is symmetric PSD on random dictionaries") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 10);
        Dictionary d(2, m);
        for (Eigen::Index j = 0; j < m; ++j) {
            d(0, j) = ux(rng);
            d(1, j) = ux(rng);
        }
        const Eigen::MatrixXd K = kernel_matrix(Kernel::gaussian(0.3), d, d);
        CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("expansion evaluation") {
    const Kernel k = Kernel::gaussian(0.06);

    const KernelExpansion zero(k, 1);
    CHECK(zero(vec1(0.3)) == 0.0);
    CHECK(zero.empty());

    Dictionary d(1, 1);
    d << 0.5;
    const KernelExpansion f(k, d, vec1(3.0));
    CHECK(f(vec1(0.5)) == doctest::Approx(3.0));

    Dictionary d0(1, 1);
    d0 << 0.0;
    const KernelExpansion g(k, d0, vec1(2.0));
    CHECK(g(vec1(0.06)) == doctest::Approx(1.213061).epsilon(1e-6));

    CHECK_THROWS_AS(f(Eigen::VectorXd::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(KernelExpansion(k, d, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("hilbert inner products") {
    const Kernel k = Kernel::gaussian(0.06);
    Dictionary d(1, 1);
    d << 0.2;
    const KernelExpansion f(k, d, vec1(2.0));
    const KernelExpansion zero(k, 1);

    CHECK(hilbert_inner(zero, f) == 0.0);
    CHECK(hilbert_inner(f, f) == doctest::Approx(4.0));

    Dictionary da(1, 1), db(1, 1);
    da << 0.0;
    db << 0.06;
    const KernelExpansion a(k, da, vec1(1.0));
    const KernelExpansion b(k, db, vec1(1.0));
    CHECK(hilbert_inner(a, b) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(hilbert_inner(a, b) == hilbert_inner(b, a));

    const KernelExpansion other(Kernel::gaussian(0.5), 1);
    CHECK_THROWS_AS(hilbert_inner(f, other), std::invalid_argument);
}

TEST_CASE("hilbert norm") {
    const Kernel k = Kernel::gaussian(0.06);
    CHECK(hilbert_norm(KernelExpansion(k, 1)) == 0.0);

    Dictionary d(1, 1);
    d << 0.3;
    CHECK(hilbert_norm(KernelExpansion(k, d, vec1(-2.5))) == doctest::Approx(2.5));

    Dictionary dd(1, 2);
    dd << 0.3, 0.3;
    Eigen::VectorXd w(2);
    w << 1.5, 1.5;
    CHECK(hilbert_norm(KernelExpansion(k, dd, w)) == doctest::Approx(3.0));
}

TEST_CASE("diff norm") {
    const Kernel k = Kernel::gaussian(0.06);
    Dictionary d(1, 1);
    d << 0.3;
    const KernelExpansion f(k, d, vec1(1.0));
    CHECK(diff_norm(f, f) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(diff_norm(f, KernelExpansion(k, 1)) == doctest::Approx(1.0));

    // same function, different representations
    Dictionary dd(1, 2);
    dd << 0.3, 0.3;
    Eigen::VectorXd w(2);
    w << 0.7, 0.4;
    const KernelExpansion merged(k, d, vec1(1.1));
    const KernelExpansion split(k, dd, w);
    CHECK(diff_norm(merged, split) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("diff norm expands as |f|^2 - 2<f,g> + |g|^2") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const KernelExpansion f = random_expansion(rng, 1 + (trial % 5), 2);
        const KernelExpansion g = random_expansion(rng, 1 + ((trial + 2) % 5), 2);
        const double lhs = diff_norm(f, g) * diff_norm(f, g);
        const double rhs =
            hilbert_inner(f, f) - 2.0 * hilbert_inner(f, g) + hilbert_inner(g, g);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("cauchy-schwarz reproducing bound on random expansions") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const KernelExpansion f = random_expansion(rng, 1 + (trial % 6), 1);
        const Eigen::VectorXd u = vec1(ux(rng));
        const double bound =
            hilbert_norm(f) * std::sqrt(f.kernel()(u, u)) + 1e-10;
        CHECK(std::abs(f(u)) <= bound);
    }
}

TEST_CASE("subspace distance basics") {
    const Kernel k = Kernel::gaussian(0.5);

    CHECK(subspace_distance(k, Dictionary(1, 0), vec1(0.7)) == doctest::Approx(1.0));

    Dictionary d(1, 3);
    d << -0.5, 0.1, 0.8;
    CHECK(subspace_distance(k, d, vec1(0.1)) == doctest::Approx(0.0).epsilon(1e-7));

    // duplicating a dictionary column barely moves the result
    Dictionary ddup(1, 4);
    ddup << -0.5, 0.1, 0.8, 0.1;
    const Eigen::VectorXd xi = vec1(0.33);
    CHECK(std::abs(subspace_distance(k, d, xi) - subspace_distance(k, ddup, xi)) < 1e-7);
}

TEST_CASE("subspace distance matches a dense least-squares oracle") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    const Kernel k = Kernel::gaussian(0.5);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 6);
        // keep atoms separated so the normal equations stay well conditioned
        // and both solve routes target the same minimizer
        Dictionary d(1, m);
        for (Eigen::Index j = 0; j < m; ++j) {
            double cand = ux(rng);
            for (Eigen::Index tries = 0; tries < 200; ++tries) {
                bool far = true;
                for (Eigen::Index i = 0; i < j; ++i) far = far && std::abs(cand - d(0, i)) > 0.25;
                if (far) break;
                cand = ux(rng);
            }
            d(0, j) = cand;
        }
        const Eigen::VectorXd xi = vec1(ux(rng));

        // independent route: minimize |kappa(xi,.) - v' kappa_D(.)|^2 by the
        // plain normal equations, evaluate the residual by expansion
        const Eigen::MatrixXd K = kernel_matrix(k, d, d);
        const Eigen::VectorXd kx = kernel_map(k, d, xi);
        const Eigen::VectorXd v = K.ldlt().solve(kx);
        const double resid2 = k(xi, xi) - 2.0 * v.dot(kx) + v.dot(K * v);
        const double oracle = std::sqrt(std::max(resid2, 0.0));

        CHECK(subspace_distance(k, d, xi) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("psd_solve survives singular systems") {
    Eigen::MatrixXd K(2, 2);
    K << 1.0, 1.0, 1.0, 1.0;
    Eigen::VectorXd b(2);
    b << 2.0, 2.0;
    const Eigen::VectorXd x = psd_solve(K, b);
    CHECK((K * x - b).norm() < 1e-6);
}
