#include <doctest.h>

#include "minksum/smoothing.hpp"
#include "random_problems.hpp"

using namespace minksum;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

using testgen::random_problem;

CanonicalTerm unit_ball_term() { return canonicalize(identity_term(Ball{v2(0, 0), 1.0})); }

} // namespace

TEST_CASE("spectral norm against SVD") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        const Mat m = oracle::random_mat(rng, 1 + t % 5, 1 + (t / 5) % 4);
        CHECK(spectral_norm(m) == doctest::Approx(oracle::spectral_norm_svd(m)).epsilon(1e-9));
    }
    Mat d = Mat::Zero(3, 3);
    d.diagonal() << 1, -7, 3;
    CHECK(spectral_norm(d) == 7.0);
    CHECK(spectral_norm(Mat::Zero(2, 3)) == 0.0);
}

TEST_CASE("smoothed support examples") {
    const auto ball = unit_ball_term();
    CHECK(smoothed_support(ball, v2(2, 0), 1.0) == doctest::Approx(1.5));
    CHECK(smoothed_support(ball, v2(0.5, 0), 1.0) == doctest::Approx(0.125));
    CHECK(smoothed_support(ball, v2(0, 0), 1.0) == 0.0);
    CHECK(smoothed_support_grad(ball, v2(2, 0), 1.0).isApprox(v2(1, 0)));
    CHECK_THROWS_AS(smoothed_support(ball, v2(1, 0), 0.0), InvalidInput);
    CHECK_THROWS_AS(smoothed_support_grad(ball, v2(1, 0), -1.0), InvalidInput);

    // u = 0: M^T P(0).
    const auto box = canonicalize(identity_term(Box{v2(1, -2), v2(3, 2)}));
    CHECK(smoothed_support_grad(box, v2(0, 0), 0.7).isApprox(v2(1, 0)));
}

TEST_CASE("smoothed support matches dense maximization") {
    const auto ball = unit_ball_term();
    const auto simplex = canonicalize(identity_term(UnitSimplex{3}));
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const double mu = 0.2 + 0.4 * t;
        const Vec w = oracle::random_vec(rng, 2, 2.0);
        CHECK(smoothed_support(ball, w, mu) == doctest::Approx(oracle::smoothed_disk_support(w, mu)).epsilon(1e-4));
        const Vec w3 = oracle::random_vec(rng, 3, 2.0);
        CHECK(smoothed_support(simplex, w3, mu) ==
              doctest::Approx(oracle::smoothed_simplex3_support(w3, mu)).epsilon(1e-4));
    }
}

TEST_CASE("smoothing sandwich, monotonicity in mu and gradient Lipschitz bound per term") {
    std::mt19937_64 rng(3);
    int samples = 0;
    for (int b = 0; b < 10; ++b) {
        const auto problem = random_problem(rng, 2 + b % 2);
        for (const auto& term : problem.terms()) {
            const auto c = canonicalize(term);
            const double r = radius_bound(c.simple_body);
            const double lip = std::pow(spectral_norm(c.matrix), 2);
            for (int k = 0; k < 100; ++k, ++samples) {
                const Vec u = oracle::random_vec(rng, problem.ambient_dim(), 3.0);
                const double mu = std::exp(std::uniform_real_distribution<double>(-4, 2)(rng));
                const double exact = support_value(c.simple_body, Vec(c.matrix.transpose() * u));
                const double smooth = smoothed_support(c, u, mu);
                const double slack = 1e-10 * (1.0 + std::abs(exact));
                CHECK(smooth <= exact + slack);
                CHECK(exact <= smooth + 0.5 * mu * r * r + slack);
                CHECK(smoothed_support(c, u, 2.0 * mu) <= smooth + slack);
                const Vec v = oracle::random_vec(rng, problem.ambient_dim(), 3.0);
                CHECK((smoothed_support_grad(c, u, mu) - smoothed_support_grad(c, v, mu)).norm() <=
                      lip / mu * (u - v).norm() * (1.0 + 1e-9) + 1e-12);
            }
        }
    }
    CHECK(samples >= 1000);
}

TEST_CASE("dual value examples") {
    MinkowskiProblem ball({identity_term(Ball{v2(0, 0), 1.0})});
    CHECK(dual_value(ball, v2(2, 0)) == doctest::Approx(3.0));
    CHECK(dual_value(ball, v2(0, 0)) == 0.0);

    SmoothedDual sd(ball, 1.0);
    CHECK(sd.value(v2(2, 0)) == doctest::Approx(2.5));
    CHECK(sd.value(v2(0, 0)) == 0.0);
    CHECK(sd.gradient(v2(2, 0)).isApprox(v2(2, 0)));
    CHECK(sd.gradient(v2(0, 0)).norm() == 0.0);
}

TEST_CASE("Lipschitz constant examples") {
    MinkowskiProblem one({identity_term(Ball{v2(0, 0), 1.0})});
    MinkowskiProblem two({identity_term(Ball{v2(0, 0), 1.0}), identity_term(Box{v2(0, 0), v2(1, 1)})});
    CHECK(lipschitz_constant(one, 0.1) == doctest::Approx(10.5));
    CHECK(lipschitz_constant(two, 1.0) == doctest::Approx(2.5));
    CHECK(lipschitz_constant(one, 1e12) == doctest::Approx(0.5));
    CHECK_THROWS_AS(lipschitz_constant(one, 0.0), InvalidInput);
    // Ellipsoids contribute ||A B^{1/2}||^2 = lambda_max(B) for identity A.
    Mat b(2, 2);
    b << 4, 0, 0, 1;
    MinkowskiProblem ell({identity_term(Ellipsoid{b, v2(0, 0)})});
    CHECK(lipschitz_constant(ell, 2.0) == doctest::Approx(2.5));
}

TEST_CASE("dual gradient matches finite differences") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto problem = random_problem(rng, 2 + t % 2);
        const double mu = std::exp(std::uniform_real_distribution<double>(-1, 2)(rng));
        SmoothedDual sd(problem, mu);
        const Vec u = oracle::random_vec(rng, problem.ambient_dim(), 2.0);
        const Vec g = sd.gradient(u);
        const Vec fd = oracle::fd_gradient([&](const Vec& x) { return sd.value(x); }, u, 1e-6);
        CHECK((g - fd).norm() <= 1e-5 * std::max(1.0, g.norm()));
    }
}

TEST_CASE("dual sandwich and Lipschitz bound") {
    std::mt19937_64 rng(5);
    int samples = 0;
    for (int t = 0; t < 20; ++t) {
        const auto problem = random_problem(rng, 2 + t % 2);
        for (double mu : {0.01, 0.3, 5.0}) {
            SmoothedDual sd(problem, mu);
            // D_f from the simple-body radii, computed here directly.
            double df = 0.0;
            for (const auto& term : problem.terms()) df += 0.5 * std::pow(radius_bound(canonicalize(term).simple_body), 2);
            CHECK(sd.d_f() == doctest::Approx(df));
            for (int k = 0; k < 20; ++k, ++samples) {
                const Vec u = oracle::random_vec(rng, problem.ambient_dim(), 3.0);
                const double f = dual_value(problem, u);
                const double fm = sd.value(u);
                const double slack = 1e-10 * (1.0 + std::abs(f));
                CHECK(fm <= f + slack);
                CHECK(f <= fm + mu * sd.d_f() + slack);
                const Vec v = oracle::random_vec(rng, problem.ambient_dim(), 3.0);
                CHECK((sd.gradient(u) - sd.gradient(v)).norm() <= sd.l_mu() * (u - v).norm() * (1.0 + 1e-9));
            }
        }
    }
    CHECK(samples >= 1000);
}

TEST_CASE("dual value lower bound") {
    // f(u) >= -d(0;Q)^2, with equality at u = -2 x*. Ball((3,4), 1): x* = (2.4, 3.2), d = 4.
    MinkowskiProblem p({identity_term(Ball{v2(3, 4), 1.0})});
    CHECK(dual_value(p, v2(-4.8, -6.4)) == doctest::Approx(-16.0));
    std::mt19937_64 rng(6);
    for (int k = 0; k < 200; ++k) CHECK(dual_value(p, oracle::random_vec(rng, 2, 10.0)) >= -16.0 - 1e-12);
}

TEST_CASE("SmoothedDual with_mu keeps the canonical data") {
    MinkowskiProblem p({identity_term(UnitSimplex{3})});
    SmoothedDual a(p, 1.0);
    const auto b = a.with_mu(0.5);
    CHECK(&a.canonical() == &b.canonical());
    CHECK(b.l_mu() == doctest::Approx(2.5));
    CHECK(a.offsets_sum() == v3(0, 0, 0));
}
