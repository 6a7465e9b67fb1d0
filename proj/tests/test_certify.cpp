#include <doctest.h>

#include "minksum/certify.hpp"
#include "minksum/problem_io.hpp"
#include "oracles.hpp"

using namespace minksum;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

MinkowskiProblem load(const char* name) { return io::parse_problem(std::string(MINKSUM_DATA_DIR) + "/" + name); }

} // namespace

TEST_CASE("oracle examples") {
    MinkowskiProblem ball({identity_term(Ball{v2(5, 0), 1.0})});
    CHECK((oracle_solve(ball).point - v2(4, 0)).norm() < 1e-8);

    Mat v(3, 2);
    v << -2, 1, 2, 1, 1, 2;
    MinkowskiProblem tri({identity_term(VPolytope{v})});
    CHECK((oracle_solve(tri).point - v2(0, 1)).norm() < 1e-8);

    MinkowskiProblem two({identity_term(Ball{v2(5, 0), 1.0}), identity_term(Ball{v2(5, 0), 1.0})});
    const auto r = oracle_solve(two);
    CHECK((r.point - v2(8, 0)).norm() < 1e-8);
    CHECK(r.gradient_map_norm <= 1e-9);

    CHECK_THROWS_AS(oracle_solve(ball, 0.0), InvalidInput);
    CHECK_THROWS_AS(oracle_solve(load("three_body.json"), 1e-14, 3), ConvergenceError);
}

TEST_CASE("oracle agrees with the direction-scan distance on planar problems") {
    for (const char* name : {"triangle.json", "three_body.json", "ellipses_q.json", "ellipses_p.json"}) {
        const auto p = load(name);
        const double d = oracle::planar_distance([&](const Vec& u) { return minkowski_support(p, u).value; });
        CHECK(oracle_solve(p).point.norm() == doctest::Approx(d).epsilon(1e-7));
    }
}

TEST_CASE("certificate on exact and solved problems") {
    MinkowskiProblem ball({identity_term(Ball{v2(5, 0), 1.0})});
    const auto exact = certify(ball, v2(4, 0), {v2(4, 0)});
    CHECK(exact.pass);
    CHECK(exact.gap == doctest::Approx(0.0));
    CHECK(exact.normal_residuals.at(0) == doctest::Approx(0.0));
    CHECK(exact.decomposition_residual == 0.0);

    const auto problem = load("three_body.json");
    const auto report = nesmino(problem);
    const auto c = certify(problem, report, 1e-3, oracle_solve(problem).point.norm());
    CHECK(c.pass);
    for (double r : c.normal_residuals) {
        CHECK(r <= 1e-3);
        CHECK(r >= -1e-9);
    }
    CHECK(c.gap <= 1e-3);
    CHECK(c.distance_error_bound >= 0.0);
}

TEST_CASE("certificate rejects perturbed solutions") {
    const auto problem = load("three_body.json");
    const auto report = nesmino(problem);
    std::mt19937_64 rng(31);
    for (int k = 0; k < 20; ++k) {
        const Vec noise = oracle::random_vec(rng, 2);
        const Vec y = report.solution + 0.1 * report.solution.norm() * noise / noise.norm();
        CHECK_FALSE(certify(problem, y, report.constituents).pass);
    }
    CHECK_FALSE(certify(problem, Vec(1.1 * report.solution), report.constituents).pass);
    // Constituents outside their bodies.
    auto moved = report.constituents;
    moved[0] += v2(1, 1);
    CHECK_FALSE(certify(problem, problem.assemble(moved), moved).pass);
    // Disagreement with a supplied oracle distance.
    CHECK_FALSE(certify(problem, report, 1e-3, report.distance + 1.0).pass);
    CHECK_THROWS_AS(certify(problem, Vec::Zero(3), report.constituents), InvalidInput);
}

TEST_CASE("certificate tolerates a solution just outside the set") {
    // y = (4 - 1e-7, 0) is 1e-7 outside Ball((5,0),1): gap = -||y|| * 1e-7.
    MinkowskiProblem ball({identity_term(Ball{v2(5, 0), 1.0})});
    const Vec y = v2(4.0 - 1e-7, 0);
    const auto c = certify(ball, y, {y});
    CHECK(c.gap < -3e-7);
    CHECK(c.membership_residual == doctest::Approx(1e-7));
    CHECK(c.pass);
    // Further out, membership exceeds the tolerance.
    const Vec far = v2(3.9, 0);
    CHECK_FALSE(certify(ball, far, {far}).pass);
}

TEST_CASE("distance error bound follows from the gap") {
    // For y in Q: ||y||^2 - d^2 <= 2 g and ||y|| - d <= min(sqrt(2g), 2g / ||y||).
    const auto problem = load("ellipses_q.json");
    const double d = oracle_solve(problem).point.norm();
    std::mt19937_64 rng(32);
    for (int k = 0; k < 50; ++k) {
        const auto s = minkowski_support(problem, oracle::random_vec(rng, 2));
        const auto c = certify(problem, s.point, s.constituents);
        CHECK(c.distance - d <= c.distance_error_bound + 1e-9);
    }
}

TEST_CASE("difference construction support identity") {
    const auto q = load("ellipses_q.json");
    const auto p = load("ellipses_p.json");
    const auto diff = difference_problem(q, p);
    CHECK(diff.size() == 3);
    std::mt19937_64 rng(33);
    for (int k = 0; k < 100; ++k) {
        const Vec u = oracle::random_vec(rng, 2);
        const double expected = minkowski_support(q, u).value + minkowski_support(p, Vec(-u)).value;
        CHECK(minkowski_support(diff, u).value == doctest::Approx(expected).epsilon(1e-12));
    }
    MinkowskiProblem other({identity_term(Ball{Vec::Zero(3), 1.0})});
    CHECK_THROWS_AS(difference_problem(q, other), InvalidInput);
}

TEST_CASE("closest pair examples") {
    MinkowskiProblem a({identity_term(Ball{v2(0, 0), 1.0})});
    MinkowskiProblem b({identity_term(Ball{v2(5, 0), 1.0})});
    for (const auto& pair : {closest_pair(a, b), closest_pair(a, b, GilbertParams{})}) {
        CHECK(pair.distance == doctest::Approx(3.0).epsilon(1e-6));
        CHECK((pair.a - v2(1, 0)).norm() < 1e-3);
        CHECK((pair.b - v2(4, 0)).norm() < 1e-3);
        CHECK((pair.a - pair.b - pair.report.solution).norm() < 1e-12);
    }

    Mat single(1, 2);
    single << 2, 3;
    MinkowskiProblem s({identity_term(VPolytope{single})});
    CHECK(closest_pair(s, s).distance < 1e-12);

    // Three-ellipse instance against the direction scan.
    const auto q = load("ellipses_q.json");
    const auto p = load("ellipses_p.json");
    const auto diff = difference_problem(q, p);
    Vec nearest;
    const double d = oracle::planar_distance([&](const Vec& u) { return minkowski_support(diff, u).value; }, &nearest);
    const auto pair = closest_pair(q, p);
    CHECK(pair.distance == doctest::Approx(d).epsilon(1e-7));
    CHECK((pair.a - pair.b - nearest).norm() < 1e-3);
    CHECK(certify(diff, pair.report).pass);
}
