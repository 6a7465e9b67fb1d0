#include "minksum/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace minksum {

namespace {

struct ProductSpace {
    const MinkowskiProblem& problem;

    Vec image(const std::vector<Vec>& w) const { return problem.assemble(w); }

    std::vector<Vec> gradient(const Vec& r) const {
        std::vector<Vec> g;
        g.reserve(problem.size());
        for (const auto& t : problem.terms()) g.push_back(t.matrix.transpose() * r);
        return g;
    }

    std::vector<Vec> step(const std::vector<Vec>& w, const std::vector<Vec>& g, double inv_l) const {
        std::vector<Vec> out;
        out.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            out.push_back(project(problem.terms()[i].body, Vec(w[i] - inv_l * g[i])));
        }
        return out;
    }
};

double squared_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
    return s;
}

} // namespace

OracleResult oracle_solve(const MinkowskiProblem& problem, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw InvalidInput("oracle_solve: tol must be positive");
    const ProductSpace space{problem};

    Index cols = 0;
    for (const auto& t : problem.terms()) cols += t.matrix.cols();
    Mat stacked(problem.ambient_dim(), cols);
    cols = 0;
    for (const auto& t : problem.terms()) {
        stacked.middleCols(cols, t.matrix.cols()) = t.matrix;
        cols += t.matrix.cols();
    }
    const double sv = Eigen::BDCSVD<Mat>(stacked).singularValues()(0);
    const double lip = sv * sv;

    std::vector<Vec> x;
    for (const auto& t : problem.terms()) x.push_back(project(t.body, Vec::Zero(ambient_dim(t.body))));

    OracleResult out;
    if (lip == 0.0) {
        out.constituents = x;
        out.point = space.image(x);
        return out;
    }
    const double inv_l = 1.0 / lip;

    std::vector<Vec> y = x;
    double t = 1.0;
    double f_prev = 0.5 * space.image(x).squaredNorm();
    for (std::size_t k = 1; k <= max_iter; ++k) {
        const Vec ry = space.image(y);
        std::vector<Vec> next = space.step(y, space.gradient(ry), inv_l);
        const Vec rn = space.image(next);
        const double f_next = 0.5 * rn.squaredNorm();

        if (k % 8 == 0 || k == max_iter) {
            const auto probe = space.step(next, space.gradient(rn), inv_l);
            const double gm = lip * std::sqrt(squared_distance(next, probe));
            if (gm <= tol) {
                out.constituents = std::move(next);
                out.point = space.image(out.constituents);
                out.iterations = k;
                out.gradient_map_norm = gm;
                return out;
            }
        }

        if (f_next > f_prev && t > 1.0) {
            // Function-value restart.
            t = 1.0;
            y = x;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double beta = (t - 1.0) / t_next;
        y.resize(next.size());
        for (std::size_t i = 0; i < next.size(); ++i) y[i] = next[i] + beta * (next[i] - x[i]);
        x = std::move(next);
        t = t_next;
        f_prev = f_next;
    }
    throw ConvergenceError("oracle_solve: no convergence within " + std::to_string(max_iter) + " iterations");
}

Certificate certify(const MinkowskiProblem& problem, const Vec& solution, const std::vector<Vec>& constituents,
                    double tol, std::optional<double> oracle_distance) {
    if (solution.size() != problem.ambient_dim()) throw InvalidInput("certify: solution dimension mismatch");
    if (constituents.size() != problem.size()) throw InvalidInput("certify: constituent count mismatch");

    Certificate c;
    c.tolerance = tol;
    c.distance = solution.norm();
    c.gap = duality_gap(problem, solution);
    c.decomposition_residual = (problem.assemble(constituents) - solution).norm();

    const Vec normal = -solution;
    // Distance from the solution to a point of Q built from the projected
    // constituents; the gap can be negative by at most ||y|| times this.
    double displacement = c.decomposition_residual;
    for (std::size_t i = 0; i < problem.size(); ++i) {
        const auto& t = problem.terms()[i];
        const Vec w = t.matrix.transpose() * normal;
        c.normal_residuals.push_back(support_value(t.body, w) - w.dot(constituents[i]));
        const double outside = distance(t.body, constituents[i]);
        c.membership_residual = std::max(c.membership_residual, outside);
        displacement += t.matrix.norm() * outside;
    }

    const double g = std::max(c.gap, 0.0);
    c.distance_error_bound = std::sqrt(2.0 * g);
    if (c.distance > 0.0) c.distance_error_bound = std::min(c.distance_error_bound, 2.0 * g / c.distance);
    c.oracle_distance = oracle_distance;

    const double scaled = tol * (1.0 + c.distance);
    c.pass = c.gap <= scaled && c.gap >= -(1e-9 * (1.0 + c.distance * c.distance) + c.distance * displacement) &&
             c.decomposition_residual <= scaled && c.membership_residual <= scaled;
    for (double r : c.normal_residuals) c.pass = c.pass && r <= scaled;
    if (oracle_distance) c.pass = c.pass && std::abs(*oracle_distance - c.distance) <= 10.0 * tol;
    return c;
}

Certificate certify(const MinkowskiProblem& problem, const SolveReport& report, double tol,
                    std::optional<double> oracle_distance) {
    return certify(problem, report.solution, report.constituents, tol, oracle_distance);
}

MinkowskiProblem difference_problem(const MinkowskiProblem& q, const MinkowskiProblem& p) {
    if (q.ambient_dim() != p.ambient_dim()) throw InvalidInput("closest_pair: dimension mismatch");
    std::vector<AffineTerm> terms = q.terms();
    const auto negated = p.negated();
    for (const auto& t : negated.terms()) terms.push_back(t);
    return MinkowskiProblem(std::move(terms));
}

namespace {

ClosestPair split(const MinkowskiProblem& q, const MinkowskiProblem& p, SolveReport report) {
    ClosestPair out;
    out.a = Vec::Zero(q.ambient_dim());
    out.b = Vec::Zero(p.ambient_dim());
    for (std::size_t i = 0; i < q.size(); ++i) out.a += q.terms()[i].map(report.constituents[i]);
    for (std::size_t j = 0; j < p.size(); ++j) out.b += p.terms()[j].map(report.constituents[q.size() + j]);
    out.distance = report.distance;
    out.report = std::move(report);
    return out;
}

} // namespace

ClosestPair closest_pair(const MinkowskiProblem& q, const MinkowskiProblem& p, const NesminoParams& params) {
    return split(q, p, nesmino(difference_problem(q, p), params));
}

ClosestPair closest_pair(const MinkowskiProblem& q, const MinkowskiProblem& p, const GilbertParams& params) {
    return split(q, p, gilbert(difference_problem(q, p), params));
}

} // namespace minksum
