#include "minksum/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace minksum {

void GilbertParams::validate() const {
    if (!(delta > 0.0)) throw InvalidInput("delta must be positive");
}

double duality_gap(const MinkowskiProblem& problem, const Vec& z) {
    if (z.size() != problem.ambient_dim()) throw InvalidInput("duality_gap: dimension mismatch");
    return minkowski_support(problem, -z).value + z.squaredNorm();
}

std::pair<double, Vec> segment_min_norm(const Vec& z, const Vec& zbar) {
    const double zz = z.squaredNorm();
    const double zzb = z.dot(zbar);
    if (zbar.squaredNorm() <= zzb) return {1.0, zbar};
    const double denom = (z - zbar).squaredNorm();
    if (denom == 0.0) return {0.0, z};
    const double lambda = std::clamp((zz - zzb) / denom, 0.0, 1.0);
    return {lambda, z + lambda * (zbar - z)};
}

namespace {

std::vector<Vec> start_constituents(const MinkowskiProblem& problem, const GilbertParams& params) {
    if (params.z0_constituents) {
        const auto& xs = *params.z0_constituents;
        if (xs.size() != problem.size()) throw InvalidInput("gilbert: wrong number of start constituents");
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto& body = problem.terms()[i].body;
            if (xs[i].size() != ambient_dim(body)) throw InvalidInput("gilbert: start constituent dimension");
            if (distance(body, xs[i]) > 1e-9 * (1.0 + xs[i].norm()))
                throw InvalidInput("gilbert: start constituent is not in its body");
        }
        if (params.z0 && (problem.assemble(xs) - *params.z0).norm() > 1e-9 * (1.0 + params.z0->norm()))
            throw InvalidInput("gilbert: z0 differs from the image of its constituents");
        return xs;
    }
    if (params.z0) {
        if (problem.size() != 1) throw InvalidInput("gilbert: z0 on a multi-term problem needs z0_constituents");
        const auto& t = problem.terms().front();
        if (params.z0->size() != problem.ambient_dim()) throw InvalidInput("gilbert: z0 has the wrong dimension");
        Vec x = t.matrix.completeOrthogonalDecomposition().solve(*params.z0 - t.offset);
        const double tol = 1e-9 * (1.0 + params.z0->norm());
        if ((t.map(x) - *params.z0).norm() > tol || distance(t.body, x) > tol)
            throw InvalidInput("gilbert: z0 is not a point of Q");
        return {std::move(x)};
    }
    return minkowski_support(problem, Vec::Unit(problem.ambient_dim(), 0)).constituents;
}

} // namespace

SolveReport gilbert(const MinkowskiProblem& problem, const GilbertParams& params) {
    params.validate();
    const auto started = std::chrono::steady_clock::now();

    std::vector<Vec> xs = start_constituents(problem, params);
    Vec z = params.z0 ? *params.z0 : problem.assemble(xs);

    SolveReport report;
    std::size_t k = 0;
    for (;; ++k) {
        if (params.record_history) report.history.push_back(z);
        if (z.norm() < 1e-12) {
            report.converged = true;
            break;
        }
        const auto sup = minkowski_support(problem, -z);
        const double gap = sup.value + z.squaredNorm();
        if (gap <= params.delta) {
            report.converged = true;
            break;
        }
        if (k >= params.max_iter) break;

        const auto [lambda, next] = segment_min_norm(z, sup.point);
        if (lambda == 0.0 || next == z) {
            report.degenerate = true;
            break;
        }
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += lambda * (sup.constituents[i] - xs[i]);
        z = next;
    }

    report.iterations.push_back(k);
    report.constituents = std::move(xs);
    report.solution = problem.assemble(report.constituents);
    report.distance = report.solution.norm();
    report.gap = duality_gap(problem, report.solution);
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return report;
}

} // namespace minksum
