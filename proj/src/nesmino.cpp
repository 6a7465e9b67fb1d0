#include "minksum/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace minksum {

void NesminoParams::validate() const {
    if (!(mu0 > 0.0) || !(mu_star > 0.0)) throw InvalidInput("mu0 and mu_star must be positive");
    if (mu_star > mu0) throw InvalidInput("mu_star must not exceed mu0");
    if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidInput("sigma must lie in (0, 1)");
    if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
    if (!(gamma > 0.0)) throw InvalidInput("gamma must be positive");
}

NesminoParams NesminoParams::fixed(double mu, double eps) {
    NesminoParams p;
    p.mu0 = mu;
    p.mu_star = mu;
    p.eps = eps;
    return p;
}

std::size_t SolveReport::total_iterations() const {
    return std::accumulate(iterations.begin(), iterations.end(), std::size_t{0});
}

PrimalPoint recover_primal(const MinkowskiProblem& problem, const SmoothedDual& dual, const Vec& u) {
    const auto& canonical = dual.canonical();
    const auto points = dual.smoothing_points(u);
    PrimalPoint out;
    out.constituents.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.constituents.push_back(canonical.terms[i].pull_back(points[i]));
    }
    out.y = problem.assemble(out.constituents);
    return out;
}

PrimalPoint recover_primal(const MinkowskiProblem& problem, const Vec& u, double mu) {
    return recover_primal(problem, SmoothedDual(problem, mu), u);
}

namespace {

std::size_t default_stage_cap(double l_mu, double gamma, double eps) {
    const double k = std::sqrt(l_mu / gamma) * std::log(1.0 / std::min(eps, 0.5));
    return 50 * static_cast<std::size_t>(std::ceil(std::max(k, 1.0)));
}

} // namespace

SolveReport nesmino(const MinkowskiProblem& problem, const NesminoParams& params) {
    params.validate();
    const auto started = std::chrono::steady_clock::now();

    const Index n = problem.ambient_dim();
    Vec u = params.u0.value_or(Vec::Zero(n));
    if (u.size() != n) throw InvalidInput("nesmino: start vector has the wrong dimension");

    SmoothedDual dual(problem, params.mu0, params.gamma);
    SolveReport report;
    report.converged = true;

    // mu_k = sigma^k mu0 while above mu_star; the last stage runs at mu_star.
    double mu = params.mu0;
    for (;;) {
        const bool last = mu <= params.mu_star * (1.0 + 1e-9);
        if (last) mu = params.mu_star;
        dual = dual.with_mu(mu);
        // Any upper bound on the gradient's Lipschitz constant is a valid step
        // size; lifting it to gamma keeps the momentum coefficient nonnegative.
        const double step_l = std::max(dual.l_mu(), dual.gamma());

        const std::size_t cap =
            params.max_iter_per_stage > 0 ? params.max_iter_per_stage
                                          : default_stage_cap(step_l, dual.gamma(), params.eps);
        const double eps2 = params.eps * params.eps;
        const auto grad = [&dual](const Vec& v) { return dual.gradient(v); };
        const auto stop = [&dual, eps2](std::size_t, const Vec& uk) {
            return dual.gradient(uk).squaredNorm() <= eps2;
        };
        IterateObserver observer;
        if (params.record_history) {
            if (report.history.empty()) report.history.push_back(recover_primal(problem, dual, u).y);
            observer = [&](std::size_t, const Vec& uk) { report.history.push_back(recover_primal(problem, dual, uk).y); };
        }

        auto stage = fast_gradient(grad, step_l, dual.gamma(), u, stop, cap, observer);
        u = std::move(stage.u);
        report.iterations.push_back(stage.iterations);
        report.stage_mu.push_back(mu);
        if (!stage.converged) report.converged = false;
        if (last) break;
        mu *= params.sigma;
    }

    auto primal = recover_primal(problem, dual, u);
    report.solution = std::move(primal.y);
    report.constituents = std::move(primal.constituents);
    report.dual = u;
    report.distance = report.solution.norm();
    report.gap = duality_gap(problem, report.solution);
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return report;
}

double one_shot_mu(const MinkowskiProblem& problem, double eps) {
    if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
    const auto canonical = CanonicalProblem::build(problem);
    return eps / (6.0 * canonical->d_f);
}

double iteration_bound(const MinkowskiProblem& problem, double eps, double initial_gap, double gamma) {
    const auto canonical = CanonicalProblem::build(problem);
    const double mu = eps / (6.0 * canonical->d_f);
    const double l_mu = lipschitz_constant(*canonical, mu);
    return std::sqrt(l_mu / gamma) *
           std::log(4.0 * (2.0 * l_mu + 1.0) * (initial_gap + eps / 6.0) / eps);
}

} // namespace minksum
