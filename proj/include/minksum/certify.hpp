#pragma once

#include <optional>
#include <vector>

#include "minksum/geometry.hpp"
#include "minksum/solvers.hpp"

namespace minksum {

struct OracleResult {
    Vec point;
    std::vector<Vec> constituents;
    std::size_t iterations = 0;
    double gradient_map_norm = 0.0;
};

/// Independent reference solver: accelerated projected gradient on the
/// product of the bodies for (1/2)||sum_i (A_i w_i + a_i)||^2, step 1/L with
/// L = ||[A_1 ... A_p]||^2, run until the gradient-map norm is <= tol.
/// Throws ConvergenceError when max_iter is exhausted.
OracleResult oracle_solve(const MinkowskiProblem& problem, double tol = 1e-9, std::size_t max_iter = 2'000'000);

struct Certificate {
    double distance = 0.0;
    double gap = 0.0;                     ///< g_Q(-y, y)
    std::vector<double> normal_residuals; ///< sigma_i(-A_i^T y) - <-A_i^T y, x_i>
    double decomposition_residual = 0.0;  ///< ||sum_i (A_i x_i + a_i) - y||
    double membership_residual = 0.0;     ///< max_i d(x_i; Omega_i)
    double distance_error_bound = 0.0;    ///< upper bound on ||y|| - d(0; Q) implied by the gap
    std::optional<double> oracle_distance;
    double tolerance = 0.0;
    bool pass = false;
};

/// Checks the duality gap, the shared-normal condition on every constituent,
/// the decomposition and membership of the constituents. Thresholds scale with
/// (1 + ||y||). When an oracle distance is supplied it must agree to 10 * tol.
Certificate certify(const MinkowskiProblem& problem, const Vec& solution, const std::vector<Vec>& constituents,
                    double tol = 1e-3, std::optional<double> oracle_distance = std::nullopt);
Certificate certify(const MinkowskiProblem& problem, const SolveReport& report, double tol = 1e-3,
                    std::optional<double> oracle_distance = std::nullopt);

struct ClosestPair {
    Vec a;  ///< point of the first set Q
    Vec b;  ///< point of the second set P
    double distance = 0.0;
    SolveReport report; ///< solve of Q - P
};

/// Q - P: the terms of Q followed by the negated terms of P.
MinkowskiProblem difference_problem(const MinkowskiProblem& q, const MinkowskiProblem& p);

/// Closest points between Q and P via the projection of the origin onto Q - P.
ClosestPair closest_pair(const MinkowskiProblem& q, const MinkowskiProblem& p, const NesminoParams& params = {});
ClosestPair closest_pair(const MinkowskiProblem& q, const MinkowskiProblem& p, const GilbertParams& params);

} // namespace minksum
