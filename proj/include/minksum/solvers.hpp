#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "minksum/fast_gradient.hpp"
#include "minksum/geometry.hpp"
#include "minksum/smoothing.hpp"

namespace minksum {

/// Smoothing continuation: f_mu is minimised for mu = mu0, sigma*mu0, ...
/// down to mu_star, each stage warm-started from the previous one and
/// stopped once ||grad f_mu(u_k)|| <= eps.
struct NesminoParams {
    double mu0 = 100.0;
    double sigma = 0.1;
    double mu_star = 1e-3;
    double eps = 1e-3;
    double gamma = 2.0;
    /// 0 selects 50 * ceil(sqrt(L_mu / gamma) * ln(1 / eps)) per stage.
    std::size_t max_iter_per_stage = 0;
    std::optional<Vec> u0;
    bool record_history = false;

    void validate() const;
    /// Single stage at a fixed smoothing parameter.
    static NesminoParams fixed(double mu, double eps = 1e-3);
};

struct GilbertParams {
    double delta = 1e-4;
    /// Start point in Q. Multi-term problems also need z0_constituents; when
    /// only those are given, z0 is their assembled image. Unset: support
    /// point of Q in direction e_1.
    std::optional<Vec> z0;
    std::optional<std::vector<Vec>> z0_constituents;
    std::size_t max_iter = 1'000'000;
    bool record_history = false;

    void validate() const;
};

struct SolveReport {
    Vec solution;
    std::vector<Vec> constituents; ///< x_i in the original bodies, sum of images = solution
    std::optional<Vec> dual;       ///< final dual iterate (smoothing solver only)
    double distance = 0.0;
    double gap = 0.0;                   ///< sigma_Q(-y) + ||y||^2
    std::vector<std::size_t> iterations; ///< per stage
    std::vector<double> stage_mu;
    bool converged = false;
    bool degenerate = false;
    std::vector<Vec> history; ///< y_k or z_k when requested
    double wall_ms = 0.0;

    std::size_t total_iterations() const;
};

/// g_Q(-z, z) = sigma_Q(-z) + ||z||^2; nonnegative on Q, zero only at the projection.
double duality_gap(const MinkowskiProblem& problem, const Vec& z);

struct PrimalPoint {
    Vec y;
    std::vector<Vec> constituents;
};

/// y = sum_i (A_i x_i + a_i) with x_i the pullback of P_{body_i}(M_i^T u / mu).
PrimalPoint recover_primal(const MinkowskiProblem& problem, const Vec& u, double mu);
PrimalPoint recover_primal(const MinkowskiProblem& problem, const SmoothedDual& dual, const Vec& u);

SolveReport nesmino(const MinkowskiProblem& problem, const NesminoParams& params = {});

SolveReport gilbert(const MinkowskiProblem& problem, const GilbertParams& params = {});

/// Minimum-norm point of the segment [z, zbar]; returns (lambda*, point).
std::pair<double, Vec> segment_min_norm(const Vec& z, const Vec& zbar);

/// mu = eps / (6 D_f), the fixed smoothing level that yields an
/// eps-approximate primal point.
double one_shot_mu(const MinkowskiProblem& problem, double eps);

/// Iteration count sqrt(L_mu/gamma) ln(4 (2 L_mu + 1)(f(u0) - f* + eps/6) / eps)
/// sufficient at mu = one_shot_mu(problem, eps). `initial_gap` is f(u0) - f*.
double iteration_bound(const MinkowskiProblem& problem, double eps, double initial_gap, double gamma = 2.0);

} // namespace minksum
