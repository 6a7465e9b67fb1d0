#pragma once

#include <memory>
#include <vector>

#include "minksum/geometry.hpp"

namespace minksum {

/// Operator 2-norm by power iteration on M^T M (closed form for diagonal M).
double spectral_norm(const Mat& m, double rel_tol = 1e-10);

/// sup { <M^T u, x> - (mu/2)||x||^2 : x in simple_body }, computed as
/// ||M^T u||^2 / (2 mu) - (mu/2) d(M^T u / mu; body)^2. Term offsets are not included.
double smoothed_support(const CanonicalTerm& term, const Vec& u, double mu);

/// M * P_body(M^T u / mu).
Vec smoothed_support_grad(const CanonicalTerm& term, const Vec& u, double mu);

/// f(u) = sum_i sigma_i(A_i^T u) + <u, sum_i a_i> + ||u||^2 / 4.
double dual_value(const MinkowskiProblem& problem, const Vec& u);

/// Canonicalised terms and the mu-independent constants of the smoothed dual.
struct CanonicalProblem {
    std::vector<CanonicalTerm> terms;
    Vec offsets_sum;
    std::vector<double> squared_norms; ///< ||M_i||^2
    double d_f = 0.0;                  ///< (1/2) sum_i ||simple_body_i||^2
    Index ambient_dim = 0;

    static std::shared_ptr<const CanonicalProblem> build(const MinkowskiProblem& problem);
};

/// L_mu = sum_i ||M_i||^2 / mu + 1/2.
double lipschitz_constant(const MinkowskiProblem& problem, double mu);
double lipschitz_constant(const CanonicalProblem& canonical, double mu);

/// The smoothed dual objective f_mu at a fixed smoothing parameter.
class SmoothedDual {
public:
    SmoothedDual(std::shared_ptr<const CanonicalProblem> canonical, double mu, double gamma = 2.0);
    SmoothedDual(const MinkowskiProblem& problem, double mu, double gamma = 2.0);

    double value(const Vec& u) const;
    Vec gradient(const Vec& u) const;

    /// Per-term minimisers p_i = P_{body_i}(M_i^T u / mu) in simple-body coordinates.
    std::vector<Vec> smoothing_points(const Vec& u) const;

    double mu() const noexcept { return mu_; }
    double gamma() const noexcept { return gamma_; }
    double l_mu() const noexcept { return l_mu_; }
    double d_f() const noexcept { return canonical_->d_f; }
    const Vec& offsets_sum() const noexcept { return canonical_->offsets_sum; }
    const CanonicalProblem& canonical() const noexcept { return *canonical_; }
    const std::shared_ptr<const CanonicalProblem>& canonical_ptr() const noexcept { return canonical_; }

    SmoothedDual with_mu(double mu) const { return SmoothedDual(canonical_, mu, gamma_); }

private:
    std::shared_ptr<const CanonicalProblem> canonical_;
    double mu_;
    double gamma_;
    double l_mu_;
};

} // namespace minksum
