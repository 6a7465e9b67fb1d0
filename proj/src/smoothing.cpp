#include "minksum/smoothing.hpp"

#include <cmath>

namespace minksum {

namespace {

void require_mu(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidInput("smoothing parameter mu must be positive");
}

bool is_diagonal(const Mat& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (i != j && m(i, j) != 0.0) return false;
    return true;
}

} // namespace

double spectral_norm(const Mat& m, double rel_tol) {
    if (m.size() == 0) return 0.0;
    if (is_diagonal(m)) return m.diagonal().cwiseAbs().maxCoeff();

    // Iterate on the smaller Gram matrix.
    const Mat g = m.rows() < m.cols() ? Mat(m * m.transpose()) : Mat(m.transpose() * m);
    const Index n = g.rows();
    Vec x(n);
    for (Index i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
    x.normalize();

    double lambda = 0.0;
    for (int it = 0; it < 100000; ++it) {
        Vec y = g * x;
        const double next = x.dot(y);
        const double ny = y.norm();
        if (ny == 0.0) return 0.0;
        x = y / ny;
        if (std::abs(next - lambda) <= rel_tol * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    // Rayleigh quotient of the final iterate.
    lambda = std::max(lambda, x.dot(g * x));
    return std::sqrt(std::max(lambda, 0.0));
}

double smoothed_support(const CanonicalTerm& term, const Vec& u, double mu) {
    require_mu(mu);
    const Vec z = term.matrix.transpose() * u;
    const Vec scaled = z / mu;
    const double d = distance(term.simple_body, scaled);
    return z.squaredNorm() / (2.0 * mu) - 0.5 * mu * d * d;
}

Vec smoothed_support_grad(const CanonicalTerm& term, const Vec& u, double mu) {
    require_mu(mu);
    const Vec scaled = term.matrix.transpose() * u / mu;
    return term.matrix * project(term.simple_body, scaled);
}

double dual_value(const MinkowskiProblem& problem, const Vec& u) {
    if (u.size() != problem.ambient_dim()) throw InvalidInput("dual_value: dimension mismatch");
    double f = 0.25 * u.squaredNorm();
    for (const auto& t : problem.terms()) {
        f += support_value(t.body, Vec(t.matrix.transpose() * u)) + u.dot(t.offset);
    }
    return f;
}

std::shared_ptr<const CanonicalProblem> CanonicalProblem::build(const MinkowskiProblem& problem) {
    auto out = std::make_shared<CanonicalProblem>();
    out->ambient_dim = problem.ambient_dim();
    out->offsets_sum = Vec::Zero(problem.ambient_dim());
    for (const auto& t : problem.terms()) {
        CanonicalTerm c = canonicalize(t);
        const double norm = spectral_norm(c.matrix);
        const double r = radius_bound(c.simple_body);
        out->offsets_sum += c.offset;
        out->squared_norms.push_back(norm * norm);
        out->d_f += 0.5 * r * r;
        out->terms.push_back(std::move(c));
    }
    return out;
}

double lipschitz_constant(const CanonicalProblem& canonical, double mu) {
    require_mu(mu);
    double s = 0.0;
    for (double n2 : canonical.squared_norms) s += n2;
    return s / mu + 0.5;
}

double lipschitz_constant(const MinkowskiProblem& problem, double mu) {
    require_mu(mu);
    return lipschitz_constant(*CanonicalProblem::build(problem), mu);
}

SmoothedDual::SmoothedDual(std::shared_ptr<const CanonicalProblem> canonical, double mu, double gamma)
    : canonical_(std::move(canonical)), mu_(mu), gamma_(gamma) {
    require_mu(mu);
    if (!(gamma > 0.0)) throw InvalidInput("gamma must be positive");
    l_mu_ = lipschitz_constant(*canonical_, mu);
}

SmoothedDual::SmoothedDual(const MinkowskiProblem& problem, double mu, double gamma)
    : SmoothedDual(CanonicalProblem::build(problem), mu, gamma) {}

double SmoothedDual::value(const Vec& u) const {
    double f = u.dot(canonical_->offsets_sum) + 0.25 * u.squaredNorm();
    for (const auto& t : canonical_->terms) f += smoothed_support(t, u, mu_);
    return f;
}

Vec SmoothedDual::gradient(const Vec& u) const {
    Vec g = canonical_->offsets_sum + 0.5 * u;
    for (const auto& t : canonical_->terms) g += smoothed_support_grad(t, u, mu_);
    return g;
}

std::vector<Vec> SmoothedDual::smoothing_points(const Vec& u) const {
    std::vector<Vec> out;
    out.reserve(canonical_->terms.size());
    for (const auto& t : canonical_->terms) {
        out.push_back(project(t.simple_body, Vec(t.matrix.transpose() * u / mu_)));
    }
    return out;
}

} // namespace minksum
