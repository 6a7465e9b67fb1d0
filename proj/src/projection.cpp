#include "minksum/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace minksum {

namespace {

Vec project_ball(const Ball& b, const Vec& x) {
    const Vec d = x - b.center;
    const double n = d.norm();
    if (n <= b.radius) return x;
    return b.center + (b.radius / n) * d;
}

// Closest point of E(A, c) to x. In the eigenbasis A = Q diag(a) Q^T with
// y = Q^T (x - c) the KKT point is z_i = a_i y_i / (a_i + t) where t >= 0 is
// the root of phi(t) = sum a_i y_i^2 / (a_i + t)^2 - 1. phi is convex and
// decreasing, so Newton started at t = 0 increases monotonically to the root.
Vec project_ellipsoid(const Ellipsoid& e, const Vec& x) {
    Eigen::SelfAdjointEigenSolver<Mat> es(e.shape);
    const Vec& a = es.eigenvalues();
    const Vec y = es.eigenvectors().transpose() * (x - e.center);
    if (y.cwiseAbs2().cwiseQuotient(a).sum() <= 1.0) return x;

    double t = 0.0;
    for (int it = 0; it < 500; ++it) {
        double phi = -1.0;
        double dphi = 0.0;
        for (Index i = 0; i < a.size(); ++i) {
            const double r = 1.0 / (a[i] + t);
            const double w = a[i] * y[i] * y[i] * r * r;
            phi += w;
            dphi -= 2.0 * w * r;
        }
        if (phi <= 0.0 || dphi == 0.0) break;
        const double next = t - phi / dphi;
        if (!(next > t)) break;
        const bool stalled = next - t <= 1e-16 * std::max(1.0, t);
        t = next;
        if (stalled) break;
    }
    Vec z(a.size());
    for (Index i = 0; i < a.size(); ++i) z[i] = a[i] * y[i] / (a[i] + t);
    // Guard against rounding just outside the boundary.
    const double level = z.cwiseAbs2().cwiseQuotient(a).sum();
    if (level > 1.0) z /= std::sqrt(level);
    return e.center + es.eigenvectors() * z;
}

// Minimises ||sum_j alpha_j p_j|| subject to sum_j alpha_j = 1 over the
// active rows of p (affine hull, no sign constraint).
Vec affine_minimizer(const Mat& p, const std::vector<Index>& active) {
    const Index s = static_cast<Index>(active.size());
    Mat ps(s, p.cols());
    for (Index i = 0; i < s; ++i) ps.row(i) = p.row(active[i]);
    Mat kkt = Mat::Zero(s + 1, s + 1);
    kkt.topLeftCorner(s, s) = ps * ps.transpose();
    kkt.topRightCorner(s, 1).setOnes();
    kkt.bottomLeftCorner(1, s).setOnes();
    Vec rhs = Vec::Zero(s + 1);
    rhs[s] = 1.0;
    const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    return sol.head(s);
}

// Wolfe's minimum-norm-point algorithm on the translated vertices v_i - x.
Vec project_polytope(const VPolytope& poly, const Vec& x) {
    const Mat& v = poly.vertices;
    const Index k = v.rows();
    if (k == 1) return v.row(0).transpose();

    const Mat p = v.rowwise() - x.transpose();
    const Vec sq = p.rowwise().squaredNorm();
    const double scale = std::max(sq.maxCoeff(), std::numeric_limits<double>::min());

    Index start = 0;
    sq.minCoeff(&start);
    std::vector<Index> active{start};
    std::vector<double> lambda{1.0};

    const int max_major = static_cast<int>(50 * k + 1000);
    for (int major = 0; major < max_major; ++major) {
        Vec y = Vec::Zero(p.cols());
        for (std::size_t i = 0; i < active.size(); ++i) y += lambda[i] * p.row(active[i]).transpose();

        const Vec vals = p * y;
        Index j = 0;
        vals.minCoeff(&j);
        if (y.squaredNorm() - vals[j] <= 1e-15 * scale) break;
        if (std::find(active.begin(), active.end(), j) != active.end()) break;
        active.push_back(j);
        lambda.push_back(0.0);

        for (std::size_t minor = 0; minor <= static_cast<std::size_t>(k); ++minor) {
            const Vec alpha = affine_minimizer(p, active);
            if ((alpha.array() > 1e-14).all()) {
                lambda.assign(alpha.data(), alpha.data() + alpha.size());
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (alpha[i] <= 1e-14) {
                    const double denom = lambda[i] - alpha[i];
                    if (denom > 0.0) theta = std::min(theta, lambda[i] / denom);
                }
            }
            std::vector<Index> next_active;
            std::vector<double> next_lambda;
            for (std::size_t i = 0; i < active.size(); ++i) {
                const double li = lambda[i] + theta * (alpha[i] - lambda[i]);
                if (li > 1e-14) {
                    next_active.push_back(active[i]);
                    next_lambda.push_back(li);
                }
            }
            if (next_active.empty()) {
                next_active.push_back(active.back());
                next_lambda.push_back(1.0);
            }
            const double total = std::accumulate(next_lambda.begin(), next_lambda.end(), 0.0);
            for (auto& l : next_lambda) l /= total;
            active = std::move(next_active);
            lambda = std::move(next_lambda);
        }
    }

    Vec out = Vec::Zero(v.cols());
    for (std::size_t i = 0; i < active.size(); ++i) out += lambda[i] * v.row(active[i]).transpose();
    return out;
}

} // namespace

Vec project_simplex(const Vec& v, Index dim) {
    if (dim < 1) throw InvalidInput("project_simplex: dimension must be positive");
    if (v.size() != dim) {
        throw InvalidInput("project_simplex: expected dimension " + std::to_string(dim) + ", got " +
                           std::to_string(v.size()));
    }
    std::vector<double> s(v.data(), v.data() + v.size());
    std::sort(s.begin(), s.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        cumulative += s[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (s[j] - t > 0.0) tau = t;
    }
    return (v.array() - tau).cwiseMax(0.0).matrix();
}

Vec project(const ConvexBody& body, const Vec& x) {
    const Index d = ambient_dim(body);
    if (x.size() != d) {
        throw InvalidInput("project: expected dimension " + std::to_string(d) + ", got " +
                           std::to_string(x.size()));
    }
    if (const auto* b = std::get_if<Ball>(&body)) return project_ball(*b, x);
    if (const auto* b = std::get_if<Box>(&body)) return x.cwiseMax(b->lower).cwiseMin(b->upper);
    if (const auto* s = std::get_if<UnitSimplex>(&body)) return project_simplex(x, s->dim);
    if (const auto* e = std::get_if<Ellipsoid>(&body)) return project_ellipsoid(*e, x);
    return project_polytope(std::get<VPolytope>(body), x);
}

} // namespace minksum
