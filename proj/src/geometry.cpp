#include "minksum/geometry.hpp"

#include <cmath>
#include <string>

namespace minksum {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
    if (!ok) throw InvalidInput(what);
}

void require_dim(const Vec& v, Index dim, const char* what) {
    if (v.size() != dim) {
        throw InvalidInput(std::string(what) + ": expected dimension " + std::to_string(dim) +
                           ", got " + std::to_string(v.size()));
    }
}

bool all_finite(const Mat& m) { return m.allFinite(); }

void validate_shape(const Mat& a) {
    require(a.rows() == a.cols() && a.rows() > 0, "ellipsoid shape must be a nonempty square matrix");
    require(all_finite(a), "ellipsoid shape has non-finite entries");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    require((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
            "ellipsoid shape is not symmetric");
}

Eigen::SelfAdjointEigenSolver<Mat> checked_eigen(const Mat& a) {
    validate_shape(a);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.transpose()));
    require(es.info() == Eigen::Success, "eigendecomposition failed");
    require(es.eigenvalues().minCoeff() > 0.0, "matrix is not positive definite");
    return es;
}

// Lowest index attaining the maximum of values.
Index first_argmax(const Vec& values) {
    Index best = 0;
    for (Index i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

} // namespace

Index ambient_dim(const ConvexBody& body) {
    return std::visit(overloaded{
                          [](const Ball& b) { return b.center.size(); },
                          [](const Box& b) { return b.lower.size(); },
                          [](const UnitSimplex& s) { return s.dim; },
                          [](const Ellipsoid& e) { return e.center.size(); },
                          [](const VPolytope& p) { return p.vertices.cols(); },
                      },
                      body);
}

void validate(const ConvexBody& body) {
    std::visit(overloaded{
                   [](const Ball& b) {
                       require(b.center.size() > 0, "ball center is empty");
                       require(b.center.allFinite(), "ball center has non-finite entries");
                       require(std::isfinite(b.radius) && b.radius > 0.0, "ball radius must be positive");
                   },
                   [](const Box& b) {
                       require(b.lower.size() > 0, "box is empty");
                       require(b.lower.size() == b.upper.size(), "box bounds differ in dimension");
                       require(b.lower.allFinite() && b.upper.allFinite(), "box bounds must be finite");
                       require((b.lower.array() <= b.upper.array()).all(), "box lower bound exceeds upper bound");
                   },
                   [](const UnitSimplex& s) { require(s.dim >= 1, "simplex dimension must be positive"); },
                   [](const Ellipsoid& e) {
                       require(e.center.allFinite(), "ellipsoid center has non-finite entries");
                       require(e.shape.rows() == e.center.size(), "ellipsoid shape and center differ in dimension");
                       checked_eigen(e.shape);
                   },
                   [](const VPolytope& p) {
                       require(p.vertices.rows() >= 1, "polytope needs at least one vertex");
                       require(p.vertices.cols() >= 1, "polytope vertices are empty");
                       require(all_finite(p.vertices), "polytope vertices have non-finite entries");
                   },
               },
               body);
}

double support_value(const ConvexBody& body, const Vec& u) {
    require_dim(u, ambient_dim(body), "support_value");
    return std::visit(overloaded{
                          [&](const Ball& b) { return u.dot(b.center) + b.radius * u.norm(); },
                          [&](const Box& b) {
                              double s = 0.0;
                              for (Index i = 0; i < u.size(); ++i) {
                                  s += u[i] >= 0.0 ? u[i] * b.upper[i] : u[i] * b.lower[i];
                              }
                              return s;
                          },
                          [&](const UnitSimplex&) { return u.maxCoeff(); },
                          [&](const Ellipsoid& e) {
                              const double q = u.dot(e.shape * u);
                              return std::sqrt(std::max(q, 0.0)) + u.dot(e.center);
                          },
                          [&](const VPolytope& p) { return Vec(p.vertices * u).maxCoeff(); },
                      },
                      body);
}

Vec support_point(const ConvexBody& body, const Vec& u) {
    require_dim(u, ambient_dim(body), "support_point");
    return std::visit(overloaded{
                          [&](const Ball& b) -> Vec {
                              const double n = u.norm();
                              if (n == 0.0) return b.center;
                              return b.center + (b.radius / n) * u;
                          },
                          [&](const Box& b) -> Vec {
                              Vec s(u.size());
                              for (Index i = 0; i < u.size(); ++i) {
                                  if (u[i] > 0.0)
                                      s[i] = b.upper[i];
                                  else if (u[i] < 0.0)
                                      s[i] = b.lower[i];
                                  else
                                      s[i] = 0.5 * (b.lower[i] + b.upper[i]);
                              }
                              return s;
                          },
                          [&](const UnitSimplex& s) -> Vec {
                              return Vec::Unit(s.dim, first_argmax(u));
                          },
                          [&](const Ellipsoid& e) -> Vec {
                              const Vec au = e.shape * u;
                              const double q = u.dot(au);
                              if (!(q > 0.0)) return e.center;
                              return au / std::sqrt(q) + e.center;
                          },
                          [&](const VPolytope& p) -> Vec {
                              return p.vertices.row(first_argmax(p.vertices * u)).transpose();
                          },
                      },
                      body);
}

double radius_bound(const ConvexBody& body) {
    return std::visit(overloaded{
                          [](const Ball& b) { return b.center.norm() + b.radius; },
                          [](const Box& b) { return b.lower.cwiseAbs().cwiseMax(b.upper.cwiseAbs()).norm(); },
                          [](const UnitSimplex&) { return 1.0; },
                          [](const Ellipsoid& e) {
                              const auto es = checked_eigen(e.shape);
                              return e.center.norm() + std::sqrt(es.eigenvalues().maxCoeff());
                          },
                          [](const VPolytope& p) { return p.vertices.rowwise().norm().maxCoeff(); },
                      },
                      body);
}

Mat sqrt_spd(const Mat& a) {
    const auto es = checked_eigen(a);
    const Vec root = es.eigenvalues().cwiseSqrt();
    Mat r = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (r + r.transpose());
}

double distance(const ConvexBody& body, const Vec& x) { return (project(body, x) - x).norm(); }

AffineTerm identity_term(ConvexBody body) {
    const Index d = ambient_dim(body);
    return AffineTerm{Mat::Identity(d, d), Vec::Zero(d), std::move(body)};
}

void validate(const AffineTerm& term) {
    validate(term.body);
    require(term.matrix.rows() > 0, "term matrix has no rows");
    require(term.matrix.allFinite() && term.offset.allFinite(), "term has non-finite entries");
    require(term.matrix.cols() == ambient_dim(term.body),
            "term matrix column count differs from body dimension");
    require(term.offset.size() == term.matrix.rows(), "term offset differs from matrix row count");
}

MinkowskiProblem::MinkowskiProblem(std::vector<AffineTerm> terms) : terms_(std::move(terms)) {
    require(!terms_.empty(), "problem has no terms");
    dim_ = terms_.front().output_dim();
    for (const auto& t : terms_) {
        validate(t);
        require(t.output_dim() == dim_, "terms have different output dimensions");
    }
}

Vec MinkowskiProblem::assemble(const std::vector<Vec>& constituents) const {
    require(constituents.size() == terms_.size(), "constituent count differs from term count");
    Vec y = Vec::Zero(dim_);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        require_dim(constituents[i], minksum::ambient_dim(terms_[i].body), "constituent");
        y += terms_[i].map(constituents[i]);
    }
    return y;
}

MinkowskiProblem MinkowskiProblem::negated() const {
    std::vector<AffineTerm> out = terms_;
    for (auto& t : out) {
        t.matrix = -t.matrix;
        t.offset = -t.offset;
    }
    return MinkowskiProblem(std::move(out));
}

MinkowskiSupport minkowski_support(const MinkowskiProblem& problem, const Vec& u) {
    require_dim(u, problem.ambient_dim(), "minkowski_support");
    MinkowskiSupport out;
    out.point = Vec::Zero(problem.ambient_dim());
    out.constituents.reserve(problem.size());
    for (const auto& t : problem.terms()) {
        const Vec w = t.matrix.transpose() * u;
        Vec s = support_point(t.body, w);
        out.value += support_value(t.body, w) + u.dot(t.offset);
        out.point += t.map(s);
        out.constituents.push_back(std::move(s));
    }
    return out;
}

CanonicalTerm canonicalize(const AffineTerm& term) {
    validate(term);
    const Index m = ambient_dim(term.body);
    return std::visit(
        overloaded{
            [&](const Ellipsoid& e) {
                const Mat root = sqrt_spd(e.shape);
                return CanonicalTerm{term.matrix * root, term.offset + term.matrix * e.center,
                                     Ball{Vec::Zero(m), 1.0}, root, e.center};
            },
            [&](const VPolytope& p) {
                const Index k = p.vertices.rows();
                return CanonicalTerm{term.matrix * p.vertices.transpose(), term.offset, UnitSimplex{k},
                                     p.vertices.transpose(), Vec::Zero(m)};
            },
            [&](const auto& simple) {
                return CanonicalTerm{term.matrix, term.offset, simple, Mat::Identity(m, m), Vec::Zero(m)};
            },
        },
        term.body);
}

double support_value(const CanonicalTerm& term, const Vec& u) {
    return support_value(term.simple_body, Vec(term.matrix.transpose() * u)) + u.dot(term.offset);
}

} // namespace minksum
