#pragma once

#include <Eigen/Dense>

#include <utility>
#include <variant>
#include <vector>

#include "minksum/errors.hpp"

namespace minksum {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Convex bodies
// ---------------------------------------------------------------------------

struct Ball {
    Vec center;
    double radius = 1.0;
};

/// Axis-aligned box, lower <= upper componentwise.
struct Box {
    Vec lower;
    Vec upper;
};

/// The unit simplex {x >= 0, sum x = 1} in R^dim.
struct UnitSimplex {
    Index dim = 1;
};

/// E(A, c) = {x : (x - c)^T A^{-1} (x - c) <= 1} with A symmetric positive definite.
/// Its support function is sqrt(u^T A u) + <u, c>.
struct Ellipsoid {
    Mat shape;
    Vec center;
};

/// Convex hull of a finite point set. One vertex per row.
struct VPolytope {
    Mat vertices;
};

using ConvexBody = std::variant<Ball, Box, UnitSimplex, Ellipsoid, VPolytope>;

Index ambient_dim(const ConvexBody& body);

/// Throws InvalidInput when the body violates its invariants.
void validate(const ConvexBody& body);

/// Euclidean projection of x onto the body.
Vec project(const ConvexBody& body, const Vec& x);

/// Projection onto the unit simplex of R^dim by sort-then-threshold.
Vec project_simplex(const Vec& v, Index dim);

/// sup { <u, x> : x in body }.
double support_value(const ConvexBody& body, const Vec& u);

/// A maximiser of <u, .> over the body.
///
/// Conventions for non-unique maximisers: u = 0 on a ball or ellipsoid gives
/// the center; polytope and simplex ties go to the lowest vertex index; a zero
/// component of u on a box selects the midpoint of that edge.
Vec support_point(const ConvexBody& body, const Vec& u);

/// sup { ||x|| : x in body } for balls, boxes, simplices and polytopes. For an
/// ellipsoid it returns ||c|| + sqrt(lambda_max(A)), which bounds the sup.
double radius_bound(const ConvexBody& body);

/// Symmetric square root of a symmetric positive definite matrix.
Mat sqrt_spd(const Mat& a);

/// Distance from x to the body.
double distance(const ConvexBody& body, const Vec& x);

// ---------------------------------------------------------------------------
// Affine images and Minkowski sums
// ---------------------------------------------------------------------------

/// The set matrix * body + offset.
struct AffineTerm {
    Mat matrix;
    Vec offset;
    ConvexBody body;

    Index output_dim() const { return matrix.rows(); }
    Vec map(const Vec& x) const { return matrix * x + offset; }
};

/// Identity image of a body.
AffineTerm identity_term(ConvexBody body);

void validate(const AffineTerm& term);

/// Q = sum_i T_i(Omega_i).
class MinkowskiProblem {
public:
    MinkowskiProblem() = default;
    explicit MinkowskiProblem(std::vector<AffineTerm> terms);

    const std::vector<AffineTerm>& terms() const noexcept { return terms_; }
    Index ambient_dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Sum of the images of per-term body points.
    Vec assemble(const std::vector<Vec>& constituents) const;

    /// The problem whose set is -Q (matrices and offsets negated).
    MinkowskiProblem negated() const;

private:
    std::vector<AffineTerm> terms_;
    Index dim_ = 0;
};

struct MinkowskiSupport {
    double value = 0.0;
    Vec point;
    std::vector<Vec> constituents; ///< per-term support points in body coordinates
};

/// Support value and support point of Q in direction u, assembled term by term.
MinkowskiSupport minkowski_support(const MinkowskiProblem& problem, const Vec& u);

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

/// matrix * simple_body + offset, with simple_body one of Ball, Box or
/// UnitSimplex. Points of simple_body map back to the original body through
/// x -> pullback_matrix * p + pullback_offset.
struct CanonicalTerm {
    Mat matrix;
    Vec offset;
    ConvexBody simple_body;
    Mat pullback_matrix;
    Vec pullback_offset;

    Vec pull_back(const Vec& p) const { return pullback_matrix * p + pullback_offset; }
};

/// Rewrites ellipsoids as images of the unit ball and polytopes as images of
/// the unit simplex. Other bodies are passed through unchanged.
CanonicalTerm canonicalize(const AffineTerm& term);

double support_value(const CanonicalTerm& term, const Vec& u);

} // namespace minksum
