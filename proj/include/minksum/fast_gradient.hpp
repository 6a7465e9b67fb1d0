#pragma once

#include <cstddef>
#include <functional>

#include "minksum/geometry.hpp"

namespace minksum {

using GradientFn = std::function<Vec(const Vec&)>;
/// Called with (k, u_k); returning true stops the iteration at u_k.
using StopFn = std::function<bool(std::size_t, const Vec&)>;
using IterateObserver = std::function<void(std::size_t, const Vec&)>;

struct FastGradientResult {
    Vec u;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Constant-step accelerated gradient method for a gamma-strongly convex
/// objective with L-Lipschitz gradient:
///
///   u_{k+1} = v_k - grad(v_k) / L
///   v_{k+1} = u_{k+1} + (sqrt(L) - sqrt(gamma)) / (sqrt(L) + sqrt(gamma)) (u_{k+1} - u_k)
///
/// starting from v_0 = u_0. The stop predicate is checked on u_0 and then on
/// every u_k; at most max_iter steps are taken. Requires L >= gamma > 0.
FastGradientResult fast_gradient(const GradientFn& grad, double lipschitz, double gamma, Vec u0,
                                 const StopFn& stop, std::size_t max_iter,
                                 const IterateObserver& observer = {});

} // namespace minksum
