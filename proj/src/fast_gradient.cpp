#include "minksum/fast_gradient.hpp"

#include <cmath>

namespace minksum {

FastGradientResult fast_gradient(const GradientFn& grad, double lipschitz, double gamma, Vec u0,
                                 const StopFn& stop, std::size_t max_iter, const IterateObserver& observer) {
    if (!(gamma > 0.0)) throw InvalidInput("fast_gradient: gamma must be positive");
    if (!(lipschitz >= gamma)) throw InvalidInput("fast_gradient: Lipschitz constant must be at least gamma");

    const double sl = std::sqrt(lipschitz);
    const double sg = std::sqrt(gamma);
    const double momentum = (sl - sg) / (sl + sg);
    const double step = 1.0 / lipschitz;

    FastGradientResult out;
    out.u = std::move(u0);
    if (stop && stop(0, out.u)) {
        out.converged = true;
        return out;
    }

    Vec v = out.u;
    for (std::size_t k = 1; k <= max_iter; ++k) {
        Vec next = v - step * grad(v);
        v = next + momentum * (next - out.u);
        out.u = std::move(next);
        out.iterations = k;
        if (observer) observer(k, out.u);
        if (stop && stop(k, out.u)) {
            out.converged = true;
            break;
        }
    }
    return out;
}

} // namespace minksum
