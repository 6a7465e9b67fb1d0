#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "minksum/geometry.hpp"
#include "minksum/solvers.hpp"

namespace minksum::bench {

/// Random pairs of axis-aligned ellipsoids E1 + E2 in R^d. The shape
/// diagonals are independent permutations of
///   M = { 10^((i-1) cond / (d-1)) : i = 1..d }
/// and the center entries are uniform in [m, 11 m] with m = sqrt(10^cond / d),
/// which keeps the origin outside E1 + E2.
struct BenchConfig {
    int d = 10;
    double cond = 2.0;
    int count = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

std::vector<double> shape_spectrum(int d, double cond);
double center_scale(int d, double cond);

/// Stream rule: instance i draws from std::mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(i + 1)). Uniform reals take the top 53 bits;
/// permutations are Fisher-Yates with rejection-sampled bounded integers.
/// Both are implemented here so that the stream is identical on every platform.
std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);
double uniform01(std::mt19937_64& rng);
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n);
template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(rng, i)]);
}

MinkowskiProblem make_instance(const BenchConfig& config, int index);

struct BenchRow {
    int instance = 0;
    int d = 0;
    double cond = 0.0;
    std::uint64_t seed = 0;
    double f_nesmino = 0.0; ///< ||y||^2 from the smoothing solver
    double f_gilbert = 0.0; ///< ||z||^2 from Gilbert's algorithm
    bool agree = false;     ///< |f_nesmino - f_gilbert| < 1e-6
    bool nesmino_converged = false;
    bool gilbert_converged = false;
    double t_nesmino_ms = 0.0;
    double t_gilbert_ms = 0.0;
};

inline constexpr double kAgreementTolerance = 1e-6;

/// Solves every instance with both solvers; rows come back in instance order
/// regardless of `jobs`.
std::vector<BenchRow> run(const BenchConfig& config, const NesminoParams& nesmino_params = {},
                          const GilbertParams& gilbert_params = {}, unsigned jobs = 1);

void write_csv_header(std::ostream& out, bool with_timing = true);
void write_csv_row(std::ostream& out, const BenchRow& row, bool with_timing = true);

} // namespace minksum::bench
