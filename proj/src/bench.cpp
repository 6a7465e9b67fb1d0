#include "minksum/bench.hpp"

#include <atomic>
#include <limits>
#include <mutex>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "minksum/problem_io.hpp"

namespace minksum::bench {

void BenchConfig::validate() const {
    if (d < 2) throw InvalidInput("bench: d must be at least 2");
    if (!(cond >= 1.0)) throw InvalidInput("bench: cond must be at least 1");
    if (count < 1) throw InvalidInput("bench: count must be positive");
}

std::vector<double> shape_spectrum(int d, double cond) {
    std::vector<double> m(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) m[static_cast<std::size_t>(i - 1)] = std::pow(10.0, (i - 1) * cond / (d - 1));
    return m;
}

double center_scale(int d, double cond) { return std::sqrt(std::pow(10.0, cond) / d); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

MinkowskiProblem make_instance(const BenchConfig& config, int index) {
    config.validate();
    auto rng = instance_rng(config.seed, static_cast<std::uint64_t>(index));
    const auto spectrum = shape_spectrum(config.d, config.cond);
    const double m = center_scale(config.d, config.cond);

    std::vector<AffineTerm> terms;
    for (int e = 0; e < 2; ++e) {
        auto diag = spectrum;
        shuffle(diag, rng);
        Vec c(config.d);
        for (int i = 0; i < config.d; ++i) c[i] = m + 10.0 * m * uniform01(rng);
        Mat shape = Mat::Zero(config.d, config.d);
        for (int i = 0; i < config.d; ++i) shape(i, i) = diag[static_cast<std::size_t>(i)];
        terms.push_back(identity_term(Ellipsoid{std::move(shape), std::move(c)}));
    }
    return MinkowskiProblem(std::move(terms));
}

namespace {

BenchRow solve_instance(const BenchConfig& config, int index, const NesminoParams& np, const GilbertParams& gp) {
    const auto problem = make_instance(config, index);
    const auto rn = nesmino(problem, np);
    const auto rg = gilbert(problem, gp);
    if (!(rn.distance > 0.0) || !(rg.distance > 0.0))
        throw std::logic_error("bench: instance " + std::to_string(index) + " has the origin in E1 + E2");

    BenchRow row;
    row.instance = index;
    row.d = config.d;
    row.cond = config.cond;
    row.seed = config.seed;
    row.f_nesmino = rn.solution.squaredNorm();
    row.f_gilbert = rg.solution.squaredNorm();
    row.agree = std::abs(row.f_nesmino - row.f_gilbert) < kAgreementTolerance;
    row.nesmino_converged = rn.converged;
    row.gilbert_converged = rg.converged;
    row.t_nesmino_ms = rn.wall_ms;
    row.t_gilbert_ms = rg.wall_ms;
    return row;
}

} // namespace

std::vector<BenchRow> run(const BenchConfig& config, const NesminoParams& np, const GilbertParams& gp, unsigned jobs) {
    config.validate();
    std::vector<BenchRow> rows(static_cast<std::size_t>(config.count));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int i = next++; i < config.count; i = next++) {
            try {
                rows[static_cast<std::size_t>(i)] = solve_instance(config, i, np, gp);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min(jobs, static_cast<unsigned>(config.count)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

void write_csv_header(std::ostream& out, bool with_timing) {
    out << "instance,d,cond,seed,f_nesmino,f_gilbert,agree";
    if (with_timing) out << ",t_nesmino_ms,t_gilbert_ms";
    out << '\n';
}

void write_csv_row(std::ostream& out, const BenchRow& row, bool with_timing) {
    out << row.instance << ',' << row.d << ',' << io::format_double(row.cond) << ',' << row.seed << ','
        << io::format_double(row.f_nesmino) << ',' << io::format_double(row.f_gilbert) << ','
        << (row.agree ? "true" : "false");
    if (with_timing) out << ',' << io::format_double(row.t_nesmino_ms) << ',' << io::format_double(row.t_gilbert_ms);
    out << '\n';
}

} // namespace minksum::bench
