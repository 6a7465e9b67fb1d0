#include "minksum/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>

#include "minksum/bench.hpp"
#include "minksum/certify.hpp"
#include "minksum/problem_io.hpp"
#include "minksum/solvers.hpp"

namespace minksum::cli {

namespace {

using nlohmann::json;

struct SolverFlags {
    std::string algo = "nesmino";
    double mu0 = 100.0;
    double sigma = 0.1;
    double mu_star = 1e-3;
    double eps = 1e-3;
    double gamma = 2.0;
    double delta = 1e-4;
    std::size_t max_iter = 0;
    bool trace = false;

    void attach(CLI::App& app, bool with_algo = true) {
        if (with_algo) app.add_option("--algo", algo, "Solver")->check(CLI::IsMember({"nesmino", "gilbert"}));
        app.add_option("--mu0", mu0, "Initial smoothing parameter")->capture_default_str();
        app.add_option("--sigma", sigma, "Smoothing decrease factor")->capture_default_str();
        app.add_option("--mu-star", mu_star, "Final smoothing parameter")->capture_default_str();
        app.add_option("--eps", eps, "Gradient-norm tolerance per smoothing stage")->capture_default_str();
        app.add_option("--gamma", gamma, "Strong-convexity modulus used in the momentum term")->capture_default_str();
        app.add_option("--delta", delta, "Gilbert duality-gap tolerance")->capture_default_str();
        app.add_option("--max-iter", max_iter, "Iteration cap (per stage for nesmino; 0 = default)");
    }

    NesminoParams nesmino_params() const {
        NesminoParams p;
        p.mu0 = mu0;
        p.sigma = sigma;
        p.mu_star = mu_star;
        p.eps = eps;
        p.gamma = gamma;
        p.max_iter_per_stage = max_iter;
        p.record_history = trace;
        return p;
    }

    GilbertParams gilbert_params() const {
        GilbertParams p;
        p.delta = delta;
        if (max_iter > 0) p.max_iter = max_iter;
        p.record_history = trace;
        return p;
    }

    SolveReport solve(const MinkowskiProblem& problem) const {
        return algo == "gilbert" ? gilbert(problem, gilbert_params()) : nesmino(problem, nesmino_params());
    }
};

int cmd_solve(const std::string& problem_path, const std::string& subtract_path, const SolverFlags& flags,
              std::ostream& out) {
    const auto problem = io::parse_problem(problem_path);
    json j;
    bool converged = false;
    if (subtract_path.empty()) {
        const auto report = flags.solve(problem);
        j = io::report_to_json(report, flags.algo, flags.trace);
        converged = report.converged;
    } else {
        const auto other = io::parse_problem(subtract_path);
        const auto pair = flags.algo == "gilbert" ? closest_pair(problem, other, flags.gilbert_params())
                                                  : closest_pair(problem, other, flags.nesmino_params());
        j = io::report_to_json(pair.report, flags.algo, flags.trace);
        j["pair"] = {{"a", io::vector_to_json(pair.a)}, {"b", io::vector_to_json(pair.b)}};
        converged = pair.report.converged;
    }
    out << j.dump(2) << '\n';
    return converged ? kSuccess : kNotConverged;
}

int cmd_verify(const std::string& problem_path, const std::string& report_path, const SolverFlags& flags,
               double tol, const std::string& oracle, std::ostream& out) {
    const auto problem = io::parse_problem(problem_path);
    Vec solution;
    std::vector<Vec> constituents;
    if (!report_path.empty()) {
        std::ifstream in(report_path);
        if (!in) throw ParseError(report_path, "cannot open report");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError(report_path, "malformed report JSON");
        }
        auto parsed = io::report_from_json(j);
        solution = std::move(parsed.solution);
        constituents = std::move(parsed.constituents);
    } else {
        auto report = flags.solve(problem);
        solution = std::move(report.solution);
        constituents = std::move(report.constituents);
    }
    std::optional<double> oracle_distance;
    if (oracle == "on") oracle_distance = oracle_solve(problem).point.norm();
    const auto cert = certify(problem, solution, constituents, tol, oracle_distance);
    out << io::certificate_to_json(cert).dump(2) << '\n';
    return cert.pass ? kSuccess : kNotConverged;
}

int cmd_boundary(const std::string& problem_path, int samples, std::ostream& out) {
    const auto problem = io::parse_problem(problem_path);
    if (problem.ambient_dim() != 2) throw InvalidInput("boundary: problem must be two-dimensional");
    if (samples < 3) throw InvalidInput("boundary: need at least 3 samples");
    out << "k,angle,x,y\n";
    for (int k = 0; k < samples; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / samples;
        const Vec u = (Vec(2) << std::cos(angle), std::sin(angle)).finished();
        const auto s = minkowski_support(problem, u);
        out << k << ',' << io::format_double(angle) << ',' << io::format_double(s.point[0]) << ','
            << io::format_double(s.point[1]) << '\n';
    }
    return kSuccess;
}

int cmd_bench(const bench::BenchConfig& config, const SolverFlags& flags, unsigned jobs, bool timing,
              const std::string& out_path, std::ostream& out) {
    const auto rows = bench::run(config, flags.nesmino_params(), flags.gilbert_params(), jobs);
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw ParseError(out_path, "cannot write CSV");
    }
    std::ostream& sink = out_path.empty() ? out : file;
    bench::write_csv_header(sink, timing);
    for (const auto& r : rows) bench::write_csv_row(sink, r, timing);
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Projection of the origin onto Minkowski sums of convex sets", "minksum"};
    app.require_subcommand(1);

    SolverFlags flags;
    std::string problem_path, subtract_path, report_path, out_path;
    std::string oracle = "off";
    double tol = 1e-3;
    int samples = 360;
    unsigned jobs = 1;
    bool no_timing = false;
    bench::BenchConfig config;

    auto* solve = app.add_subcommand("solve", "Project the origin onto the set described by a problem file");
    solve->add_option("--problem", problem_path, "Problem JSON file")->required();
    solve->add_option("--subtract", subtract_path, "Second problem P: compute the closest pair of Q and P");
    flags.attach(*solve);
    solve->add_flag("--trace", flags.trace, "Include the iterate history");

    auto* verify = app.add_subcommand("verify", "Certify a solution (from --report or an inline solve)");
    verify->add_option("--problem", problem_path, "Problem JSON file")->required();
    verify->add_option("--report", report_path, "Report JSON produced by `solve`");
    verify->add_option("--tol", tol, "Certificate tolerance")->capture_default_str();
    verify->add_option("--oracle", oracle, "Cross-check against the reference solver")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    flags.attach(*verify);

    auto* boundary = app.add_subcommand("boundary", "Support points of a 2-D sum at equally spaced angles");
    boundary->add_option("--problem", problem_path, "Problem JSON file")->required();
    boundary->add_option("--samples", samples, "Number of directions")->capture_default_str();

    auto* bench_cmd = app.add_subcommand("bench", "Random ellipsoid-pair benchmark, both solvers, CSV output");
    bench_cmd->add_option("--d", config.d, "Dimension")->capture_default_str();
    bench_cmd->add_option("--cond", config.cond, "Shape exponent")->capture_default_str();
    bench_cmd->add_option("--count", config.count, "Number of instances")->capture_default_str();
    bench_cmd->add_option("--seed", config.seed, "64-bit seed")->capture_default_str();
    bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    bench_cmd->add_flag("--no-timing", no_timing, "Omit the timing columns");
    bench_cmd->add_option("--out", out_path, "Write the CSV here instead of stdout");
    flags.attach(*bench_cmd, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    try {
        if (*solve) return cmd_solve(problem_path, subtract_path, flags, out);
        if (*verify) return cmd_verify(problem_path, report_path, flags, tol, oracle, out);
        if (*boundary) return cmd_boundary(problem_path, samples, out);
        if (*bench_cmd) return cmd_bench(config, flags, jobs, !no_timing, out_path, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsageError;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
        return kUsageError;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kNotConverged;
    }
    return kUsageError;
}

} // namespace minksum::cli
