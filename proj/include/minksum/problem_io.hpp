#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "minksum/certify.hpp"
#include "minksum/geometry.hpp"
#include "minksum/solvers.hpp"

namespace minksum::io {

inline constexpr int kFormatVersion = 1;

/// Problem files: see docs/problem_format.md. All errors are ParseError with
/// a JSON-pointer or line:column location.
MinkowskiProblem parse_problem(const std::filesystem::path& path);
MinkowskiProblem parse_problem_text(std::string_view text);
MinkowskiProblem problem_from_json(const nlohmann::json& j);

/// Canonical form: every term carries an explicit matrix and offset.
nlohmann::json problem_to_json(const MinkowskiProblem& problem);
std::string dump_problem(const MinkowskiProblem& problem);

nlohmann::json vector_to_json(const Vec& v);
nlohmann::json matrix_to_json(const Mat& m);

nlohmann::json report_to_json(const SolveReport& report, std::string_view algo, bool include_history = false);

struct ParsedReport {
    Vec solution;
    std::vector<Vec> constituents;
};
ParsedReport report_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const Certificate& c);

/// "%.17g"; the CSV writers use this for lossless doubles.
std::string format_double(double x);

} // namespace minksum::io
