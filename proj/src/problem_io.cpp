#include "minksum/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minksum::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(where, "number is not finite");
    return x;
}

Vec vector_of(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    Vec v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = number(j[i], where + "/" + std::to_string(i));
    return v;
}

// Nested rows, or a flat row-major array whose row count is `rows` (when >0).
Mat matrix_of(const json& j, const std::string& where, Index rows) {
    if (!j.is_array() || j.empty()) fail(where, "expected a nonempty matrix");
    if (j.front().is_array()) {
        const Index r = static_cast<Index>(j.size());
        const Index c = static_cast<Index>(j.front().size());
        Mat m(r, c);
        for (Index i = 0; i < r; ++i) {
            const std::string wi = where + "/" + std::to_string(i);
            const json& row = j[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Index>(row.size()) != c) fail(wi, "rows have different lengths");
            for (Index k = 0; k < c; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], wi + "/" + std::to_string(k));
        }
        return m;
    }
    const Vec flat = vector_of(j, where);
    if (rows <= 0 || flat.size() % rows != 0) fail(where, "flat matrix length is not a multiple of the row count");
    const Index c = flat.size() / rows;
    Mat m(rows, c);
    for (Index i = 0; i < rows; ++i)
        for (Index k = 0; k < c; ++k) m(i, k) = flat[i * c + k];
    return m;
}

ConvexBody body_of(const json& j, const std::string& where) {
    const json& type = field(j, "type", where);
    if (!type.is_string()) fail(where + "/type", "expected a string");
    const std::string t = type.get<std::string>();
    ConvexBody body;
    if (t == "ball") {
        body = Ball{vector_of(field(j, "center", where), where + "/center"),
                    number(field(j, "radius", where), where + "/radius")};
    } else if (t == "box") {
        body = Box{vector_of(field(j, "lower", where), where + "/lower"),
                   vector_of(field(j, "upper", where), where + "/upper")};
    } else if (t == "simplex") {
        const json& d = field(j, "dim", where);
        if (!d.is_number_integer()) fail(where + "/dim", "expected an integer");
        body = UnitSimplex{d.get<Index>()};
    } else if (t == "ellipsoid") {
        Vec c = vector_of(field(j, "center", where), where + "/center");
        Mat shape = matrix_of(field(j, "shape", where), where + "/shape", c.size());
        body = Ellipsoid{std::move(shape), std::move(c)};
    } else if (t == "polytope") {
        body = VPolytope{matrix_of(field(j, "vertices", where), where + "/vertices", 0)};
    } else {
        fail(where + "/type", "unknown body type '" + t + "'");
    }
    try {
        validate(body);
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
    return body;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

MinkowskiProblem problem_from_json(const json& j) {
    if (!j.is_object()) fail("", "problem must be a JSON object");
    if (const auto v = j.find("version"); v != j.end()) {
        if (!v->is_number_integer() || v->get<int>() != kFormatVersion)
            fail("/version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
    }
    const json& dim_j = field(j, "ambient_dim", "");
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) fail("/ambient_dim", "expected a positive integer");
    const Index n = dim_j.get<Index>();

    const json& terms_j = field(j, "terms", "");
    if (!terms_j.is_array()) fail("/terms", "expected an array");
    if (terms_j.empty()) fail("/terms", "problem has no terms");

    std::vector<AffineTerm> terms;
    for (std::size_t i = 0; i < terms_j.size(); ++i) {
        const std::string where = "/terms/" + std::to_string(i);
        const json& tj = terms_j[i];
        ConvexBody body = body_of(field(tj, "body", where), where + "/body");
        const Index m = ambient_dim(body);

        Mat a;
        if (const auto it = tj.find("matrix"); it != tj.end() && !it->is_null()) {
            a = matrix_of(*it, where + "/matrix", n);
        } else {
            if (m != n) fail(where + "/matrix", "identity matrix requires body dimension == ambient_dim");
            a = Mat::Identity(n, n);
        }
        if (a.rows() != n) fail(where + "/matrix", "row count differs from ambient_dim");
        if (a.cols() != m) fail(where + "/matrix", "column count differs from body dimension");

        Vec offset = Vec::Zero(n);
        if (const auto it = tj.find("offset"); it != tj.end() && !it->is_null()) {
            offset = vector_of(*it, where + "/offset");
            if (offset.size() != n) fail(where + "/offset", "length differs from ambient_dim");
        }
        terms.push_back(AffineTerm{std::move(a), std::move(offset), std::move(body)});
    }
    try {
        return MinkowskiProblem(std::move(terms));
    } catch (const InvalidInput& e) {
        fail("/terms", e.what());
    }
}

MinkowskiProblem parse_problem_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        fail(std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
    }
    return problem_from_json(j);
}

MinkowskiProblem parse_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path.string(), "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_problem_text(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

json vector_to_json(const Vec& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
    return rows;
}

namespace {

json body_to_json(const ConvexBody& body) {
    if (const auto* b = std::get_if<Ball>(&body))
        return {{"type", "ball"}, {"center", vector_to_json(b->center)}, {"radius", b->radius}};
    if (const auto* b = std::get_if<Box>(&body))
        return {{"type", "box"}, {"lower", vector_to_json(b->lower)}, {"upper", vector_to_json(b->upper)}};
    if (const auto* s = std::get_if<UnitSimplex>(&body)) return {{"type", "simplex"}, {"dim", s->dim}};
    if (const auto* e = std::get_if<Ellipsoid>(&body))
        return {{"type", "ellipsoid"}, {"shape", matrix_to_json(e->shape)}, {"center", vector_to_json(e->center)}};
    const auto& p = std::get<VPolytope>(body);
    return {{"type", "polytope"}, {"vertices", matrix_to_json(p.vertices)}};
}

} // namespace

json problem_to_json(const MinkowskiProblem& problem) {
    json terms = json::array();
    for (const auto& t : problem.terms()) {
        terms.push_back({{"matrix", matrix_to_json(t.matrix)},
                         {"offset", vector_to_json(t.offset)},
                         {"body", body_to_json(t.body)}});
    }
    return {{"version", kFormatVersion}, {"ambient_dim", problem.ambient_dim()}, {"terms", std::move(terms)}};
}

std::string dump_problem(const MinkowskiProblem& problem) { return problem_to_json(problem).dump(2) + "\n"; }

json report_to_json(const SolveReport& report, std::string_view algo, bool include_history) {
    json constituents = json::array();
    for (const auto& x : report.constituents) constituents.push_back(vector_to_json(x));
    json j = {
        {"algo", std::string(algo)},
        {"distance", report.distance},
        {"solution", vector_to_json(report.solution)},
        {"constituents", std::move(constituents)},
        {"dual", report.dual ? vector_to_json(*report.dual) : json(nullptr)},
        {"gap", report.gap},
        {"iterations", report.iterations},
        {"converged", report.converged},
        {"degenerate", report.degenerate},
        {"wall_ms", report.wall_ms},
    };
    if (!report.stage_mu.empty()) j["stage_mu"] = report.stage_mu;
    if (include_history) {
        json h = json::array();
        for (const auto& y : report.history) h.push_back(vector_to_json(y));
        j["history"] = std::move(h);
    }
    return j;
}

ParsedReport report_from_json(const json& j) {
    ParsedReport r;
    r.solution = vector_of(field(j, "solution", ""), "/solution");
    const json& cs = field(j, "constituents", "");
    if (!cs.is_array()) fail("/constituents", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) r.constituents.push_back(vector_of(cs[i], "/constituents/" + std::to_string(i)));
    return r;
}

json certificate_to_json(const Certificate& c) {
    return {
        {"verdict", c.pass ? "pass" : "fail"},
        {"distance", c.distance},
        {"gap", c.gap},
        {"normal_residuals", c.normal_residuals},
        {"decomposition_residual", c.decomposition_residual},
        {"membership_residual", c.membership_residual},
        {"distance_error_bound", c.distance_error_bound},
        {"oracle_distance", c.oracle_distance ? json(*c.oracle_distance) : json(nullptr)},
        {"tolerance", c.tolerance},
    };
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace minksum::io
