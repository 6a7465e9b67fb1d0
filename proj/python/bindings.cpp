#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "minksum/certify.hpp"
#include "minksum/problem_io.hpp"
#include "minksum/smoothing.hpp"
#include "minksum/solvers.hpp"

namespace py = pybind11;
using namespace minksum;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Projection of the origin onto Minkowski sums of affinely transformed convex sets.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<Ball>(m, "Ball")
        .def(py::init([](Vec center, double radius) {
                 Ball b{std::move(center), radius};
                 validate(ConvexBody{b});
                 return b;
             }),
             py::arg("center"), py::arg("radius"))
        .def_readonly("center", &Ball::center)
        .def_readonly("radius", &Ball::radius);
    py::class_<Box>(m, "Box")
        .def(py::init([](Vec lower, Vec upper) {
                 Box b{std::move(lower), std::move(upper)};
                 validate(ConvexBody{b});
                 return b;
             }),
             py::arg("lower"), py::arg("upper"))
        .def_readonly("lower", &Box::lower)
        .def_readonly("upper", &Box::upper);
    py::class_<UnitSimplex>(m, "UnitSimplex")
        .def(py::init([](Index dim) {
                 UnitSimplex s{dim};
                 validate(ConvexBody{s});
                 return s;
             }),
             py::arg("dim"))
        .def_readonly("dim", &UnitSimplex::dim);
    py::class_<Ellipsoid>(m, "Ellipsoid")
        .def(py::init([](Mat shape, Vec center) {
                 Ellipsoid e{std::move(shape), std::move(center)};
                 validate(ConvexBody{e});
                 return e;
             }),
             py::arg("shape"), py::arg("center"))
        .def_readonly("shape", &Ellipsoid::shape)
        .def_readonly("center", &Ellipsoid::center);
    py::class_<VPolytope>(m, "VPolytope")
        .def(py::init([](Mat vertices) {
                 VPolytope p{std::move(vertices)};
                 validate(ConvexBody{p});
                 return p;
             }),
             py::arg("vertices"), "Vertices as the rows of a matrix.")
        .def_readonly("vertices", &VPolytope::vertices);

    py::class_<AffineTerm>(m, "AffineTerm")
        .def(py::init([](ConvexBody body, std::optional<Mat> matrix, std::optional<Vec> offset) {
                 AffineTerm t = identity_term(body);
                 if (matrix) {
                     t.matrix = *matrix;
                     t.offset = Vec::Zero(matrix->rows());
                 }
                 if (offset) t.offset = *offset;
                 validate(t);
                 return t;
             }),
             py::arg("body"), py::arg("matrix") = py::none(), py::arg("offset") = py::none())
        .def_readonly("matrix", &AffineTerm::matrix)
        .def_readonly("offset", &AffineTerm::offset)
        .def_readonly("body", &AffineTerm::body);

    py::class_<MinkowskiProblem>(m, "MinkowskiProblem")
        .def(py::init<std::vector<AffineTerm>>(), py::arg("terms"))
        .def_property_readonly("terms", &MinkowskiProblem::terms)
        .def_property_readonly("ambient_dim", &MinkowskiProblem::ambient_dim)
        .def("to_json", [](const MinkowskiProblem& p) { return io::dump_problem(p); })
        .def("__len__", &MinkowskiProblem::size);

    m.def("load_problem", [](const std::filesystem::path& p) { return io::parse_problem(p); }, py::arg("path"));
    m.def("parse_problem", [](const std::string& text) { return io::parse_problem_text(text); }, py::arg("text"));

    m.def("project", &project, py::arg("body"), py::arg("x"));
    m.def("project_simplex", &project_simplex, py::arg("v"), py::arg("dim"));
    m.def("support_value", py::overload_cast<const ConvexBody&, const Vec&>(&support_value), py::arg("body"), py::arg("u"));
    m.def("support_point", &support_point, py::arg("body"), py::arg("u"));
    m.def("radius_bound", &radius_bound, py::arg("body"));
    m.def("sqrt_spd", &sqrt_spd, py::arg("a"));
    m.def(
        "minkowski_support",
        [](const MinkowskiProblem& p, const Vec& u) {
            auto s = minkowski_support(p, u);
            return py::make_tuple(s.value, s.point);
        },
        py::arg("problem"), py::arg("u"));

    m.def("dual_value", &dual_value, py::arg("problem"), py::arg("u"));
    m.def("lipschitz_constant", py::overload_cast<const MinkowskiProblem&, double>(&lipschitz_constant),
          py::arg("problem"), py::arg("mu"));
    py::class_<SmoothedDual>(m, "SmoothedDual")
        .def(py::init<const MinkowskiProblem&, double, double>(), py::arg("problem"), py::arg("mu"),
             py::arg("gamma") = 2.0)
        .def("value", &SmoothedDual::value)
        .def("gradient", &SmoothedDual::gradient)
        .def_property_readonly("mu", &SmoothedDual::mu)
        .def_property_readonly("l_mu", &SmoothedDual::l_mu)
        .def_property_readonly("d_f", &SmoothedDual::d_f);

    py::class_<NesminoParams>(m, "NesminoParams")
        .def(py::init<>())
        .def_readwrite("mu0", &NesminoParams::mu0)
        .def_readwrite("sigma", &NesminoParams::sigma)
        .def_readwrite("mu_star", &NesminoParams::mu_star)
        .def_readwrite("eps", &NesminoParams::eps)
        .def_readwrite("gamma", &NesminoParams::gamma)
        .def_readwrite("max_iter_per_stage", &NesminoParams::max_iter_per_stage)
        .def_readwrite("u0", &NesminoParams::u0)
        .def_readwrite("record_history", &NesminoParams::record_history)
        .def_static("fixed", &NesminoParams::fixed, py::arg("mu"), py::arg("eps") = 1e-3);
    py::class_<GilbertParams>(m, "GilbertParams")
        .def(py::init<>())
        .def_readwrite("delta", &GilbertParams::delta)
        .def_readwrite("z0", &GilbertParams::z0)
        .def_readwrite("z0_constituents", &GilbertParams::z0_constituents)
        .def_readwrite("max_iter", &GilbertParams::max_iter)
        .def_readwrite("record_history", &GilbertParams::record_history);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("solution", &SolveReport::solution)
        .def_readonly("constituents", &SolveReport::constituents)
        .def_readonly("dual", &SolveReport::dual)
        .def_readonly("distance", &SolveReport::distance)
        .def_readonly("gap", &SolveReport::gap)
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("stage_mu", &SolveReport::stage_mu)
        .def_readonly("converged", &SolveReport::converged)
        .def_readonly("degenerate", &SolveReport::degenerate)
        .def_readonly("history", &SolveReport::history)
        .def_readonly("wall_ms", &SolveReport::wall_ms);

    m.def("nesmino", &nesmino, py::arg("problem"), py::arg("params") = NesminoParams{});
    m.def("gilbert", &gilbert, py::arg("problem"), py::arg("params") = GilbertParams{});
    m.def("duality_gap", &duality_gap, py::arg("problem"), py::arg("z"));
    m.def(
        "recover_primal",
        [](const MinkowskiProblem& p, const Vec& u, double mu) {
            auto r = recover_primal(p, u, mu);
            return py::make_tuple(r.y, r.constituents);
        },
        py::arg("problem"), py::arg("u"), py::arg("mu"));

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("distance", &Certificate::distance)
        .def_readonly("gap", &Certificate::gap)
        .def_readonly("normal_residuals", &Certificate::normal_residuals)
        .def_readonly("decomposition_residual", &Certificate::decomposition_residual)
        .def_readonly("membership_residual", &Certificate::membership_residual)
        .def_readonly("distance_error_bound", &Certificate::distance_error_bound)
        .def_readonly("oracle_distance", &Certificate::oracle_distance)
        .def_readonly("passed", &Certificate::pass);
    m.def("certify",
          py::overload_cast<const MinkowskiProblem&, const SolveReport&, double, std::optional<double>>(&certify),
          py::arg("problem"), py::arg("report"), py::arg("tol") = 1e-3, py::arg("oracle_distance") = py::none());
    m.def(
        "oracle_solve",
        [](const MinkowskiProblem& p, double tol) { return oracle_solve(p, tol).point; },
        py::arg("problem"), py::arg("tol") = 1e-9);

    py::class_<ClosestPair>(m, "ClosestPair")
        .def_readonly("a", &ClosestPair::a)
        .def_readonly("b", &ClosestPair::b)
        .def_readonly("distance", &ClosestPair::distance)
        .def_readonly("report", &ClosestPair::report);
    m.def("closest_pair",
          py::overload_cast<const MinkowskiProblem&, const MinkowskiProblem&, const NesminoParams&>(&closest_pair),
          py::arg("q"), py::arg("p"), py::arg("params") = NesminoParams{});
}
