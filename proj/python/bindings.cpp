#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ncgcurv/cli.hpp"
#include "ncgcurv/deformation.hpp"
#include "ncgcurv/report.hpp"

namespace py = pybind11;
using namespace ncgcurv;

namespace {

// nested Json -> Python objects via the json module
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Mode parse_mode(const std::string& m) {
    if (m == "classical") return Mode::Classical;
    if (m == "deformed") return Mode::Deformed;
    throw py::value_error("mode must be 'classical' or 'deformed'");
}

Rational parse_theta(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw py::value_error("theta must look like p/q");
    q.canonicalize();
    return q;
}

py::list checks_py(const std::vector<CheckResult>& rs) {
    py::list out;
    for (const auto& r : rs) out.append(to_py(check_json(r)));
    return out;
}

py::dict solve_py(const GeometrySpec& g, const std::string& mode) {
    Calculus c(g, parse_mode(mode));
    auto sol = solve_levi_civita(c);
    py::dict d;
    d["A"] = to_py(tensor_json(sol.connection.a, c.algebra()));
    d["concordant"] = sol.concordance.concordant;
    d["pi_dimension"] = sol.concordance.pi_dimension;
    d["postconditions"] = checks_py(sol.postconditions);
    return d;
}

std::string scalar_curvature_py(const GeometrySpec& g, const std::string& mode, const std::string& chirality) {
    Calculus c(g, parse_mode(mode));
    Connection conn = solve_levi_civita(c).connection;
    Chirality ch = Chirality::Right;
    if (chirality == "left") {
        conn = conjugate(c, conn);
        ch = Chirality::Left;
    } else if (chirality != "right") {
        throw py::value_error("chirality must be 'right' or 'left'");
    }
    Element r = scalar_curvature(c, ch, ricci(c, ch, curvature_tensor(c, conn)));
    Scalar f = r.coeff(c.algebra().unit());
    if (!(r == Element::scalar(f, c.algebra().unit()))) throw py::value_error("scalar curvature is not constant: " + describe(r, c.algebra()));
    return f.str();
}

// residue factor f with D^2 - Lap = f on the spinor basis, None when it is not a scalar
std::optional<std::string> residue_py(const GeometrySpec& g, const std::string& mode) {
    if (g.dirac.s == 0) throw py::value_error("geometry has no spinor data");
    Calculus c(g, parse_mode(mode));
    DiracModule dm(c, solve_levi_civita(c).connection);
    std::optional<Scalar> factor;
    for (int a = 0; a < c.spinor_rank(); ++a) {
        Tensor x = c.spinor(a, c.algebra().unit());
        Tensor res = dm.weitzenbock_residue(x);
        Scalar f = res.coefficient({spinor_leg(a)}).coeff(c.algebra().unit());
        if (res != x.scaled(f) || (factor && *factor != f)) return std::nullopt;
        factor = f;
    }
    return factor->str();
}

py::list theta_py(const GeometrySpec& g, const std::optional<std::string>& theta, std::uint64_t seed, int samples) {
    ThetaContext ctx = theta ? ThetaContext::numeric(parse_theta(*theta)) : ThetaContext::exact();
    std::vector<CheckResult> rs;
    {
        py::gil_scoped_release nogil;
        rs = verify_theta_theorems(g, ctx, {seed, samples});
    }
    return checks_py(rs);
}

py::tuple run_cli_py(const std::vector<std::string>& args) {
    std::vector<std::string> full{"ncgcurv"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release nogil;
        code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_ncgcurv, m) {
    m.doc() = "exact curvature of frame-presented noncommutative geometries";

    py::register_exception<ScalarParseError>(m, "ScalarParseError", PyExc_ValueError);
    py::register_exception<GeometryParseError>(m, "GeometryParseError", PyExc_ValueError);
    py::register_exception<GeometryValidationError>(m, "GeometryValidationError", PyExc_ValueError);
    py::register_exception<DivisionByZero>(m, "DivisionByZero", PyExc_ZeroDivisionError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ZeroDivisionError);

    py::class_<Scalar>(m, "Scalar")
        .def(py::init([](const std::string& s) { return Scalar::parse(s); }), py::arg("text") = "0")
        .def(py::init([](long v) { return Scalar(v); }))
        .def_static("L", [](int k) { return Scalar::lambda_pow(k); }, py::arg("k") = 1)
        .def_static("i", &Scalar::i)
        .def_static("sqrt2", &Scalar::sqrt2)
        .def("__str__", &Scalar::str)
        .def("__repr__", [](const Scalar& s) { return "Scalar('" + s.str() + "')"; })
        .def("__hash__", [](const Scalar& s) { return std::hash<std::string>{}(s.str()); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def("__add__", [](const Scalar& a, long b) { return a + Scalar(b); })
        .def("__radd__", [](const Scalar& a, long b) { return Scalar(b) + a; })
        .def("__mul__", [](const Scalar& a, long b) { return a * Scalar(b); })
        .def("__rmul__", [](const Scalar& a, long b) { return Scalar(b) * a; })
        .def("__pow__", &Scalar::pow)
        .def("inv", &Scalar::inv)
        .def("conj", &Scalar::conj)
        .def("at_one", &Scalar::at_one)
        .def("is_zero", &Scalar::is_zero)
        .def("eval", [](const Scalar& s, const std::string& theta) { return s.eval(parse_theta(theta)); },
             py::arg("theta"), "value at lambda = exp(2 pi i theta), theta given as 'p/q'")
        .def("eval_at", &Scalar::eval_at);

    py::class_<GeometrySpec>(m, "Geometry")
        .def_readonly("name", &GeometrySpec::name)
        .def_readonly("dimension", &GeometrySpec::dimension)
        .def_property_readonly("frame_size", [](const GeometrySpec& g) { return g.frame.n; })
        .def_property_readonly("spinor_rank", [](const GeometrySpec& g) { return g.dirac.s; })
        .def("to_yaml", &serialize_geometry)
        .def(py::self == py::self)
        .def("__repr__", [](const GeometrySpec& g) { return "<Geometry " + g.name + ">"; });

    m.def("builtin_names", &builtin_names);
    m.def("builtin", [](const std::string& n) {
        auto g = builtin(n);
        if (!g) throw py::key_error("unknown builtin geometry '" + n + "'");
        return *g;
    });
    m.def("parse_geometry", &parse_geometry, py::arg("text"));
    m.def("load_geometry", &load_geometry, py::arg("path"));
    m.def("resolve_geometry", &resolve_geometry, py::arg("name_or_path"));
    m.def("validate", [](const GeometrySpec& g, std::uint64_t seed) { return checks_py(validate_geometry(g, seed)); },
          py::arg("geometry"), py::arg("seed") = 1);
    m.def("solve_levi_civita", &solve_py, py::arg("geometry"), py::arg("mode") = "deformed");
    m.def("scalar_curvature", &scalar_curvature_py, py::arg("geometry"), py::arg("mode") = "deformed",
          py::arg("chirality") = "right");
    m.def("weitzenbock_residue", &residue_py, py::arg("geometry"), py::arg("mode") = "deformed");
    m.def("verify_theta_theorems", &theta_py, py::arg("geometry"), py::arg("theta") = py::none(),
          py::arg("seed") = 1, py::arg("samples") = 6);
    m.def("run_cli", &run_cli_py, py::arg("args"), "returns (exit code, stdout, stderr)");
}
