#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ramcount/cli.hpp"
#include "ramcount/ore.hpp"
#include "ramcount/oracle.hpp"

namespace py = pybind11;
using namespace ramcount;

namespace {

// Exact counts cross the boundary as Python ints.
py::int_ to_py(const BigCount& v) { return py::int_(py::str(v.str())); }

BaseField field(int p, int e, int f) { return BaseField(p, e, f); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Counts of totally ramified extensions of p-adic fields";

    auto base_error = py::register_exception<Error>(m, "RamcountError");
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base_error.ptr());
    py::register_exception<OreViolation>(m, "OreViolation", base_error.ptr());
    py::register_exception<InfeasiblePolygon>(m, "InfeasiblePolygon", base_error.ptr());
    py::register_exception<InvalidTuple>(m, "InvalidTuple", base_error.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base_error.ptr());

    m.def("valid_discriminants",
          [](int p, int n, int e, int f) { return valid_discriminants(field(p, e, f), n); },
          py::arg("p"), py::arg("n"), py::arg("e") = 1, py::arg("f") = 1);

    m.def("count_by_discriminant",
          [](int p, int n, std::int64_t j0, int e, int f) { return to_py(count_by_discriminant(field(p, e, f), n, j0)); },
          py::arg("p"), py::arg("n"), py::arg("j0"), py::arg("e") = 1, py::arg("f") = 1);

    m.def(
        "polygons",
        [](int p, int n, std::int64_t j0, int e, int f) {
            std::vector<std::string> out;
            for (const auto& R : enumerate_polygons(field(p, e, f), n, j0)) out.push_back(R.to_string());
            return out;
        },
        py::arg("p"), py::arg("n"), py::arg("j0"), py::arg("e") = 1, py::arg("f") = 1);

    m.def(
        "count_by_polygon",
        [](int p, int n, const std::string& polygon, int e, int f) {
            const auto K = field(p, e, f);
            return to_py(count_by_polygon(K, parse_polygon(K, n, polygon)));
        },
        py::arg("p"), py::arg("n"), py::arg("polygon"), py::arg("e") = 1, py::arg("f") = 1);

    m.def(
        "invariants",
        [](int p, int n, const std::string& polygon, int e, int f) {
            const auto K = field(p, e, f);
            const auto R = parse_polygon(K, n, polygon);
            py::list out;
            for (const auto& o : enumerate_invariants(K, R)) {
                py::dict d;
                d["representative"] = o.representative.to_string();
                std::vector<std::string> members;
                for (const auto& t : o.members) members.push_back(t.to_string());
                d["members"] = members;
                d["mass"] = to_string(o.mass);
                d["count"] = to_py(count_by_invariant(K, R, o));
                out.append(d);
            }
            return out;
        },
        py::arg("p"), py::arg("n"), py::arg("polygon"), py::arg("e") = 1, py::arg("f") = 1);

    m.def(
        "ram_polygon_of",
        [](int p, const std::vector<std::int64_t>& coeffs, int c) {
            const BaseField K(p);
            return ram_polygon_of(K, eisenstein_from_integers(K, coeffs, c)).to_string();
        },
        "Polygon of x^n + ... + coeffs[0] over Q_p", py::arg("p"), py::arg("coeffs"), py::arg("c") = 8);

    m.def(
        "residual_tuple_of",
        [](int p, const std::vector<std::int64_t>& coeffs, int c) {
            const BaseField K(p);
            return residual_tuple_of(K, eisenstein_from_integers(K, coeffs, c)).to_string();
        },
        py::arg("p"), py::arg("coeffs"), py::arg("c") = 8);

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        "Run the command line tool in-process; returns (exit_code, stdout, stderr)", py::arg("args"));
}
