// Python bindings: rationals and points cross the boundary as strings, structured results as JSON text.

#include "cli.hpp"
#include "kohmoto/analysis.hpp"
#include "kohmoto/errors.hpp"
#include "kohmoto/spectra.hpp"
#include "kohmoto/words.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace kohmoto;

namespace {

Rational Q(const std::string& s) { return Rational::parse(s); }
FareyPoint P(const std::string& s) { return FareyPoint::parse(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact Kohmoto-model tooling";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<UnsupportedRegime>(m, "UnsupportedRegime", PyExc_NotImplementedError);
    py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_ValueError);

    m.def("farey_distance", [](const std::string& x, const std::string& y) { return farey_distance(P(x), P(y)).str(); });
    m.def("mediant", [](const std::string& a, const std::string& b) { return mediant(Q(a), Q(b)).str(); });
    m.def("period_word", [](const std::string& r) { return period_word(Q(r)); });
    m.def("window", [](const std::string& x, long lo, long hi) { return config_of(P(x)).window(lo, hi); },
          py::arg("x"), py::arg("lo") = -10, py::arg("hi") = 10);
    m.def("complexity", [](const std::string& x, long n) { return complexity(config_of(P(x)), n); });

    m.def("spectrum_periodic",
          [](const std::string& r, const std::string& V, const std::string& tol) {
              return spectrum_periodic(Q(r), Q(V), Q(tol)).to_json().dump();
          },
          py::arg("r"), py::arg("V") = "5", py::arg("tol") = "1/1000000000");
    m.def("defect_spectrum",
          [](const std::string& r, const std::string& side, const std::string& V, const std::string& tol) {
              return defect_spectrum(Q(r), parse_side(side), Q(V), Q(tol)).to_json().dump();
          },
          py::arg("r"), py::arg("side"), py::arg("V") = "5", py::arg("tol") = "1/1000000000");
    m.def("optimality_certificate",
          [](const std::string& r, const std::string& side, const std::string& V, long kmax, const std::string& tol) {
              py::gil_scoped_release nogil;
              return optimality_certificate(Q(r), parse_side(side), Q(V), kmax, Q(tol)).to_json().dump();
          },
          py::arg("r"), py::arg("side"), py::arg("V") = "5", py::arg("kmax") = 40, py::arg("tol") = "1/10000000000");
    m.def("butterfly_csv",
          [](long Q_, const std::string& V, bool fast, bool defects, long threads) {
              py::gil_scoped_release nogil;
              return butterfly(Q_, Q(V), fast ? Backend::Fast : Backend::Certified, defects, Rational(1, 1000000), threads)
                  .csv();
          },
          py::arg("Q"), py::arg("V") = "5", py::arg("fast") = true, py::arg("defects") = true, py::arg("threads") = 1);

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code = cli::run(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          "run the command-line interface in process; returns (exit code, stdout, stderr)");
}
