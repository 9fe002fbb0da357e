#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracext/bessel.hpp"
#include "fracext/extension.hpp"
#include "fracext/fracpow.hpp"
#include "fracext/io.hpp"
#include "fracext/traces.hpp"

namespace py = pybind11;
using namespace fracext;

namespace {

py::dict estimate_dict(const TraceEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["method"] = to_string(e.method);
  d["converged"] = e.converged;
  d["y_sequence"] = e.y_sequence;
  d["oracle_err"] = e.oracle_err ? py::cast(*e.oracle_err) : py::none();
  return d;
}

QuadratureSpec quad(const std::string& scheme, int nodes, double tol) {
  QuadratureSpec q;
  q.scheme = scheme_from_string(scheme);
  q.nodes = nodes;
  q.tol = tol;
  q.validate();
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fractional powers of matrix generators";

  static py::exception<NonConvergence> non_convergence(m, "NonConvergence", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NonConvergence& e) {
      non_convergence(e.what());
    }
  });

  py::class_<Generator>(m, "Generator")
      .def(py::init<Matrix>(), py::arg("matrix"))
      .def_static("builtin", &builtin_matrix, py::arg("name"))
      .def_static("random", &random_generator, py::arg("n"), py::arg("seed"),
                  py::arg("lo") = -10.0, py::arg("hi") = -0.5)
      .def_property_readonly("dim", &Generator::dim)
      .def_property_readonly("matrix", &Generator::matrix)
      .def_property_readonly("eigenvalues", &Generator::eigenvalues)
      .def_property_readonly("bound", &Generator::bound)
      .def("__repr__", [](const Generator& g) {
        return "<Generator dim=" + std::to_string(g.dim()) + ">";
      });


  m.def("semigroup_apply", &semigroup_apply, py::arg("g"), py::arg("t"), py::arg("u"));
  m.def("spectral_frac_power", &spectral_frac_power, py::arg("g"), py::arg("s"), py::arg("u"));
  m.def(
      "balakrishnan",
      [](const Generator& g, double s, const Vector& u, const std::string& scheme, int nodes,
         double tol) { return balakrishnan_general(g, FracOrder(s), u, quad(scheme, nodes, tol)); },
      py::arg("g"), py::arg("s"), py::arg("u"), py::arg("scheme") = "tanh_sinh_adaptive",
      py::arg("nodes") = 128, py::arg("tol") = 1e-13);
  m.def(
      "bbw_frac_power",
      [](const Generator& g, double s, const Vector& u, int k) {
        const FracOrder fs(s);
        return bbw_frac_power(g, fs, k > 0 ? k : fs.n() + 1, u);
      },
      py::arg("g"), py::arg("s"), py::arg("u"), py::arg("k") = 0);
  m.def(
      "c_constant", [](double s, int k) { return c_constant(FracOrder(s), k); }, py::arg("s"),
      py::arg("k"));
  m.def(
      "extend",
      [](const Generator& g, double s, const Vector& u, double y, bool explicit_form,
         const std::string& scheme, int nodes, double tol) {
        const QuadratureSpec q = quad(scheme, nodes, tol);
        return explicit_form ? extend_explicit(g, FracOrder(s), u, y, q)
                             : extend_subordination(g, FracOrder(s), u, y, q);
      },
      py::arg("g"), py::arg("s"), py::arg("u"), py::arg("y"), py::arg("explicit_form") = false,
      py::arg("scheme") = "tanh_sinh_adaptive", py::arg("nodes") = 128, py::arg("tol") = 1e-13);
  m.def(
      "y_derivative",
      [](const Generator& g, double s, const Vector& u, int order, double y) {
        return y_derivative(g, FracOrder(s), u, order, y);
      },
      py::arg("g"), py::arg("s"), py::arg("u"), py::arg("order"), py::arg("y"));
  m.def(
      "pde_residual",
      [](const Generator& g, double s, const Vector& u, double y, bool higher) {
        return pde_residual(g, FracOrder(s), u, y, {},
                            higher ? ResidualOrder::higher : ResidualOrder::second);
      },
      py::arg("g"), py::arg("s"), py::arg("u"), py::arg("y"), py::arg("higher") = false);
  m.def(
      "normalization_check", [](double s, double y) { return normalization_check(FracOrder(s), y); },
      py::arg("s"), py::arg("y"));
  m.def(
      "trace_neumann",
      [](const Generator& g, double s, const Vector& u) {
        return estimate_dict(trace_neumann(g, FracOrder(s), u));
      },
      py::arg("g"), py::arg("s"), py::arg("u"));
  m.def(
      "trace_incremental",
      [](const Generator& g, double s, const Vector& u) {
        return estimate_dict(trace_incremental(g, FracOrder(s), u));
      },
      py::arg("g"), py::arg("s"), py::arg("u"));
  m.def(
      "trace_constants",
      [](double s) {
        const Constants c = trace_constants(FracOrder(s));
        return py::make_tuple(c.c_s, c.d_s ? py::cast(*c.d_s) : py::none());
      },
      py::arg("s"), "Returns (c_s, d_s); d_s is None outside 1 < s < 2.");
  m.def("ode_cross_solve",
        [](const Generator& g, double a, const Vector& u0, const Vector& v0, double y) {
          return ode_cross_solve(g, a, u0, v0, y);
        },
        py::arg("g"), py::arg("a"), py::arg("u0"), py::arg("v0"), py::arg("y"));
  m.def(
      "ivp_classify", [](double a, double b) { return to_string(ivp_classify(a, b)); },
      py::arg("a"), py::arg("b"));
}
