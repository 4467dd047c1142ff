#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "branchmod/class_io.hpp"
#include "branchmod/cli.hpp"
#include "branchmod/error.hpp"
#include "branchmod/harness.hpp"

namespace py = pybind11;
using namespace branchmod;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kahler-differential semimodules and moduli dimensions of plane branches";

  static py::exception<Error> error(m, "BranchmodError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<PairClass>(m, "PairClass")
      .def(py::init([](Int n, std::vector<Int> betas, std::optional<Int> beta0, int dx, int dy) {
             const Int b0 = beta0.value_or(betas.empty() ? 1 : betas.front());
             return validate_pair(n, std::move(betas), b0, dx, dy);
           }),
           py::arg("n"), py::arg("betas"), py::arg("beta0") = py::none(), py::arg("dx") = 0, py::arg("dy") = 0)
      .def_property_readonly("n", &PairClass::n)
      .def_property_readonly("g", &PairClass::g)
      .def_property_readonly("betas", &PairClass::betas)
      .def_property_readonly("beta0", &PairClass::beta0)
      .def_property_readonly("dx", &PairClass::delta_x)
      .def_property_readonly("dy", &PairClass::delta_y)
      .def("literal", &PairClass::to_string)
      .def("__eq__", [](const PairClass& a, const PairClass& b) { return a == b; })
      .def("__repr__", [](const PairClass& p) { return "PairClass(" + p.to_string() + ")"; });

  m.def("parse_class", [](const std::string& text) { return parse_class(text); }, py::arg("text"));

  m.def("invariants_json", [](const PairClass& p) { return invariants_json(p).dump(); });
  m.def("apery_json", [](const PairClass& p) { return table_json(apery_orders(p)).dump(); });
  m.def("semimodule_json", [](const PairClass& p, Int upto) { return semimodule_json(semimodule_any(p), upto).dump(); },
        py::arg("pair"), py::arg("upto"));
  m.def("trajectory_json", [](const PairClass& p) { return trajectory_json(trajectory(SuitableState(p))).dump(); });
  m.def("dimension_json", [](const PairClass& p) { return dimension_json(dimension_report(p)).dump(); });
  m.def("blow_up", [](const PairClass& p) { return blow_up(SuitableState(p)).pair(); });
  m.def(
      "verify_json",
      [](const PairClass& p, std::vector<std::uint64_t> seeds, std::optional<Int> precision) {
        py::gil_scoped_release release;
        return verify_json(verify_class(p, seeds, precision)).dump();
      },
      py::arg("pair"), py::arg("seeds"), py::arg("precision") = py::none());
  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
