#include "commands.hpp"

#include "hadamard/circumcenter.hpp"
#include "hadamard/error.hpp"
#include "hadamard/filtering.hpp"
#include "hadamard/io.hpp"
#include "hadamard/jung.hpp"
#include "hadamard/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hadamard;

namespace {

// Points cross the boundary as JSON-compatible values: lists of floats,
// {"edge", "offset"} dicts or {"parts": [...]}.
Json to_json(const py::handle& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object from_json(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<Point> points_of(const Space& space, const py::handle& pts) {
  std::vector<Point> out;
  for (const auto& p : pts) out.push_back(point_from_json(space, to_json(p)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_hadamard, m) {
  m.doc() = "Geometry of Hadamard spaces: Jung constants, gradient flows, filtering families";

  // Translators run newest first: register the base class before its children.
  const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", py::make_tuple(base, py::handle(PyExc_ValueError)));
  py::register_exception<CapabilityError>(m, "CapabilityError",
                                          py::make_tuple(base, py::handle(PyExc_NotImplementedError)));

  m.def("version", &version);

  py::class_<Space, std::shared_ptr<Space>>(m, "Space")
      .def_property_readonly("dimension", &Space::dimension)
      .def_property_readonly("is_cat0", &Space::is_cat0)
      .def("describe", &Space::describe)
      .def("origin", [](const Space& s) { return from_json(point_to_json(s.origin())); })
      .def("distance",
           [](const Space& s, const py::object& x, const py::object& y) {
             return s.distance(point_from_json(s, to_json(x)), point_from_json(s, to_json(y)));
           })
      .def("geodesic_point",
           [](const Space& s, const py::object& x, const py::object& y, double t) {
             return from_json(point_to_json(s.geodesic_point(point_from_json(s, to_json(x)),
                                                             point_from_json(s, to_json(y)), t)));
           })
      .def("__repr__", [](const Space& s) { return "<Space " + s.describe() + ">"; });

  m.def("space", [](const py::object& spec) {
    return std::const_pointer_cast<Space>(space_from_json(to_json(spec)));
  }, "Space from a spec string such as 'euclidean:3' or a JSON-style dict.");

  m.def("circumcenter", [](const Space& s, const py::object& pts) {
    const auto r = circumcenter(s, points_of(s, pts));
    py::dict out;
    out["center"] = from_json(point_to_json(r.center));
    out["radius"] = r.radius;
    out["support"] = r.support;
    out["residual"] = r.residual;
    return out;
  });
  m.def("diameter", [](const Space& s, const py::object& pts) { return diameter(s, points_of(s, pts)); });
  m.def("jung_check", [](const Space& s, const py::object& pts, int n) {
    const auto r = jung_check(s, points_of(s, pts), n);
    py::dict out;
    out["diameter"] = r.diameter;
    out["radius"] = r.radius;
    out["ratio"] = r.ratio;
    out["bound"] = r.bound;
    out["slack"] = r.slack;
    out["holds"] = r.holds;
    return out;
  });
  m.def("jung_bound", &jung_bound);
  m.def("k_n", &k_n);
  m.def("s_n", &s_n);
  m.def("r_n", &r_n);
  m.def("gradient_floor", &gradient_floor);
  m.def("regular_simplex", &regular_simplex);

  m.def("commands", &cli::command_names);
  m.def("run", [](const std::string& command, const py::object& config) {
    const auto outcome = cli::run_command(command, to_json(config));
    py::list checks;
    for (const auto& c : outcome.checks) {
      py::dict d;
      d["id"] = c.id;
      d["passed"] = c.passed;
      d["value"] = c.value;
      d["threshold"] = c.threshold;
      checks.append(d);
    }
    py::dict out;
    out["checks"] = checks;
    out["results"] = from_json(outcome.results);
    out["header"] = outcome.header;
    out["table"] = outcome.table;
    return out;
  }, py::arg("command"), py::arg("config") = py::dict(),
     "Runs a CLI experiment; config holds space, seed and inputs.");
}
