#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kissbound/certifier.hpp"
#include "kissbound/density.hpp"
#include "kissbound/errors.hpp"
#include "kissbound/highdim_bounds.hpp"
#include "kissbound/packing.hpp"
#include "kissbound/run_metadata.hpp"
#include "kissbound/spherical_caps.hpp"

namespace py = pybind11;
using namespace kissbound;

namespace {

using Centers = std::vector<std::array<double, 3>>;

Packing make_packing(const Centers& centers, const std::vector<double>& radii, double tolerance) {
  if (centers.size() != radii.size()) throw DomainError("centers and radii differ in length");
  Packing p;
  p.tolerance = tolerance;
  for (std::size_t i = 0; i < centers.size(); ++i) p.balls.push_back({centers[i], radii[i]});
  validate_packing(p);
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bounds on average kissing numbers of ball packings.";
  m.attr("__version__") = std::string(version());

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const OverlapError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    }
  });

  py::class_<RhoGeometry>(m, "RhoGeometry")
      .def(py::init(&RhoGeometry::from_rho), py::arg("rho"))
      .def_readonly("rho", &RhoGeometry::rho)
      .def_readonly("alpha_min", &RhoGeometry::alpha_min)
      .def_readonly("alpha_zero", &RhoGeometry::alpha_zero)
      .def_readonly("alpha_max", &RhoGeometry::alpha_max)
      .def("__repr__", [](const RhoGeometry& g) { return "RhoGeometry(rho=" + std::to_string(g.rho) + ")"; });

  m.def("coverage_fraction", &coverage_fraction, py::arg("rho"), py::arg("r1"), py::arg("r2"));
  m.def("pair_sum", &pair_sum, py::arg("rho"), py::arg("r1"), py::arg("r2"));
  m.def("aux_cap_radius", &aux_cap_radius, py::arg("rho"), py::arg("r1"), py::arg("r2"));
  m.def("actual_cap_area", &actual_cap_area, py::arg("geometry"), py::arg("alpha"));

  m.def("area_bound", &area_bound, py::arg("d"));
  m.def("min_pair_coverage", &min_pair_coverage, py::arg("d"), py::arg("rho"));
  m.def("g_profile", &g_profile, py::arg("d"), py::arg("C"), py::arg("x"));

  m.def(
      "density",
      [](const RhoGeometry& g, double x, double y, double z) { return density(g, x, y, z).density; },
      py::arg("geometry"), py::arg("x"), py::arg("y"), py::arg("z"));
  m.def("degree_factor", &degree_factor, py::arg("rho"));

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("rho", &SweepResult::rho)
      .def_readonly("max_density", &SweepResult::max_density)
      .def_readonly("argmax", &SweepResult::argmax)
      .def_readonly("objective", &SweepResult::objective)
      .def_readonly("starts", &SweepResult::starts)
      .def_readonly("failed_starts", &SweepResult::failed_starts)
      .def_readonly("pruned", &SweepResult::pruned);

  m.def(
      "max_density",
      [](double rho, double search_step) {
        SearchConfig cfg;
        cfg.start_step = search_step;
        py::gil_scoped_release release;
        return max_density(RhoGeometry::from_rho(rho), cfg);
      },
      py::arg("rho"), py::arg("search_step") = defaults::kSearchStep);
  m.def(
      "sweep_rho",
      [](double lo, double hi, double step, std::optional<double> prune) {
        py::gil_scoped_release release;
        return sweep_rho(lo, hi, step, SearchConfig{}, prune);
      },
      py::arg("lo"), py::arg("hi"), py::arg("step"), py::arg("prune") = py::none());

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("rho", &Certificate::rho)
      .def_readonly("delta", &Certificate::delta)
      .def_readonly("target", &Certificate::target)
      .def_readonly("boxes_checked", &Certificate::boxes_checked)
      .def_readonly("max_box_bound", &Certificate::max_box_bound)
      .def_readonly("certified_bound", &Certificate::certified_bound)
      .def_readonly("fp_slack", &Certificate::fp_slack)
      .def_readonly("passed", &Certificate::passed)
      .def_readonly("worst_box", &Certificate::worst_box)
      .def("to_text", &emit_certificate)
      .def("summary", &summary_line)
      .def("__eq__", [](const Certificate& a, const Certificate& b) { return a == b; });

  m.def(
      "certify",
      [](double rho, double delta, double target, double fp_slack, unsigned workers) {
        CertifyOptions opts;
        opts.workers = workers;
        py::gil_scoped_release release;
        return *certify(rho, delta, target, fp_slack, opts);
      },
      py::arg("rho") = defaults::kRho, py::arg("delta") = defaults::kDelta,
      py::arg("target") = defaults::kTarget, py::arg("fp_slack") = defaults::kFpSlack,
      py::arg("workers") = 0u);
  m.def("parse_certificate", &parse_certificate, py::arg("text"));

  m.def(
      "fcc_fragment",
      [](int shells) {
        const Packing p = fcc_fragment(shells);
        Centers centers;
        std::vector<double> radii;
        for (const Ball& b : p.balls) {
          centers.push_back(b.center);
          radii.push_back(b.radius);
        }
        return py::make_tuple(centers, radii);
      },
      py::arg("shells"), "Centres and radii of an FCC fragment; index 0 is the central ball.");
  m.def(
      "contact_graph",
      [](const Centers& centers, const std::vector<double>& radii, double tolerance) {
        return contact_graph(make_packing(centers, radii, tolerance)).edges;
      },
      py::arg("centers"), py::arg("radii"), py::arg("tolerance") = defaults::kTangencyTolerance,
      "Sorted tangency edges (i, j), i < j.");
}
