#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "masspack/circle.hpp"
#include "masspack/demo.hpp"
#include "masspack/dual_cover.hpp"
#include "masspack/error.hpp"
#include "masspack/io.hpp"
#include "masspack/packer.hpp"
#include "masspack/verifier.hpp"

namespace py = pybind11;
using namespace masspack;

namespace {

py::object to_python(const io::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::pair<int, std::vector<std::uint32_t>> cube_tuple(const DyadicCube& c) {
  return {c.level, c.index};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mass packing under a gauge constraint on dyadic grids";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);

  py::class_<Gauge>(m, "Gauge")
      .def_static("power", &Gauge::power, py::arg("alpha"), py::arg("domain_max") = 1.0,
                  py::arg("scale") = 1.0)
      .def_static("log_type", &Gauge::log_type, py::arg("domain_max") = 1.0)
      .def_static("tabulated", &Gauge::tabulated, py::arg("samples"))
      .def_static("from_spec", &io::parse_gauge_spec, py::arg("spec"),
                  py::arg("domain_max") = 1.0)
      .def("__call__", &Gauge::operator(), py::arg("x"))
      .def_property_readonly("domain_max", &Gauge::domain_max)
      .def("describe", &Gauge::describe)
      .def("regularity", [](const Gauge& g, int depth) { return to_python(io::to_json(check_regularity(g, depth))); },
           py::arg("depth") = 20)
      .def("__repr__", [](const Gauge& g) { return "Gauge(" + g.describe() + ")"; });

  py::class_<CellField>(m, "CellField")
      .def(py::init<int, int, std::vector<double>>(), py::arg("n"), py::arg("m"),
           py::arg("values"))
      .def(py::init<int, int, double>(), py::arg("n"), py::arg("m"), py::arg("fill"))
      .def_readonly("n", &CellField::n)
      .def_readonly("m", &CellField::m)
      .def_readonly("values", &CellField::values)
      .def("__len__", &CellField::size);

  m.def(
      "pack",
      [](const CellField& roof, const Gauge& h) {
        return to_python(io::to_json(pack(RoofGrid(roof), h)));
      },
      py::arg("roof"), py::arg("gauge"),
      "Greedy packing; returns a dict with f, f_raw, bottlenecks, primal_value, raw_value, trace.");

  m.def(
      "dyadic_min_cut",
      [](const CellField& roof, const Gauge& h) {
        const auto cut = dyadic_min_cut(RoofGrid(roof), h);
        std::vector<std::pair<int, std::vector<std::uint32_t>>> cubes;
        for (const auto& c : cut.cubes) cubes.push_back(cube_tuple(c));
        return py::make_tuple(cut.value, cubes);
      },
      py::arg("roof"), py::arg("gauge"));

  m.def(
      "semicover_value",
      [](const CellField& roof, const std::vector<std::pair<int, std::vector<std::uint32_t>>>& cover,
         const Gauge& h) {
        std::vector<DyadicCube> cubes;
        for (const auto& [level, index] : cover) cubes.push_back(DyadicCube{level, index});
        return semicover_value(RoofGrid(roof), cubes, h);
      },
      py::arg("roof"), py::arg("cover"), py::arg("gauge"));

  m.def(
      "check_membership",
      [](const CellField& f, const CellField& roof, const Gauge& h, const std::string& scope,
         double tolerance, std::size_t samples, std::uint64_t seed) {
        if (scope != "dyadic" && scope != "all") throw ValidationError("scope must be dyadic or all");
        MembershipOptions opts;
        opts.tolerance = tolerance;
        opts.samples = samples;
        opts.seed = seed;
        return to_python(io::to_json(check_membership(
            MassFunction(f), RoofGrid(roof), h,
            scope == "dyadic" ? Scope::kDyadic : Scope::kAllGridCubes, opts)));
      },
      py::arg("f"), py::arg("roof"), py::arg("gauge"), py::arg("scope") = "all",
      py::arg("tolerance") = 1e-9, py::arg("samples") = 200000,
      py::arg("seed") = kDefaultSeed);

  m.def(
      "duality_ratio",
      [](double primal_value, double dual_value) {
        PackResult r;
        r.primal_value = primal_value;
        return duality_ratio(r, dual_value);
      },
      py::arg("primal_value"), py::arg("dual_value"));

  m.def(
      "verify_splitting",
      [](const std::vector<double>& weight, const Gauge& h, const std::vector<int>& Ns, double t,
         double eps) {
        return to_python(io::to_json(verify_splitting(CircleWeight(weight, t), h, Ns, eps)));
      },
      py::arg("weight"), py::arg("gauge"), py::arg("Ns"), py::arg("t") = 1.0,
      py::arg("eps") = 1.0);

  m.def(
      "demo_weight",
      [](const std::string& kind, std::size_t grid_size, std::uint64_t seed) {
        if (kind == "divergent") return demo_weight(DemoWeight::kDivergentLog, grid_size, seed);
        if (kind == "control") return demo_weight(DemoWeight::kControl, grid_size, seed);
        throw ValidationError("demo weight kind must be divergent or control");
      },
      py::arg("kind"), py::arg("grid_size") = std::size_t{1} << 14,
      py::arg("seed") = kDefaultSeed);

  m.def(
      "run_demo",
      [](const std::string& name, std::size_t grid_size, std::vector<int> Ns, double t,
         double eps, std::uint64_t seed) {
        DemoOptions opts;
        opts.grid_size = grid_size;
        opts.Ns = std::move(Ns);
        opts.t = t;
        opts.eps = eps;
        opts.seed = seed;
        const auto rep = run_demo(name, opts);
        py::dict d;
        d["name"] = rep.name;
        d["gauge"] = rep.gauge;
        d["divergent_monotone"] = rep.divergent_monotone;
        d["divergent_drop"] = rep.divergent_drop;
        d["disk_deviation_decreasing"] = rep.disk_deviation_decreasing;
        d["control_drop"] = rep.control_drop;
        d["divergent"] = to_python(io::to_json(rep.divergent));
        d["control"] = to_python(io::to_json(rep.control));
        return d;
      },
      py::arg("name"), py::arg("grid_size") = std::size_t{1} << 14,
      py::arg("Ns") = std::vector<int>{4, 8, 16, 32, 64}, py::arg("t") = 3.0,
      py::arg("eps") = 1.0, py::arg("seed") = kDefaultSeed);
}
