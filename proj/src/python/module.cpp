#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridres/cayley_bacharach.hpp"
#include "gridres/job.hpp"
#include "gridres/lines.hpp"
#include "gridres/parse.hpp"
#include "gridres/toric.hpp"

namespace py = pybind11;
using namespace gridres;

namespace {

// Accepts a FieldElement, an int or a string ("3", "-1/2").
FieldElement to_elem(const Field& f, py::handle h) {
  if (py::isinstance<FieldElement>(h)) {
    auto e = h.cast<FieldElement>();
    if (!(e.field() == f)) throw Error(ErrorCode::field_mismatch, "element from another field");
    return e;
  }
  if (py::isinstance<py::int_>(h)) return f.parse(py::str(h).cast<std::string>());
  if (py::isinstance<py::str>(h)) return f.parse(h.cast<std::string>());
  throw Error(ErrorCode::invalid_input, "expected a field element, int or str");
}

Point to_point(const Field& f, const py::sequence& s) {
  Point p;
  for (auto h : s) p.push_back(to_elem(f, h));
  return p;
}

py::list from_point(const Point& p) {
  py::list out;
  for (const auto& e : p) out.append(e);
  return out;
}

GridSystem make_grid(const Field& f, const py::sequence& sets) {
  std::vector<std::vector<FieldElement>> nodes;
  for (auto s : sets) nodes.push_back(to_point(f, s.cast<py::sequence>()));
  return GridSystem(f, std::move(nodes));
}

}  // namespace

PYBIND11_MODULE(_gridres, m) {
  m.doc() = "Exact grid-polynomial computations";

  static py::exception<Error> base(m, "GridresError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object cls = py::module_::import("gridres._gridres").attr("ParseError");
      py::object err = cls(e.what());
      err.attr("offset") = e.offset();
      PyErr_SetObject(cls.ptr(), err.ptr());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  py::class_<Field>(m, "Field")
      .def_static("prime", &Field::prime, py::arg("p"))
      .def_static("rationals", &Field::rationals)
      .def_property_readonly("is_prime", &Field::is_prime)
      .def_property_readonly("modulus", &Field::modulus)
      .def("__call__", [](const Field& f, py::handle v) { return to_elem(f, v); })
      .def("zero", &Field::zero)
      .def("one", &Field::one)
      .def(py::self == py::self)
      .def("__str__", &Field::to_string)
      .def("__repr__", [](const Field& f) { return "Field(" + f.to_string() + ")"; });

  py::class_<FieldElement>(m, "FieldElement")
      .def_property_readonly("field", &FieldElement::field)
      .def("is_zero", &FieldElement::is_zero)
      .def("inverse", &FieldElement::inverse)
      .def("__pow__", &FieldElement::pow)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__eq__", [](const FieldElement& a, py::handle b) {
        try {
          return a == to_elem(a.field(), b);
        } catch (const Error&) {
          return false;
        }
      })
      .def("__hash__", [](const FieldElement& a) { return py::hash(py::str(a.to_string())); })
      .def("__str__", &FieldElement::to_string)
      .def("__repr__", [](const FieldElement& a) { return "FieldElement(" + a.to_string() + ")"; });

  py::class_<Polynomial>(m, "Polynomial")
      .def_property_readonly("field", &Polynomial::field)
      .def_property_readonly("num_vars", &Polynomial::num_vars)
      .def("total_degree", &Polynomial::total_degree)
      .def("is_laurent", &Polynomial::is_laurent)
      .def("coefficient", [](const Polynomial& f, std::vector<Exponent> m) { return f.coefficient(m); })
      .def("evaluate", [](const Polynomial& f, const py::sequence& p) { return f.evaluate(to_point(f.field(), p)); })
      .def("terms", [](const Polynomial& f) {
        py::dict d;
        for (const auto& [m, c] : f.terms()) d[py::tuple(py::cast(std::vector<int>(m.begin(), m.end())))] = c;
        return d;
      })
      .def("to_string", [](const Polynomial& f, std::vector<std::string> names) { return f.to_string(names); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", [](const Polynomial& f) { return f.to_string(); })
      .def("__repr__", [](const Polynomial& f) { return "Polynomial(" + f.to_string() + ")"; });

  m.def(
      "parse_poly",
      [](const std::string& text, std::size_t n, const Field& f, std::vector<std::string> names) {
        return parse_poly(text, n, f, names);
      },
      py::arg("text"), py::arg("n"), py::arg("field"), py::arg("names") = std::vector<std::string>{});

  py::class_<GridSystem>(m, "GridSystem")
      .def(py::init([](const Field& f, const py::sequence& sets) { return make_grid(f, sets); }),
           py::arg("field"), py::arg("nodes"))
      .def_property_readonly("field", &GridSystem::field)
      .def_property_readonly("dimension", &GridSystem::dimension)
      .def("sizes", &GridSystem::sizes)
      .def("target_exponent",
           [](const GridSystem& g) {
             auto t = g.target_exponent();
             return std::vector<int>(t.begin(), t.end());
           })
      .def("points", [](const GridSystem& g) {
        py::list out;
        for_each_index(g.sizes(), [&](std::span<const std::size_t> idx) { out.append(from_point(g.point(idx))); });
        return out;
      });

  // nullstellensatz
  m.def("grid_weights", [](const Field& f, const py::sequence& nodes) { return grid_weights(f, to_point(f, nodes)); });
  m.def("check_relaxed_support",
        [](const Polynomial& f, std::vector<Exponent> t) { return check_relaxed_support(f, t); });
  m.def("check_classical_degree",
        [](const Polynomial& f, std::vector<Exponent> t) { return check_classical_degree(f, t); });
  m.def("coefficient_via_grid", &coefficient_via_grid, py::arg("f"), py::arg("grid"));
  m.def(
      "find_nonvanishing_witness",
      [](const Polynomial& f, const GridSystem& g) {
        WitnessSearch w = find_nonvanishing_witness(f, g);
        py::dict d;
        d["coefficient"] = w.coefficient;
        d["point"] = w.witness ? py::object(from_point(w.witness->point)) : py::none();
        d["value"] = w.witness ? py::cast(w.witness->value) : py::none();
        return d;
      },
      py::arg("f"), py::arg("grid"));

  // cayley-bacharach
  m.def(
      "cb_coefficients",
      [](const GridSystem& g) {
        CbRelation rel = cb_coefficients(SeparableSystem(g));
        py::list out;
        for (std::size_t i = 0; i < rel.points.size(); ++i) out.append(py::make_tuple(from_point(rel.points[i]), rel.coefficients[i]));
        return out;
      },
      py::arg("grid"));
  m.def(
      "verify_cb",
      [](const Polynomial& f, const GridSystem& g) {
        CbResidual r = verify_cb(f, cb_coefficients(SeparableSystem(g)));
        py::dict d;
        d["residual"] = r.residual;
        d["degree"] = r.degree;
        d["bound"] = r.bound;
        d["consistent"] = r.consistent();
        return d;
      },
      py::arg("f"), py::arg("grid"));
  m.def(
      "forced_value",
      [](const GridSystem& g, const py::dict& values, const py::sequence& target) {
        std::map<Point, FieldElement, PointLess> vals;
        for (auto [k, v] : values) vals.emplace(to_point(g.field(), k.cast<py::sequence>()), to_elem(g.field(), v));
        return forced_value(vals, cb_coefficients(SeparableSystem(g)), to_point(g.field(), target));
      },
      py::arg("grid"), py::arg("values"), py::arg("target"));
  m.def(
      "min_cover_size",
      [](const GridSystem& g, const py::sequence& excluded, std::uint64_t budget) {
        CoverBound c = min_cover_size(g, to_point(g.field(), excluded), budget);
        py::dict d;
        d["min_lines"] = c.min_lines;
        d["bound"] = c.bound;
        d["holds"] = c.holds();
        std::vector<std::string> ls;
        for (const auto& l : c.cover.lines) ls.push_back(l.to_string());
        d["lines"] = ls;
        return d;
      },
      py::arg("grid"), py::arg("excluded"), py::arg("budget") = 1'000'000);
  m.def(
      "verify_hypersurface_theorem",
      [](std::vector<Polynomial> g, const Polynomial& f) {
        HypersurfaceVerdict v = verify_hypersurface_theorem(HypersurfaceSystem(std::move(g)), f);
        py::dict d;
        d["status"] = to_string(v.status);
        py::list sols;
        for (const auto& s : v.solutions) sols.append(from_point(s));
        d["solutions"] = sols;
        d["values"] = v.values;
        d["expected"] = v.expected;
        d["witness"] = v.witness ? py::object(from_point(*v.witness)) : py::none();
        return d;
      },
      py::arg("g"), py::arg("f"));

  // toric
  m.def("newton_polytope", [](const Polynomial& f) { return newton_polytope(f).vertices(); });
  m.def(
      "is_unfolded",
      [](std::vector<Polynomial> g) -> py::tuple {
        UnfoldedResult r = is_unfolded(NewtonSystem(std::move(g)));
        return py::make_tuple(r.unfolded, r.witness ? py::cast(*r.witness) : py::none());
      },
      py::arg("g"));
  m.def(
      "residue_sum_over_zeros",
      [](std::vector<Polynomial> g, const Polynomial& f, const py::sequence& zeros) {
        std::vector<Point> zs;
        for (auto z : zeros) zs.push_back(to_point(f.field(), z.cast<py::sequence>()));
        return residue_sum_over_zeros(NewtonSystem(std::move(g)), f, zs);
      },
      py::arg("g"), py::arg("f"), py::arg("zeros"));
  m.def(
      "solve_vertex_coefficients",
      [](std::vector<Polynomial> g, const py::sequence& zeros, std::vector<Polynomial> samples) {
        if (g.empty()) throw Error(ErrorCode::invalid_input, "empty system");
        std::vector<Point> zs;
        for (auto z : zeros) zs.push_back(to_point(g.front().field(), z.cast<py::sequence>()));
        VertexCoefficients kv = solve_vertex_coefficients(NewtonSystem(std::move(g)), zs, samples);
        py::dict k;
        for (const auto& [v, c] : kv.k) k[py::tuple(py::cast(v))] = c;
        return k;
      },
      py::arg("g"), py::arg("zeros"), py::arg("samples"));

  // lines
  m.def("roots_of_unity", &roots_of_unity, py::arg("field"), py::arg("n"));

  // whole jobs, JSON in and out
  m.def("subcommands", &subcommands);
  m.def(
      "_run_job",
      [](const std::string& sub, const std::string& doc, std::optional<std::uint64_t> budget) -> py::tuple {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(doc);
        } catch (const nlohmann::json::exception& e) {
          return py::make_tuple(int(exit_invalid), py::none(), std::string("input is not valid JSON: ") + e.what());
        }
        JobOutcome out;
        {
          py::gil_scoped_release release;
          out = run_job(sub, j, {budget});
        }
        return py::make_tuple(out.exit_code, out.report ? py::cast(out.report->dump()) : py::none(), out.error);
      },
      py::arg("subcommand"), py::arg("document"), py::arg("budget") = py::none());
}
