#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "krsym/decompose.hpp"
#include "krsym/error.hpp"
#include "krsym/fixtures.hpp"
#include "krsym/reeb.hpp"
#include "krsym/rexpr.hpp"
#include "krsym/symmetry.hpp"
#include "krsym/treeact.hpp"

namespace py = pybind11;
using namespace krsym;

namespace {

KRModel krt_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_krt(in);
}

TreeAction act_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_act(in);
}

Mesh mesh_from(const std::vector<std::array<double, 3>>& positions, const std::vector<Triangle>& triangles) {
  std::vector<Vec3> pos;
  for (const auto& p : positions) pos.push_back({p[0], p[1], p[2]});
  return Mesh(std::move(pos), triangles);
}

py::dict reeb_summary(const Mesh& mesh, const std::vector<double>& values) {
  const ReebGraph g = compute_reeb(mesh, ScalarField::from_values(values));
  py::dict out;
  out["vertices"] = g.nodes().size();
  out["edges"] = g.arcs().size();
  out["tree"] = g.is_tree();
  out["dot"] = to_dot(g);
  if (g.is_tree()) {
    const KRModel model = to_plane_tree(g);
    out["krt"] = to_krt(model);
    out["group"] = pretty_print(assemble(model));
  } else {
    out["krt"] = py::none();
    out["group"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_krsym, m) {
  m.doc() = "Combinatorial symmetry groups of functions on surfaces";

  static py::exception<Error> error_type(m, "KrsymError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("normal_form", [](const std::string& text) { return pretty_print(normal_form(parse(text))); },
        "Canonical text of the normal form of an expression");
  m.def("order", [](const std::string& text) { return order(parse(text)); });
  m.def("is_solvable", [](const std::string& text) { return is_solvable(evaluate(parse(text))); });
  m.def("analyze", [](const std::string& text) {
    const MembershipReport r = analyze_membership(parse(text));
    py::dict out;
    out["verdict"] = std::string(to_string(r.verdict));
    out["summary"] = r.summary;
    out["trace"] = r.trace;
    return out;
  });

  m.def(
      "realize",
      [](const std::string& text, const std::string& surface) {
        return to_krt(realize(parse(text), parse_surface(surface)));
      },
      py::arg("expr"), py::arg("surface") = "disk", "A .krt model whose symmetry group is the expression");
  m.def("assemble", [](const std::string& krt) { return pretty_print(assemble(krt_from_text(krt))); },
        "G(f) of a .krt model");
  m.def(
      "roundtrip",
      [](const std::string& text, const std::string& surface) {
        const RoundtripReport r = roundtrip(parse(text), parse_surface(surface));
        py::dict out;
        out["ok"] = r.ok;
        out["expected"] = pretty_print(r.expected);
        out["assembled"] = pretty_print(r.assembled);
        out["order"] = r.expected_order;
        out["oracle_order"] = r.oracle_order ? py::cast(*r.oracle_order) : py::none();
        out["diff"] = r.diff;
        return out;
      },
      py::arg("expr"), py::arg("surface") = "disk");
  m.def("oracle_order", [](const std::string& krt) { return brute_force_group(krt_from_text(krt)).order(); });
  m.def("oracle_agrees", [](const std::string& krt) { return oracle_agrees(krt_from_text(krt)); });

  m.def("decompose", [](const std::string& act) {
    const LabelledExpr r = action_to_expression(act_from_text(act));
    return py::make_tuple(pretty_print(r.expr), r.labels);
  });
  m.def("jordan", [](const std::string& act) { return pretty_print(jordan_decompose(act_from_text(act).tree())); });

  m.def(
      "reeb",
      [](const std::vector<std::array<double, 3>>& positions, const std::vector<Triangle>& triangles,
         const std::vector<double>& values) { return reeb_summary(mesh_from(positions, triangles), values); },
      py::arg("positions"), py::arg("triangles"), py::arg("values"),
      "Reeb graph summary of a mesh with per-vertex values");
  m.def("fixture_names", &fixture_names);
  m.def("fixture", [](const std::string& name) {
    const Fixture fx = make_fixture(name);
    std::vector<std::array<double, 3>> pos;
    for (const auto& p : fx.mesh.positions()) pos.push_back({p.x, p.y, p.z});
    py::dict out;
    out["positions"] = pos;
    out["triangles"] = fx.mesh.triangles();
    out["values"] = fx.field.values;
    return out;
  });
}
