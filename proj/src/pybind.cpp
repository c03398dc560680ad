// Python bindings for the main operations.  The calling convention is
// JSON-shaped: characters, module descriptors, matrix modules, and triples
// cross the boundary as plain dicts/lists matching the documented file
// schemas, and results come back as dicts.  Floating-point values are
// rejected everywhere, mirroring the integer-only file format.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hecke/json_io.hpp"

namespace py = pybind11;
using namespace hecke;

namespace {

Json py_to_json(const py::handle& o) {
  if (o.is_none()) return Json();
  if (py::isinstance<py::bool_>(o)) return Json(o.cast<bool>());
  if (py::isinstance<py::int_>(o)) return Json(o.cast<int64_t>());
  if (py::isinstance<py::float_>(o))
    throw ParameterError("floating-point values are not accepted");
  if (py::isinstance<py::str>(o)) return Json(o.cast<std::string>());
  if (py::isinstance<py::dict>(o)) {
    Json out = Json::object();
    for (auto item : o.cast<py::dict>()) {
      require(py::isinstance<py::str>(item.first), "dict keys must be strings");
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    }
    return out;
  }
  if (py::isinstance<py::list>(o) || py::isinstance<py::tuple>(o)) {
    Json out = Json::array();
    for (auto item : o.cast<py::sequence>()) out.push_back(py_to_json(item));
    return out;
  }
  throw ParameterError("unsupported value type in JSON-shaped input");
}

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<int64_t>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<uint64_t>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& c : j) out.append(json_to_py(c));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      throw InternalError("unexpected JSON value type");
  }
}

MatrixModule module_from_any(const GenericHeckeData& D, const py::object& o) {
  Json j = py_to_json(o);
  if (j.contains("v_dim")) return induce_matrices(D, descriptor_from_json(D, j));
  return module_from_json(D, j);
}

RootSystemData root_from_any(const py::object& o) {
  return root_system_from_json(py_to_json(o));
}

}  // namespace

PYBIND11_MODULE(pyhecke, m) {
  m.doc() = "Exact Ext-group computations for generic pro-p-Iwahori Hecke "
            "algebras at q = 0";

  py::register_exception<ParameterError>(m, "HeckeParameterError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "HeckeInternalError", PyExc_RuntimeError);

  py::class_<GenericHeckeData>(m, "Data")
      .def_property_readonly("n_aff", &GenericHeckeData::n_aff)
      .def_property_readonly("n_omega", &GenericHeckeData::n_omega)
      .def_property_readonly(
          "zk_invariants",
          [](const GenericHeckeData& D) { return D.zk.orders; })
      .def("to_json",
           [](const GenericHeckeData& D) { return json_to_py(data_to_json(D)); })
      .def("__repr__", [](const GenericHeckeData& D) {
        return "<hecke datum: " + std::to_string(D.n_aff()) + " reflections, " +
               std::to_string(D.n_omega()) + " length-zero generators>";
      });

  m.def("build_gl_n", &build_gl_n, py::arg("n"), py::arg("q"),
        "The GL_n datum over a residue field with q elements");
  m.def(
      "data_from_json",
      [](const py::object& j) { return data_from_json(py_to_json(j)); },
      py::arg("datum"), "Load and validate a datum from its JSON form");
  m.def(
      "quotient",
      [](const GenericHeckeData& D, const std::vector<size_t>& keep,
         const std::vector<std::vector<int64_t>>& subgroup) {
        std::vector<ZkElem> gens;
        for (const auto& raw : subgroup) gens.push_back(D.zk.make(raw));
        return quotient_data(D, keep, gens);
      },
      py::arg("data"), py::arg("keep"),
      py::arg("subgroup") = std::vector<std::vector<int64_t>>{},
      "Quotient datum keeping the listed reflections");

  m.def(
      "stabilizer_words",
      [](const GenericHeckeData& D, const py::object& xi) {
        return stabilizer_words(D, aff_char_from_json(D, py_to_json(xi)));
      },
      py::arg("data"), py::arg("xi"),
      "Generator words a module descriptor must provide matrices for");
  m.def(
      "is_supersingular",
      [](const GenericHeckeData& D, const py::object& xi) {
        return is_supersingular(D, aff_char_from_json(D, py_to_json(xi)));
      },
      py::arg("data"), py::arg("xi"));

  m.def(
      "ext1_aff",
      [](const GenericHeckeData& D, const py::object& xi1, const py::object& xi2) {
        ExtAffResult r = dim_ext1_aff(D, aff_char_from_json(D, py_to_json(xi1)),
                                      aff_char_from_json(D, py_to_json(xi2)));
        return json_to_py(Json{{"dim_e1", r.dim_e1},
                               {"dim_e2", r.dim_e2},
                               {"dim_kernel", r.dim_kernel},
                               {"dim_ext1", r.dim_ext1}});
      },
      py::arg("data"), py::arg("xi1"), py::arg("xi2"),
      "dim Ext^1 between characters of the affine subalgebra, with the "
      "intermediate dimensions");

  m.def(
      "ext1_supersingular",
      [](const GenericHeckeData& D, const py::object& m1, const py::object& m2) {
        ExtSsBreakdown b =
            dim_ext1_supersingular(D, descriptor_from_json(D, py_to_json(m1)),
                                   descriptor_from_json(D, py_to_json(m2)));
        return json_to_py(breakdown_to_json(b));
      },
      py::arg("data"), py::arg("m1"), py::arg("m2"),
      "dim Ext^1 between simple supersingular modules, with per-coset terms");
  m.def(
      "hom_supersingular",
      [](const GenericHeckeData& D, const py::object& m1, const py::object& m2) {
        return dim_hom_supersingular(D, descriptor_from_json(D, py_to_json(m1)),
                                     descriptor_from_json(D, py_to_json(m2)));
      },
      py::arg("data"), py::arg("m1"), py::arg("m2"));

  m.def(
      "induce",
      [](const GenericHeckeData& D, const py::object& desc) {
        return json_to_py(module_to_json(
            D, induce_matrices(D, descriptor_from_json(D, py_to_json(desc)))));
      },
      py::arg("data"), py::arg("descriptor"),
      "The induced module of a supersingular descriptor as generator matrices");

  m.def(
      "oracle_ext1",
      [](const GenericHeckeData& D, const py::object& m1, const py::object& m2) {
        return brute_force_ext1(D, module_from_any(D, m1), module_from_any(D, m2),
                                RelationScope::full);
      },
      py::arg("data"), py::arg("m1"), py::arg("m2"),
      "Brute-force Ext^1 from the relation matrices; accepts descriptors or "
      "matrix modules");
  m.def(
      "oracle_hom",
      [](const GenericHeckeData& D, const py::object& m1, const py::object& m2) {
        return brute_force_hom(D, module_from_any(D, m1), module_from_any(D, m2),
                               RelationScope::full);
      },
      py::arg("data"), py::arg("m1"), py::arg("m2"));
  m.def(
      "check_module",
      [](const GenericHeckeData& D, const py::object& mod) {
        return check_module(D, module_from_any(D, mod), RelationScope::full);
      },
      py::arg("data"), py::arg("module"),
      "Whether the matrices satisfy all defining relations");

  m.def(
      "plan",
      [](const py::object& root, const py::object& t1, const py::object& t2,
         int64_t i) {
        return json_to_py(plan_to_json(
            reduce_simple_ext(root_from_any(root), triple_from_json(py_to_json(t1)),
                              triple_from_json(py_to_json(t2)), i)));
      },
      py::arg("root"), py::arg("t1"), py::arg("t2"), py::arg("i") = 1,
      "Reduce Ext^i between simple modules to the supersingular case");

  m.attr("__version__") = "1.0.0";
}
