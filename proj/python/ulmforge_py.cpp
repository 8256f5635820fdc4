#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ulmforge/corpus.hpp"
#include "ulmforge/error.hpp"
#include "ulmforge/logic.hpp"
#include "ulmforge/reduction.hpp"
#include "ulmforge/tp.hpp"
#include "ulmforge/ulm.hpp"

namespace py = pybind11;
using namespace ulmforge;

namespace {

std::vector<std::string> lines_of(const std::vector<LedgerLine>& lines) {
  std::vector<std::string> out;
  for (const auto& l : lines) out.push_back(l.to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ulm invariants, the theory T_p and the reduction to abelian p-groups";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<ExplicitPGroup>(m, "Group")
      .def(py::init<std::uint32_t, std::vector<std::uint32_t>, std::uint32_t>(), py::arg("p"), py::arg("cyclic"),
           py::arg("divisible") = 0)
      .def_static("parse", [](const std::string& s) { return ExplicitPGroup::parse(s); })
      .def_property_readonly("p", &ExplicitPGroup::p)
      .def_property_readonly("cyclic", &ExplicitPGroup::exps)
      .def_property_readonly("divisible", &ExplicitPGroup::div_rank)
      .def_property_readonly("is_finite", &ExplicitPGroup::is_finite)
      .def_property_readonly("order",
                             [](const ExplicitPGroup& g) -> std::optional<std::uint64_t> {
                               const auto n = group_size(g);
                               return n.is_finite() ? std::optional<std::uint64_t>(n.value()) : std::nullopt;
                             })
      .def("__eq__", [](const ExplicitPGroup& a, const ExplicitPGroup& b) { return a == b; })
      .def("__str__", &ExplicitPGroup::to_string)
      .def("__repr__", [](const ExplicitPGroup& g) { return "Group('" + g.to_string() + "')"; });

  py::class_<LpStructure>(m, "Structure")
      .def_static("parse", [](const std::string& s) { return LpStructure::parse(s); })
      .def_property_readonly("p", &LpStructure::p)
      .def_property_readonly("size", &LpStructure::size)
      .def("__eq__", [](const LpStructure& a, const LpStructure& b) { return a == b; })
      .def("__str__", &LpStructure::to_string);

  m.def("ulm_invariant", py::overload_cast<const ExplicitPGroup&, std::uint64_t>(&ulm_invariant), py::arg("g"),
        py::arg("n"));
  m.def("profile", [](const ExplicitPGroup& g) { return profile_of(g).to_string(); });
  m.def("isomorphic", &iso_by_ulm, py::arg("a"), py::arg("b"));

  m.def(
      "check",
      [](const LpStructure& s, std::uint32_t extra) {
        const auto r = check_axioms(s, extra);
        return py::make_tuple(r.is_model(), r.failed(), r.to_string());
      },
      py::arg("structure"), py::arg("extra_bound") = 0, "Returns (is_model, failed_axioms, report).");
  m.def("encode", &encode, py::arg("g"), py::arg("m") = 0);
  m.def(
      "decode",
      [](const LpStructure& s) {
        const auto d = decode(s);
        return py::make_tuple(classify(d.table), d.size_m);
      },
      "Returns (group, m) for a model.");
  m.def("structure_isomorphic", [](const LpStructure& a, const LpStructure& b) { return structure_iso(a, b).has_value(); });
  m.def("permute", [](const LpStructure& s, std::uint64_t seed) { return permute(s, random_permutation(s.size(), seed)); },
        py::arg("structure"), py::arg("seed"));
  m.def("hred", &hred, py::arg("g"), py::arg("m"));
  m.def("reduce", &borel_reduce, py::arg("structure"));
  m.def("verify", [](const ExplicitPGroup& g, std::uint32_t k) { return lines_of(verify_hred(g, k)); }, py::arg("g"),
        py::arg("m"));

  m.def(
      "evaluate",
      [](const std::string& formula, const ExplicitPGroup& g, std::optional<std::string> element,
         std::uint32_t denom_bound) {
        EvalOptions opt;
        opt.denom_bound = denom_bound;
        std::optional<GroupElement> x;
        if (element) x = parse_element(g, *element);
        const auto r = evaluate(FormulaId::parse(formula), g, opt, x ? &*x : nullptr);
        return py::make_tuple(r.verdict, r.to_string());
      },
      py::arg("formula"), py::arg("g"), py::arg("element") = py::none(), py::arg("denom_bound") = 3,
      "Returns (verdict, report).");

  m.def(
      "selftest", [](const std::string& spec) { return lines_of(run_selftest(CorpusSpec::parse(spec))); },
      py::arg("spec") = "");
  m.def("finite_groups", &finite_groups, py::arg("p"), py::arg("max_size"));
}
