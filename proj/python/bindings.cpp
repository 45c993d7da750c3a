#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dimfn/census.hpp"
#include "dimfn/errors.hpp"
#include "dimfn/harness.hpp"
#include "dimfn/parser.hpp"

namespace py = pybind11;
using namespace dimfn;

namespace {

py::object loads(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

int arity_of(const Formula& f, std::optional<int> arity) {
    if (arity) return *arity;
    auto vs = f.free_vars();
    return vs.empty() ? 1 : std::max(1, *vs.rbegin());
}

}  // namespace

PYBIND11_MODULE(dimfn, m) {
    m.doc() = "Dimension functions on definable sets of DLO, WOM(m) and CONCAT(m)";

    py::register_exception<UserError>(m, "UserError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<DimValue>(m, "DimValue")
        .def_property_readonly("is_neg_inf", &DimValue::is_neg_inf)
        .def_property_readonly("value", [](const DimValue& d) -> py::object {
            if (d.is_neg_inf()) return py::none();
            return py::int_(d.value());
        })
        .def("__str__", &DimValue::str)
        .def("__repr__", [](const DimValue& d) { return "DimValue(" + d.str() + ")"; })
        .def("__eq__", [](const DimValue& a, const DimValue& b) { return a == b; })
        .def("__eq__", [](const DimValue& a, int b) { return !a.is_neg_inf() && a.value() == b; })
        .def("__lt__", [](const DimValue& a, const DimValue& b) { return a < b; })
        .def("__hash__", [](const DimValue& d) { return std::hash<std::string>()(d.str()); });

    m.def(
        "canonical",
        [](const std::string& formula, const std::string& model) {
            ModelId mid = ModelId::parse(model);
            return to_string(parse(formula, mid), mid);
        },
        py::arg("formula"), py::arg("model"), "Parse and print in canonical form.");

    m.def(
        "eliminate",
        [](const std::string& formula, const std::string& model) {
            ModelId mid = ModelId::parse(model);
            return to_string(eliminate(parse(formula, mid), mid), mid);
        },
        py::arg("formula"), py::arg("model"), "Equivalent quantifier-free formula.");

    m.def(
        "evaluate",
        [](const std::string& formula, const std::string& model, const std::map<int, std::string>& point) {
            ModelId mid = ModelId::parse(model);
            Assignment a;
            for (const auto& [v, text] : point) a[v] = mid.parse_element(text);
            return eval(parse(formula, mid), a, mid);
        },
        py::arg("formula"), py::arg("model"), py::arg("point") = std::map<int, std::string>{},
        "Truth value at a point given as {variable index: element text}.");

    m.def(
        "dim",
        [](const std::string& formula, const std::string& model, const std::string& engine, std::optional<int> arity) {
            ModelId mid = ModelId::parse(model);
            Formula f = parse(formula, mid);
            return dim(f, arity_of(f, arity), DimEngine::parse(engine, mid));
        },
        py::arg("formula"), py::arg("model"), py::arg("engine") = "top", py::arg("arity") = py::none());

    m.def(
        "classify",
        [](const std::string& formula, const std::string& model, const std::string& engine, std::optional<int> arity) {
            ModelId mid = ModelId::parse(model);
            Formula f = parse(formula, mid);
            Classification c = classify(f, arity_of(f, arity), DimEngine::parse(engine, mid));
            py::dict d;
            d["projection"] = to_string(c.proj, mid);
            d["x1"] = to_string(c.x1, mid);
            d["x0"] = to_string(c.x0, mid);
            return d;
        },
        py::arg("formula"), py::arg("model"), py::arg("engine") = "top", py::arg("arity") = py::none(),
        "Projection and its split into X(1) and X(0).");

    m.def(
        "sat",
        [](const std::string& formula, const std::string& model) -> py::object {
            ModelId mid = ModelId::parse(model);
            Formula f = parse(formula, mid);
            auto vs = f.free_vars();
            if (!f.quantifier_free() || vs.size() > 1)
                throw UserError("sat takes a quantifier-free formula in one free variable");
            auto w = sat_formula(f, vs.empty() ? 1 : *vs.begin(), mid);
            if (!w) return py::none();
            return py::make_tuple(element_str(w->point), rule_name(w->rule));
        },
        py::arg("formula"), py::arg("model"), "Witness and rule from the test-point oracle, or None.");

    m.def(
        "census",
        [](const std::string& model, const std::vector<std::string>& params) {
            ModelId mid = ModelId::parse(model);
            SignatureReport r;
            if (mid.kind == ModelId::Kind::Concat) {
                r = census(GeneratingSystem::segments(mid.m));
            } else if (mid.kind == ModelId::Kind::Wom) {
                r = wom_engine_report(mid.m);
            } else {
                std::vector<Rat> ps;
                for (const auto& p : params) ps.push_back(Rat::parse(p));
                r = dlo_halfline_report(ps);
            }
            return loads(to_json(r));
        },
        py::arg("model"), py::arg("params") = std::vector<std::string>{"-1", "0", "1"});

    m.def(
        "check_axioms",
        [](const std::string& model, const std::string& engine, std::uint64_t seed, int samples, int jobs) {
            ModelId mid = ModelId::parse(model);
            GenConfig cfg = GenConfig::defaults(mid, seed);
            cfg.samples = samples;
            cfg.jobs = jobs;
            DimEngine e = DimEngine::parse(engine, mid);
            SuiteReport r;
            {
                py::gil_scoped_release release;
                r = check_axioms(e, cfg);
            }
            return loads(to_json(r));
        },
        py::arg("model"), py::arg("engine") = "top", py::arg("seed") = 1, py::arg("samples") = 200, py::arg("jobs") = 1);

    m.def(
        "cross_check_qe",
        [](const std::string& model, std::uint64_t seed, int samples) {
            ModelId mid = ModelId::parse(model);
            GenConfig cfg = GenConfig::defaults(mid, seed);
            cfg.samples = samples;
            SuiteReport r;
            {
                py::gil_scoped_release release;
                r = cross_check_qe(cfg, mid);
            }
            return loads(to_json(r));
        },
        py::arg("model"), py::arg("seed") = 1, py::arg("samples") = 500);
}
