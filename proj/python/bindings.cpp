#include "plsemi/cesaro.hpp"
#include "plsemi/omega_fn.hpp"
#include "plsemi/semigroup.hpp"
#include "plsemi/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace plsemi;

namespace {

Rational rational_from_py_int(const py::int_& value) {
    return Rational::parse(py::str(value).cast<std::string>());
}

py::int_ bigint_to_py(const BigInt& value) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(value.get_str().c_str(), nullptr, 10));
}

std::vector<std::pair<Rational, Rational>> breakpoints_out(const OmegaFn& x) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (const Breakpoint& p : x.breakpoints()) pts.emplace_back(p.u, p.v);
    return pts;
}

OmegaFn make_omega(const Rational& minus_one,
                   const std::vector<std::pair<Rational, Rational>>& pts) {
    std::vector<Breakpoint> bps;
    bps.reserve(pts.size());
    for (const auto& [u, v] : pts) bps.push_back({u, v});
    return OmegaFn(minus_one, std::move(bps));
}

py::dict report_to_dict(const verify::CheckReport& r) {
    py::dict d;
    d["check_id"] = r.check_id;
    d["instances"] = r.instances;
    d["passed"] = r.passed;
    d["ok"] = r.ok();
    d["witness"] = r.witness ? py::object(py::str(*r.witness)) : py::object(py::none());
    return d;
}

verify::InstanceGen make_gen(std::uint64_t seed, int count, const Rational& t_max, int budget) {
    verify::InstanceGen gen;
    gen.seed = seed;
    gen.count = count;
    gen.t_max = t_max;
    gen.breakpoint_budget = budget;
    return gen;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact rational calculus for a one-parameter nonexpansive semigroup on "
              "{-1} ∪ [0,inf): the operator T(t), its Cesàro means, the common "
              "fixed-point families, and the verification suites.";

    py::class_<Rational>(m, "Rational")
        .def(py::init([](const std::string& text) { return Rational::parse(text); }))
        .def(py::init(&rational_from_py_int))
        .def_property_readonly("num", [](const Rational& r) { return bigint_to_py(r.num()); })
        .def_property_readonly("den", [](const Rational& r) { return bigint_to_py(r.den()); })
        .def("__str__", &Rational::str)
        .def("__repr__", [](const Rational& r) { return "Rational('" + r.str() + "')"; })
        .def("__float__", &Rational::to_double)
        .def("__eq__", [](const Rational& a, const Rational& b) { return a == b; }, py::is_operator())
        .def("__lt__", [](const Rational& a, const Rational& b) { return a < b; }, py::is_operator())
        .def("__le__", [](const Rational& a, const Rational& b) { return a <= b; }, py::is_operator())
        .def("__add__", [](const Rational& a, const Rational& b) { return a + b; }, py::is_operator())
        .def("__sub__", [](const Rational& a, const Rational& b) { return a - b; }, py::is_operator())
        .def("__mul__", [](const Rational& a, const Rational& b) { return a * b; }, py::is_operator())
        .def("__truediv__", [](const Rational& a, const Rational& b) { return a / b; },
             py::is_operator())
        .def("__neg__", [](const Rational& a) { return -a; })
        .def("__abs__", [](const Rational& a) { return abs(a); });
    py::implicitly_convertible<py::str, Rational>();
    py::implicitly_convertible<py::int_, Rational>();

    py::class_<OmegaFn>(m, "OmegaFn")
        .def(py::init(&make_omega), py::arg("minus_one"), py::arg("breakpoints"))
        .def_property_readonly("minus_one", &OmegaFn::minus_one_value)
        .def_property_readonly("breakpoints", &breakpoints_out)
        .def("eval", &OmegaFn::eval, py::arg("u"))
        .def("canonicalized", &OmegaFn::canonicalized)
        .def("in_C",
             [](const OmegaFn& x) {
                 const CMembership r = in_C(x);
                 return py::make_tuple(r.in_C, r.violation ? py::object(py::str(*r.violation))
                                                           : py::object(py::none()));
             })
        .def("to_json", [](const OmegaFn& x) { return to_json(x); })
        .def_static("from_json", &omega_fn_from_json, py::arg("text"))
        .def_static("zero", &OmegaFn::zero)
        .def("__eq__", [](const OmegaFn& a, const OmegaFn& b) { return a == b; }, py::is_operator())
        .def("__repr__", [](const OmegaFn& x) { return to_json(x); });

    m.def("apply", &apply, py::arg("t"), py::arg("x"), "T(t)x for t >= 0 and x in C");
    m.def("apply_basic", &apply_basic, py::arg("t"), py::arg("x"), "the basic formula, t in [0,1]");
    m.def("decompose",
          [](const Rational& t) {
              const Decomposition d = decompose(t);
              return py::make_tuple(bigint_to_py(d.m), d.t_prime);
          },
          py::arg("t"), "(m, t') with t = m/2 + t', t' in [0, 1/2)");
    m.def("sup_dist",
          py::overload_cast<const OmegaFn&, const OmegaFn&>(&sup_dist), py::arg("x"), py::arg("y"),
          "exact sup-norm distance over Omega");
    m.def("alpha",
          [](const OmegaFn& x, const Rational& u) {
              if (u < 0) throw std::domain_error("alpha: u must be >= 0");
              return alpha_fn(x).eval(u);
          },
          py::arg("x"), py::arg("u"), "tail supremum max(x(-1), sup x on [u,inf))");
    m.def("orbit_zero_closed_form", &orbit_zero_closed_form, py::arg("t"));
    m.def("fixed_point_v",
          [](const Rational& s) { return fixed_point({FixedPointKind::V, s}); }, py::arg("s"));
    m.def("fixed_point_w",
          [](const Rational& s) { return fixed_point({FixedPointKind::W, s}); }, py::arg("s"));
    m.def("is_common_fixed_point", &is_common_fixed_point, py::arg("x"));

    py::class_<ZeroOrbitMean>(m, "ZeroOrbitMean")
        .def(py::init<Rational>(), py::arg("t"))
        .def_property_readonly("t", &ZeroOrbitMean::t)
        .def("eval", &ZeroOrbitMean::eval, py::arg("u"))
        .def("sup_residual", &ZeroOrbitMean::sup_residual);

    m.def("cesaro_residual",
          [](const OmegaFn& x, const Rational& t, const std::optional<Rational>& h) {
              const ResidualResult r = cesaro_residual(x, t, h);
              return py::make_tuple(r.residual, r.error_bound);
          },
          py::arg("x"), py::arg("t"), py::arg("h") = py::none(),
          "(residual, error_bound); exact path when x is the zero function");
    m.def("cesaro_quadrature_mean",
          [](const OmegaFn& x, const Rational& t, const Rational& h) {
              return *cesaro_quadrature(x, t, h).mean;
          },
          py::arg("x"), py::arg("t"), py::arg("h"), "composite-trapezoid mean, exact combination");

    m.def("suite_ids", [] { return verify::suite_ids(); });
    m.def("run_suite",
          [](const std::string& id, std::uint64_t seed, int count, const Rational& t_max,
             int budget) { return report_to_dict(verify::run_suite(id, make_gen(seed, count, t_max, budget))); },
          py::arg("check_id"), py::arg("seed") = 1, py::arg("count") = 200,
          py::arg("t_max") = Rational(3), py::arg("budget") = 6);
    m.def("run_all",
          [](std::uint64_t seed, int count, const Rational& t_max, int budget) {
              py::list out;
              for (const auto& r : verify::run_all(make_gen(seed, count, t_max, budget)))
                  out.append(report_to_dict(r));
              return out;
          },
          py::arg("seed") = 1, py::arg("count") = 200, py::arg("t_max") = Rational(3),
          py::arg("budget") = 6);
    m.def("run_mutation_checks",
          [](std::uint64_t seed, int count) {
              py::list out;
              for (const auto& o : verify::run_mutation_checks(make_gen(seed, count, Rational(3), 6))) {
                  py::dict d;
                  d["mutant"] = verify::mutant_name(o.mutant);
                  d["detected"] = o.detected;
                  d["failing_suite"] = o.failing_suite;
                  out.append(d);
              }
              return out;
          },
          py::arg("seed") = 1, py::arg("count") = 40);

    m.attr("__version__") = "0.1.0";
}
