#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <functional>

#include "korselt/arith.hpp"
#include "korselt/batch.hpp"
#include "korselt/core.hpp"
#include "korselt/solver.hpp"
#include "korselt/verify.hpp"

namespace py = pybind11;
using namespace korselt;

namespace {

// KorseltSet goes to Python as a plain list of Rational; weight is len().
std::vector<Rational> bases_of(const KorseltSet& ks) { return ks.bases(); }

py::dict failure_dict(const verify::Failure& f) {
    py::dict d;
    d["n"] = f.n;
    d["relation"] = f.relation;
    d["lhs"] = f.lhs;
    d["rhs"] = f.rhs;
    py::dict idx;
    for (const auto& [k, v] : f.indices) idx[py::str(k)] = v;
    d["indices"] = idx;
    return d;
}

}  // namespace

PYBIND11_MODULE(_korselt, m) {
    m.doc() = "Exact rational Korselt sets, bounds and verification";

    py::register_exception<NotSquarefree>(m, "NotSquarefree", PyExc_ValueError);
    py::register_exception<NotComposite>(m, "NotComposite", PyExc_ValueError);

    py::class_<Rational>(m, "Rational")
        .def(py::init([](Int num, Int den) { return reduce(num, den); }), py::arg("num"), py::arg("den") = 1)
        .def_property_readonly("num", &Rational::num)
        .def_property_readonly("den", &Rational::den)
        .def("is_integer", &Rational::is_integer)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self)
        .def("__hash__", [](const Rational& r) { return std::hash<Int>{}(r.num()) ^ (std::hash<Int>{}(r.den()) << 1); })
        .def("__float__", &Rational::approx)
        .def("__str__", &Rational::str)
        .def("__repr__", [](const Rational& r) { return "Rational(" + std::to_string(r.num()) + ", " + std::to_string(r.den()) + ")"; })
        .def_static("parse", [](const std::string& s) {
            auto r = Rational::parse(s);
            if (!r) throw py::value_error("not a rational: " + s);
            return *r;
        });
    py::implicitly_convertible<py::int_, Rational>();

    m.def("reduce", [](Int num, Int den) { return reduce(num, den); }, py::arg("num"), py::arg("den"));

    py::class_<SquarefreeFactorization>(m, "SquarefreeFactorization")
        .def_readonly("n", &SquarefreeFactorization::n)
        .def_readonly("primes", &SquarefreeFactorization::primes)
        .def_property_readonly("m", &SquarefreeFactorization::m)
        .def("__repr__", [](const SquarefreeFactorization& f) {
            std::string s = "SquarefreeFactorization(" + std::to_string(f.n) + ", [";
            for (std::size_t i = 0; i < f.primes.size(); ++i) s += (i ? ", " : "") + std::to_string(f.primes[i]);
            return s + "])";
        });

    m.def("is_prime", &is_prime, py::arg("n"));
    m.def("factor_squarefree", &factor_squarefree, py::arg("n"));
    m.def("signed_divisors", &signed_divisors, py::arg("n"));

    m.def(
        "is_korselt_base", [](Int n, const Rational& alpha) { return is_korselt_base(factor_squarefree(n), alpha); },
        py::arg("n"), py::arg("alpha"));
    m.def("m_value", &m_value, py::arg("n"), py::arg("k"), py::arg("p"));
    m.def(
        "korselt_bounds",
        [](Int n) {
            const auto b = korselt_bounds(factor_squarefree(n));
            return py::make_tuple(b.lower, b.upper, std::string(to_string(b.upper_argmin)));
        },
        py::arg("n"), "Returns (lower, upper, which candidate attains upper).");

    m.def("q_korselt_set", [](Int n) { return bases_of(q_korselt_set(factor_squarefree(n))); }, py::arg("n"));
    m.def("z_korselt_set", [](Int n) { return bases_of(z_korselt_set(factor_squarefree(n))); }, py::arg("n"));
    m.def(
        "oracle_q_korselt_set", [](Int n) { return bases_of(oracle_q_korselt_set(factor_squarefree(n))); },
        py::arg("n"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "korselt_weight",
        [](Int n, const std::string& domain) {
            if (domain != "q" && domain != "z") throw py::value_error("domain must be 'q' or 'z'");
            return korselt_weight(factor_squarefree(n), domain == "z" ? Domain::kZ : Domain::kQ);
        },
        py::arg("n"), py::arg("domain") = "q");
    m.def(
        "upper_attainment",
        [](Int n) {
            const auto f = factor_squarefree(n);
            return upper_attainment(f, q_korselt_set(f));
        },
        py::arg("n"));
    m.def(
        "base_set", [](const Rational& alpha, Int limit) { return base_set(alpha, limit).members; },
        py::arg("alpha"), py::arg("limit"));
    m.def("is_carmichael", &is_carmichael, py::arg("n"));
    m.def("carmichael_scan", &carmichael_scan, py::arg("limit"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "run_suite",
        [](Int lo, Int hi, const std::vector<std::string>& checks, unsigned jobs) {
            std::vector<verify::CheckId> ids;
            for (const auto& c : checks) {
                if (c == "all") {
                    ids = verify::all_checks();
                    break;
                }
                auto id = verify::parse_check(c);
                if (!id) throw py::value_error("unknown check: " + c);
                ids.push_back(*id);
            }
            std::vector<verify::TheoremReport> reports;
            {
                py::gil_scoped_release release;
                reports = batch::parallel_suite(lo, hi, ids, jobs);
            }
            py::list out;
            for (const auto& r : reports) {
                py::dict d;
                d["check_id"] = std::string(verify::to_string(r.check_id));
                d["range"] = py::make_tuple(r.n_lo, r.n_hi);
                d["tested_count"] = r.tested_count;
                d["vacuous_count"] = r.vacuous_count;
                py::list fails;
                for (const auto& f : r.failures) fails.append(failure_dict(f));
                d["failures"] = fails;
                out.append(d);
            }
            return out;
        },
        py::arg("lo"), py::arg("hi"), py::arg("checks") = std::vector<std::string>{"all"}, py::arg("jobs") = 1u);

    m.def(
        "scan_record_json", [](Int n) { return batch::to_json_line(batch::make_record(factor_squarefree(n))); },
        py::arg("n"), "One scan record as a JSON line (same bytes as `korselt scan`).");
}
