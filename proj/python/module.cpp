// Python bindings. Big integers cross as Python ints, rationals as
// fractions.Fraction, and structured results as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qzeta/cli.hpp"
#include "qzeta/groups.hpp"
#include "qzeta/measures.hpp"
#include "qzeta/parith.hpp"
#include "qzeta/qseries.hpp"

namespace py = pybind11;
using namespace qzeta;

namespace {

py::object to_py(const Int& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }

py::object to_py(const Rat& x)
{
    return py::module_::import("fractions").attr("Fraction")(to_py(Int(x.get_num())), to_py(Int(x.get_den())));
}

Rat to_rat(const py::handle& x)
{
    py::object f = py::module_::import("fractions").attr("Fraction")(x);
    Rat r(Int(py::str(f.attr("numerator")).cast<std::string>()), Int(py::str(f.attr("denominator")).cast<std::string>()));
    r.canonicalize();
    return r;
}

py::list to_py(const std::vector<Int>& v)
{
    py::list out;
    for (const auto& x : v) out.append(to_py(x));
    return out;
}

py::object to_py(const cli::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Params params_of(const std::vector<int>& v)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return parse_params(s.str(), v.size() == 5 ? FormKind::Zeta2 : FormKind::Zeta1);
}

py::dict eval_dict(const EvalResult& e)
{
    py::dict d;
    d["value"] = to_py(e.value);
    d["tail_bound"] = to_py(e.tail_bound);
    d["terms"] = e.terms_used;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qzeta, m)
{
    m.doc() = "Exact q-series, cyclotomic arithmetic and linear forms in zeta_q(1), zeta_q(2)";

    m.def("rho", [](int k) { return to_py(rho(k).coeffs); }, py::arg("k"),
          "Coefficients of rho_k in ascending powers.");

    m.def(
        "zeta_q_series",
        [](int k, std::size_t order, const std::string& representation) {
            const QSeries s = zeta_q_series(k, order, parse_representation(representation));
            py::list out;
            for (const auto& c : s.coeffs()) out.append(to_py(c));
            return out;
        },
        py::arg("k"), py::arg("order"), py::arg("representation") = "divisor-sum");

    m.def("zeta_q_value", [](int k, long p, long terms) { return eval_dict(zeta_q_value(k, p, terms)); }, py::arg("k"),
          py::arg("p"), py::arg("terms") = 200);
    m.def(
        "zeta_q_enclosure",
        [](int k, const py::object& q, const py::object& tol) { return eval_dict(zeta_q_enclosure(k, to_rat(q), to_rat(tol))); },
        py::arg("k"), py::arg("q"), py::arg("tolerance"));

    m.def("cyclotomic", [](int l) { return to_py(cyclotomic(l).coeffs()); }, py::arg("l"));
    m.def("dnp", [](int n) { return to_py(dnp(n).expand().coeffs()); }, py::arg("n"),
          "Coefficients of D_n(p) = lcm of p^k - 1, k <= n.");
    m.def("ord_phi_factorial", &ord_phi_factorial, py::arg("l"), py::arg("n"));
    m.def("mertens_ratio", &mertens_ratio, py::arg("n"), py::arg("p") = 2);
    m.def("jacobi_check", &jacobi_check, py::arg("order"));

    m.def(
        "linform",
        [](const std::vector<int>& params, const std::vector<long>& certify_at) {
            return to_py(cli::to_json(linform(params_of(params), certify_at)));
        },
        py::arg("params"), py::arg("certify_at") = std::vector<long>{2},
        "Linear form for a 4-tuple (zeta_q(1)) or 5-tuple (zeta_q(2)) as a JSON-shaped dict.");
    m.def(
        "inclusion",
        [](const std::vector<int>& params) {
            const Params pr = params_of(params);
            const LinearForm lf = linform(pr, {2});
            const OmegaResult om = omega(cvector(pr), arithmetic_group(pr.kind));
            const InclusionResult r = verify_inclusion(lf, &om.omega);
            py::dict d;
            d["ok"] = r.ok;
            d["witness"] = r.witness;
            d["M"] = lf.M;
            d["omega_degree"] = om.degree();
            return d;
        },
        py::arg("params"));

    m.def(
        "group_order",
        [](const std::string& which) {
            if (which == "tau_sigma") return group_tau_sigma().order();
            if (which == "tau2_sigma") return group_tau2_sigma().order();
            if (which == "zeta2") return group_zeta2().order();
            throw std::invalid_argument("unknown group: " + which);
        },
        py::arg("which"));
    m.def(
        "omega",
        [](const std::vector<int>& params) {
            const Params pr = params_of(params);
            const OmegaResult om = omega(cvector(pr), arithmetic_group(pr.kind));
            py::dict d;
            d["exponents"] = om.omega.exponents;
            d["degree"] = om.degree();
            d["group_order"] = om.group_order;
            return d;
        },
        py::arg("params"));

    m.def(
        "measure",
        [](const std::string& fam, int n_max) {
            const MeasurePipeline mp = measure_family(family(fam), n_max);
            py::dict d;
            d["alpha"] = to_py(mp.report.alpha);
            d["M_coeff"] = to_py(mp.report.M_coeff);
            d["d_exp"] = mp.report.d_exp;
            d["omega_exp"] = mp.report.omega_exp;
            d["lambda"] = mp.report.lambda;
            d["kappa"] = mp.report.kappa;
            d["mu_bound"] = mp.report.mu_bound;
            d["M"] = mp.fit.M;
            d["stabilized"] = mp.fit.stabilized;
            return d;
        },
        py::arg("family"), py::arg("n_max") = 8);
    m.def(
        "empirical_mu",
        [](const std::string& fam, long p, int n_max, int n_min) {
            py::list out;
            for (const auto& r : empirical_mu(family(fam), p, n_max, n_min)) {
                py::dict d;
                d["n"] = r.n;
                d["log_a"] = r.log_a;
                d["log_form"] = r.log_form;
                d["estimate"] = r.estimate;
                out.append(d);
            }
            return out;
        },
        py::arg("family"), py::arg("p") = 2, py::arg("n_max") = 10, py::arg("n_min") = 1);
    m.def(
        "apery_limits",
        [](int n_max) {
            py::list out;
            for (const auto& r : apery_limit_check(n_max)) {
                py::dict d;
                d["n"] = r.n;
                d["normalized"] = to_py(r.normalized);
                d["apery"] = to_py(r.apery);
                d["ok"] = r.ok;
                out.append(d);
            }
            return out;
        },
        py::arg("n_max"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"qzeta"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");

    m.attr("__version__") = QZETA_VERSION;
}
