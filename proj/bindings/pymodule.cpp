//
// Python bindings for the main operations: coefficient tables, the delta
// expansion and its frequency weight, the gamma factor, shifted correlation
// sums, exponent bounds and the dual-sum comparison.  Report structs come
// back as plain dicts so the smoke tests stay free of wrapper classes.
//

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftconv/coefficients.hpp"
#include "shiftconv/convolution.hpp"
#include "shiftconv/delta_method.hpp"
#include "shiftconv/dual_sum.hpp"
#include "shiftconv/gamma.hpp"

namespace py = pybind11;
using namespace shiftconv;

namespace {

Smoothing parse_smoothing(const std::string& s) {
    if (s == "sharp") return Smoothing::sharp;
    if (s == "smooth") return Smoothing::smooth;
    throw config_error("smoothing must be 'sharp' or 'smooth'");
}

SumMethod parse_method(const std::string& s) {
    if (s == "naive") return SumMethod::naive;
    if (s == "fft") return SumMethod::fft;
    throw config_error("method must be 'naive' or 'fft'");
}

} // namespace

PYBIND11_MODULE(_shiftconv, m) {
    m.doc() = "delta expansion, dual sums and shifted correlation sums";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);

    py::class_<CoefficientTable>(m, "CoefficientTable")
        .def_readonly("label", &CoefficientTable::label)
        .def_readonly("degree", &CoefficientTable::degree)
        .def("__len__", &CoefficientTable::size)
        .def("at", &CoefficientTable::at, py::arg("n"),
             "value at 1-based index n")
        .def("values", [](const CoefficientTable& t) { return t.values; },
             "the full table as a list, a(1) first")
        .def("kind",
             [](const CoefficientTable& t) { return std::string(kind_name(t.kind)); });

    m.def("gen_divisor", &gen_divisor, py::arg("d"), py::arg("N"),
          "d-fold divisor function tau_d(1..N)");
    m.def("gen_ramanujan", &gen_ramanujan, py::arg("N"),
          "normalized weight-12 cusp form coefficients lambda(1..N)");
    m.def("gen_sym_power", &gen_sym_power, py::arg("base"), py::arg("k"), py::arg("N"),
          "degree k+1 symmetric power lift of a cusp form table");
    m.def("gen_random_model", &gen_random_model, py::arg("N"), py::arg("seed"),
          py::arg("degree"), "i.i.d. standard normal control sequence");

    py::class_<DeltaExpansion>(m, "DeltaExpansion")
        .def(py::init<double>(), py::arg("Q"))
        .def_property_readonly("Q", &DeltaExpansion::Q)
        .def("ramanujan_sum", &DeltaExpansion::ramanujan_sum, py::arg("q"), py::arg("n"))
        .def("evaluate",
             [](const DeltaExpansion& e, int64_t n) { return evaluate_delta(e, n); },
             py::arg("n"), "divisor-sum expansion of [n == 0]; exact for |n| <= 2 Q^2")
        .def("weight",
             [](const DeltaExpansion& e, const std::vector<double>& x, int64_t q) {
                 std::vector<double> out;
                 out.reserve(x.size());
                 for (const cplx& v : g_weight(e, q, x)) out.push_back(v.real());
                 return out;
             },
             py::arg("x"), py::arg("q") = 1,
             "frequency weight g on a grid (real; independent of q)");

    m.def("gamma_factor",
          [](int d, cplx s, int delta0) {
              GammaData g{d, {}, delta0};
              return gamma_factor(g, s);
          },
          py::arg("d"), py::arg("s"), py::arg("delta0") = 0,
          "degree-d functional equation factor with trivial spectral data");
    m.def("zeta", &zeta_em, py::arg("s"),
          "Euler-Maclaurin zeta, Re s > -4, s != 1");

    m.def("compute_B",
          [](const CoefficientTable& t1, const CoefficientTable& t2, int64_t N,
             int64_t H, const std::string& smoothing, const std::string& method) {
              ShiftedSumSpec spec{&t1, &t2, N, H, parse_smoothing(smoothing)};
              return compute_B(spec, parse_method(method));
          },
          py::arg("t1"), py::arg("t2"), py::arg("N"), py::arg("H"),
          py::arg("smoothing") = "smooth", py::arg("method") = "fft",
          "shift-averaged correlation sum over n ~ N, h ~ H");

    m.def("exponent_bounds",
          [](int d1, int d2, double theta) {
              const ExponentBounds b = exponent_bounds(d1, d2, theta);
              py::dict out;
              out["equal_degree"] = b.equal_degree;
              out["cross_degree"] = b.cross_degree;
              out["partial_sum"] = b.partial_sum;
              out["trivial"] = b.trivial;
              out["threshold_equal"] = b.threshold_equal;
              out["threshold_cross"] = b.threshold_cross;
              out["threshold_partial"] = b.threshold_partial;
              return out;
          },
          py::arg("d1"), py::arg("d2"), py::arg("theta"),
          "predicted growth exponents of the correlation sum under H = N^theta");

    m.def("dual_sum_check",
          [](const CoefficientTable& t, int64_t N, double H, double x, int d) {
              const DualSumParams p = make_dual_params(N, H, x, d);
              const DualSumReport r = dual_sum_check(t, p);
              py::dict out;
              out["lhs"] = r.lhs;
              out["rhs"] = r.rhs;
              out["kappa"] = r.kappa;
              out["rel_err"] = r.rel_err;
              out["dual_lo"] = r.dual_lo;
              out["dual_hi"] = r.dual_hi;
              out["dual_terms"] = r.dual_terms;
              return out;
          },
          py::arg("table"), py::arg("N"), py::arg("H"), py::arg("x"), py::arg("d"),
          "compare the twisted smooth sum against its dual-range expansion");

    m.def("exponent_scan",
          [](const CoefficientTable& t1, const CoefficientTable& t2, double theta,
             const std::vector<int64_t>& N_grid) {
              const ExponentScan s = exponent_scan(t1, t2, theta, N_grid);
              py::list rows;
              for (const ScanRow& r : s.rows) {
                  py::dict row;
                  row["N"] = r.N;
                  row["H"] = r.H;
                  row["B_sharp"] = r.B_sharp;
                  row["B_smooth"] = r.B_smooth;
                  row["excluded"] = r.excluded;
                  rows.append(row);
              }
              py::dict out;
              out["theta"] = s.theta;
              out["slope"] = s.fit.slope;
              out["intercept"] = s.fit.intercept;
              out["r2"] = s.fit.r2;
              out["rows"] = rows;
              return out;
          },
          py::arg("t1"), py::arg("t2"), py::arg("theta"), py::arg("N_grid"),
          "sweep N with H = floor(N^theta) and fit log|B| against log N");
}
