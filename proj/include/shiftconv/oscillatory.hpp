#pragma once
//
// Stationary phase machinery for I = int w(x) e(f(x)) dx.
//
// With a single interior stationary point x0 (f'(x0) = 0, f''(x0) != 0) the
// leading behaviour is
//
//   I ~ e(f(x0)) e^{s i pi/4} / sqrt(|f''(x0)|) *
//         [ w(x0) + s i w''(x0) / (4 pi |f''(x0)|) + ... ],   s = sgn f''(x0),
//
// which this module evaluates at order 0 (first bracket term) and order 1
// (both terms).  Away from stationary points the integral obeys the first
// derivative bound |I| <= Var(w) / (2 pi min |f'|); integration by parts
// gives the sharper constant but the module asserts the conservative form
// |I| <= Var(w) / min |f'| so the check is robust to endpoint effects.
//

#include <complex>
#include <vector>

#include "shiftconv/phases.hpp"
#include "shiftconv/quadrature.hpp"
#include "shiftconv/windows.hpp"

namespace shiftconv {

struct StationaryPoint {
    double x0;   // root of f'
    double f2;   // f''(x0)
};

// Locate all simple roots of f' in [a, b] by dense scan, bisection and
// Newton polish to |f'| < 1e-12 * scale.  A root with |f''| below the
// degeneracy floor raises domain_error.
std::vector<StationaryPoint> find_stationary(const Phase& f, double a, double b);

// Leading stationary-phase term(s) at sp; order is 0 or 1.  If boundary_warn
// is non-null it is set when x0 sits within 0.1% of the window support edge
// (the expansion breaks down there).
cplx stationary_phase_main(const SmoothWindow& w, const Phase& f,
                           const StationaryPoint& sp, int order,
                           bool* boundary_warn = nullptr);

struct NonstationaryReport {
    cplx integral;
    double bound;       // Var(w) / min |f'|
    double min_slope;   // min |f'| over the support
    bool within;        // |integral| <= bound
};

// Verify the first-derivative bound on a window whose support contains no
// stationary point (min |f'| = 0 raises domain_error).
NonstationaryReport nonstationary_bound_check(const SmoothWindow& w, const Phase& f,
                                              double tol = 1e-9);

} // namespace shiftconv
