#pragma once
//
// Adaptive Gauss-Kronrod quadrature for oscillatory integrals
//
//      I = int_a^b w(x) e(f(x)) dx ,   e(t) = exp(2 pi i t),
//
// over the support [a, b] of a smooth window.  The integrand is resolved by
// keeping every panel shorter than a fraction of the local oscillation
// wavelength: the initial partition enforces
//
//      width <= min(1/4, 1 / (4 sup |f'|))
//
// so each panel sees at most a quarter period, after which the embedded
// 7/15-point error estimate drives ordinary bisection refinement.  The
// evaluation order is deterministic (depth-first, left to right) so results
// are bit-stable across runs and thread counts.
//

#include <complex>
#include <cstdint>

#include "shiftconv/phases.hpp"
#include "shiftconv/windows.hpp"

namespace shiftconv {

using cplx = std::complex<double>;

struct QuadResult {
    cplx value{0.0, 0.0};
    double err = 0.0;      // accumulated error estimate
    int64_t panels = 0;    // panels accepted
    bool converged = true;
};

// Integrate w(x) e(f(x)) over the window support to absolute tolerance tol.
// Throws numeric_error carrying the best estimate if the panel budget is
// exhausted before the tolerance is met.
QuadResult integrate_direct(const SmoothWindow& w, const Phase& f, double tol,
                            int64_t panel_budget = 2000000);

// Same machinery for an arbitrary complex integrand on [a, b] (used by the
// weight-transform oracle and the Mellin window, which carry extra factors
// beyond window times phase).
QuadResult integrate_panels(const std::function<cplx(double)>& g, double a, double b,
                            double max_width, double tol,
                            int64_t panel_budget = 2000000);

} // namespace shiftconv
