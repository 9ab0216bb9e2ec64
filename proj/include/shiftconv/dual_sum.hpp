#pragma once
//
// Dual-sum identity machinery
//
// For a degree d coefficient sequence A, the twisted smooth sum
//
//      Xi(x) = sum_n A(n) V(n/N) e(n x / Q)
//
// is reproduced, after the functional-equation swap, by a sum over a dual
// range of length Ntilde_x = N^{d-1} (|x|/Q)^d:
//
//      Xi(x) ~ kappa sum_{n ~ Ntilde_x} (A(n)/n) Omega(n),
//
// where Omega collects the gamma-ratio oscillation.  In the range where the
// frequency weight is flat, Omega has the single-stationary-point form
//
//      Omega(n) = (N n)^{1/2} int e(g1(tau)) tau^{-1/2} V1(tau Q/(2 pi N |x|)) dtau,
//      g1(tau)  = (tau/2 pi) [ log X - (d-1)(log(tau/2 pi) - 1) ],   X = Q n / |x|,
//
// stationary at tau0 = 2 pi X^{1/(d-1)}, which collapses in closed form to
//
//      Omega_c(n) = (N n)^{1/2} sqrt(2 pi/(d-1)) V1(u0) e^{-i pi/4}
//                     e((d-1) X^{1/(d-1)}),
//      u0 = (Q/|x|)^{d/(d-1)} n^{1/(d-1)} / N,     V1(u) = sqrt(u) V(u) / sqrt(2 pi),
//
// supported on u0 in [1, 2].  Both forms are implemented; their agreement
// is itself one of the library's checks.  The identity is compared in
// modulus, with the best unimodular kappa reported, because the dropped
// lower-order archimedean terms carry a constant phase.
//

#include <complex>
#include <cstdint>

#include "shiftconv/coefficients.hpp"
#include "shiftconv/errors.hpp"
#include "shiftconv/oscillatory.hpp"

namespace shiftconv {

struct DualSumParams {
    int64_t N = 0;
    double H = 0.0;
    double x = 0.0;     // twist frequency; the dual expansion lives at x < 0
    int d = 2;
    double Q = 0.0;     // 2 ceil(sqrt(N))
    double Ntilde = 0.0;  // N^{d-1} / H^d, the dual length at |x| = Q/H
};

DualSumParams make_dual_params(int64_t N, double H, double x, int d);

// Mellin-side window integral int_1^2 V(z) z^{sigma - 1 + i tau} e(N x z / Q) dz.
// For x < 0 it has one stationary point z0 = tau Q / (2 pi N |x|) and modulus
// ~ sqrt(2 pi) V(z0) z0^sigma / sqrt(tau); for x > 0 the phase is monotone
// and the integral is negligible.
cplx mellin_window(int64_t N, double x, double Q, double sigma, double tau);

enum class OmegaMode { quadrature, closed_form };

// The dual-side transform Omega(n) described above.  closed_form returns 0
// outside u0 in [1, 2] (the stationary point leaves the window and only
// negligible tails remain).
cplx omega_transform(const DualSumParams& p, int64_t n, OmegaMode mode);

struct DualSumReport {
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    cplx kappa{1.0, 0.0};   // best unimodular alignment rhs -> lhs
    double rel_err = 0.0;   // | |lhs| - |rhs| | / |lhs|
    double dual_lo = 0.0;   // dual n-window (open interval)
    double dual_hi = 0.0;
    int64_t dual_terms = 0;
};

// Evaluate both sides.  For x > 0 the dual side is empty: rhs = 0 and the
// report simply carries |lhs| for inspection.
DualSumReport dual_sum_check(const CoefficientTable& t, const DualSumParams& p);

// Stationary point of the cross-degree shift phase
//   f(y) = (d1-1)(H n / y)^{1/(d1-1)} - (d2-1)(H m / y)^{1/(d2-1)},
// at y0 = H (m^{d1-1} / n^{d2-1})^{1/(d1-d2)}; requires d1 > d2 >= 2.
StationaryPoint cross_degree_stationary_point(double n, double m, double H,
                                              int d1, int d2);

} // namespace shiftconv
