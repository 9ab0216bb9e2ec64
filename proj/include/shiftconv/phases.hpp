#pragma once
//
// Real phase functions f for oscillatory integrals int w(x) e(f(x)) dx,
// with e(t) = exp(2 pi i t).  A Phase carries closures for f, f', f''
// (and optionally f'''); the named constructors below cover every phase
// family the library needs:
//
//   linear_phase(l)            f = l x
//   quadratic_phase(l,c,m)     f = l (x-c)^2 + m (x-c)^3
//   log_phase(l)               f = l log x
//   linear_log_phase(a,b)      f = a x + b log x          stationary at -b/a
//   voronoi_phase(X,d)         f = (t/2pi)(log X - (d-1)(log(t/2pi) - 1))
//                              stationary at t0 = 2 pi X^{1/(d-1)}
//   power_difference_phase     f = (d1-1)(A/y)^{1/(d1-1)} - (d2-1)(B/y)^{1/(d2-1)}
//                              stationary at y0 = (B^{b}/A^{a})^{1/(b-a)} with
//                              a = 1/(d1-1), b = 1/(d2-1)
//

#include <cmath>
#include <functional>

#include "shiftconv/errors.hpp"

namespace shiftconv {

struct Phase {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    std::function<double(double)> d3f;  // optional
};

inline Phase linear_phase(double l) {
    return Phase{
        [l](double x) { return l * x; },
        [l](double) { return l; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
    };
}

inline Phase quadratic_phase(double l, double c, double m = 0.0) {
    return Phase{
        [l, c, m](double x) { const double t = x - c; return (l + m * t) * t * t; },
        [l, c, m](double x) { const double t = x - c; return 2.0 * l * t + 3.0 * m * t * t; },
        [l, c, m](double x) { return 2.0 * l + 6.0 * m * (x - c); },
        [m](double) { return 6.0 * m; },
    };
}

inline Phase log_phase(double l) {
    return Phase{
        [l](double x) { return l * std::log(x); },
        [l](double x) { return l / x; },
        [l](double x) { return -l / (x * x); },
        [l](double x) { return 2.0 * l / (x * x * x); },
    };
}

inline Phase linear_log_phase(double a, double b) {
    return Phase{
        [a, b](double x) { return a * x + b * std::log(x); },
        [a, b](double x) { return a + b / x; },
        [b](double x) { return -b / (x * x); },
        [b](double x) { return 2.0 * b / (x * x * x); },
    };
}

// Phase of the dual frequency variable after the functional-equation swap:
// the weight against the oscillation e(n x / Q) turns into an integral over
// t with this phase, stationary at t0 = 2 pi X^{1/(d-1)}.
inline Phase voronoi_phase(double X, int d) {
    if (d < 2) throw domain_error("voronoi_phase: need d >= 2");
    if (!(X > 0.0)) throw domain_error("voronoi_phase: need X > 0");
    const double lx = std::log(X);
    const double dm1 = static_cast<double>(d - 1);
    const double twopi = 2.0 * M_PI;
    return Phase{
        [lx, dm1, twopi](double t) {
            return t / twopi * (lx - dm1 * (std::log(t / twopi) - 1.0));
        },
        [lx, dm1, twopi](double t) {
            return (lx - dm1 * std::log(t / twopi)) / twopi;
        },
        [dm1, twopi](double t) { return -dm1 / (twopi * t); },
        [dm1, twopi](double t) { return dm1 / (twopi * t * t); },
    };
}

// Difference of two fractional-power phases in the shift variable; shows up
// when two dual sums of different degrees meet over a common shift average.
inline Phase power_difference_phase(double A, double B, int d1, int d2) {
    if (d1 <= d2 || d2 < 2)
        throw domain_error("power_difference_phase: need d1 > d2 >= 2");
    const double a = 1.0 / (d1 - 1), b = 1.0 / (d2 - 1);
    const double Aa = std::pow(A, a), Bb = std::pow(B, b);
    const double ca = static_cast<double>(d1 - 1), cb = static_cast<double>(d2 - 1);
    return Phase{
        [=](double y) { return ca * Aa * std::pow(y, -a) - cb * Bb * std::pow(y, -b); },
        [=](double y) { return -Aa * std::pow(y, -a - 1.0) + Bb * std::pow(y, -b - 1.0); },
        [=](double y) {
            return (a + 1.0) * Aa * std::pow(y, -a - 2.0)
                 - (b + 1.0) * Bb * std::pow(y, -b - 2.0);
        },
        [=](double y) {
            return -(a + 1.0) * (a + 2.0) * Aa * std::pow(y, -a - 3.0)
                 + (b + 1.0) * (b + 2.0) * Bb * std::pow(y, -b - 3.0);
        },
    };
}

// e(f) with f negated, for conjugation checks
inline Phase negate(const Phase& p) {
    return Phase{
        [g = p.f](double x) { return -g(x); },
        [g = p.df](double x) { return -g(x); },
        [g = p.d2f](double x) { return -g(x); },
        p.d3f ? std::function<double(double)>([g = p.d3f](double x) { return -g(x); })
              : std::function<double(double)>(),
    };
}

// f plus a constant (used by the unimodular-factor linearity test)
inline Phase shift_by(const Phase& p, double c) {
    Phase out = p;
    out.f = [g = p.f, c](double x) { return g(x) + c; };
    return out;
}

} // namespace shiftconv
