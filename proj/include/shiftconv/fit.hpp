#pragma once
//
// Small least-squares helpers: straight-line fits in log-log coordinates
// (for growth-exponent measurements) and the best unimodular factor aligning
// two complex sequences.
//

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "shiftconv/errors.hpp"

namespace shiftconv {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n != y.size() || n < 2) throw config_error("fit_line: need >= 2 paired points");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw config_error("fit_line: degenerate abscissae");
    LineFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return out;
}

// Unit-modulus kappa minimizing sum |a_i - kappa b_i|^2; the minimizer is
// the phase of <a, b> = sum a_i conj(b_i).  Returns 1 when the inner
// product vanishes (nothing to align).
inline std::complex<double> fit_unimodular(const std::vector<std::complex<double>>& a,
                                           const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size()) throw config_error("fit_unimodular: length mismatch");
    std::complex<double> ip{0.0, 0.0};
    for (size_t i = 0; i < a.size(); ++i) ip += a[i] * std::conj(b[i]);
    const double m = std::abs(ip);
    if (m == 0.0) return {1.0, 0.0};
    return ip / m;
}

} // namespace shiftconv
