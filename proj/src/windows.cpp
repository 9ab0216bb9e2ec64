#include "shiftconv/windows.hpp"
#include "shiftconv/errors.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace shiftconv {

// ----------------------------------------------------------------------
// psi and its derivatives.
//
// With s = 1 - u^2, psi = exp(-1/s) and differentiating gives
// psi^(j) = R_j(u) psi with
//
//   R_1 = -2u / s^2
//   R_2 = (6u^4 - 2) / s^4
//   R_3 = (-24u^7 - 12u^5 + 40u^3 - 12u) / s^6
//   R_4 = (120u^10 + 180u^8 - 528u^6 + 232u^4 + 24u^2 - 12) / s^8
//
// (generated symbolically, and cross-checked against finite differences in
// the unit tests).  Near |u| = 1 the exponential underflows to exactly 0
// before the rational factor can overflow, so the products stay finite; the
// explicit guard below only has to handle the boundary itself.
// ----------------------------------------------------------------------

double psi_bump(double u) {
    const double s = 1.0 - u * u;
    if (s <= 1e-14) return 0.0;
    return std::exp(-1.0 / s);
}

double psi_bump_deriv(double u, int order) {
    if (order == 0) return psi_bump(u);
    const double s = 1.0 - u * u;
    if (s <= 1e-12) return 0.0;
    const double p = std::exp(-1.0 / s);
    if (p == 0.0) return 0.0;
    const double u2 = u * u;
    switch (order) {
        case 1:
            return -2.0 * u / (s * s) * p;
        case 2:
            return (6.0 * u2 * u2 - 2.0) / std::pow(s, 4) * p;
        case 3: {
            const double num = ((-24.0 * u2 - 12.0) * u2 + 40.0) * u2 - 12.0;
            return num * u / std::pow(s, 6) * p;
        }
        case 4: {
            const double num = ((((120.0 * u2 + 180.0) * u2 - 528.0) * u2 + 232.0) * u2
                                + 24.0) * u2 - 12.0;
            return num / std::pow(s, 8) * p;
        }
        default:
            throw config_error("psi_bump_deriv: order must be 0..4");
    }
}

// ----------------------------------------------------------------------
// smoothstep: cumulative integral of psi, normalized to [0,1].
//
// A cumulative Simpson table over 4096 cells is built once; inside each cell
// the value is corrected by cubic Hermite interpolation with the exact
// endpoint derivatives psi(t)/mass, which brings the absolute error to
// ~1e-13 (the table spacing is 2/4096 and the error term is O(h^4)).
// ----------------------------------------------------------------------

namespace {

constexpr int kStepCells = 4096;

const std::vector<double>& step_table() {
    static std::vector<double> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        table.resize(kStepCells + 1);
        table[0] = 0.0;
        const double h = 2.0 / kStepCells;
        double acc = 0.0;
        for (int i = 0; i < kStepCells; ++i) {
            const double t0 = -1.0 + i * h;
            // Simpson on the cell with two subdivisions
            const double m1 = t0 + 0.25 * h, mm = t0 + 0.5 * h, m2 = t0 + 0.75 * h;
            acc += h / 12.0 * (psi_bump(t0) + 4.0 * psi_bump(m1) + 2.0 * psi_bump(mm)
                               + 4.0 * psi_bump(m2) + psi_bump(t0 + h));
            table[i + 1] = acc;
        }
        // renormalize so the right end is exactly the tabulated mass
        const double scale = psi_bump_mass / acc;
        for (auto& v : table) v *= scale;
    });
    return table;
}

} // namespace

double smoothstep(double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const auto& table = step_table();
    const double h = 2.0 / kStepCells;
    const double pos = (t + 1.0) / h;
    int i = static_cast<int>(pos);
    if (i >= kStepCells) i = kStepCells - 1;
    const double t0 = -1.0 + i * h;
    const double x = (t - t0) / h;                   // in [0,1]
    const double y0 = table[i], y1 = table[i + 1];
    const double d0 = psi_bump(t0) * h, d1 = psi_bump(t0 + h) * h;
    // cubic Hermite on the cell
    const double x2 = x * x, x3 = x2 * x;
    const double v = (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * d0
                   + (-2 * x3 + 3 * x2) * y1 + (x3 - x2) * d1;
    return v / psi_bump_mass;
}

double smoothstep_deriv(double t, int order) {
    if (order < 1 || order > 4)
        throw config_error("smoothstep_deriv: order must be 1..4");
    if (t <= -1.0 || t >= 1.0) return 0.0;
    return psi_bump_deriv(t, order - 1) / psi_bump_mass;
}

// ----------------------------------------------------------------------
// SmoothWindow
// ----------------------------------------------------------------------

SmoothWindow SmoothWindow::bump_V() { return SmoothWindow(WindowFamily::bump_v, 1.0, 2.0); }
SmoothWindow SmoothWindow::bump_W() { return SmoothWindow(WindowFamily::bump_w, 1.0, 2.0); }
SmoothWindow SmoothWindow::plateau_U() { return SmoothWindow(WindowFamily::plateau_u, 0.5, 2.5); }

SmoothWindow SmoothWindow::plateau_B0(double half_width) {
    if (!(half_width > 0.0))
        throw config_error("plateau_B0: half width must be positive");
    SmoothWindow w(WindowFamily::plateau_b0, -2.0 * half_width, 2.0 * half_width);
    w.plateau_half_ = half_width;
    return w;
}

SmoothWindow SmoothWindow::custom(double a, double b,
                                  std::function<double(double)> value,
                                  std::array<std::function<double(double)>, 4> derivs) {
    if (!(a < b)) throw config_error("custom window: need a < b");
    if (!value) throw config_error("custom window: value closure required");
    SmoothWindow w(WindowFamily::custom, a, b);
    w.custom_value_ = std::move(value);
    w.custom_derivs_ = std::move(derivs);
    return w;
}

double SmoothWindow::value(double x) const {
    switch (family_) {
        case WindowFamily::bump_v:
        case WindowFamily::bump_w:
            // e * psi(2x-3): peak value exactly 1 at x = 3/2
            return M_E * psi_bump(2.0 * x - 3.0);
        case WindowFamily::plateau_u:
            if (x <= 0.5 || x >= 2.5) return 0.0;
            if (x < 1.0) return smoothstep(4.0 * x - 3.0);
            if (x <= 2.0) return 1.0;
            return smoothstep(-(4.0 * x - 9.0));
        case WindowFamily::plateau_b0: {
            const double p = plateau_half_;
            const double ax = std::fabs(x);
            if (ax >= 2.0 * p) return 0.0;
            if (ax <= p) return 1.0;
            // shoulder maps [p, 2p] onto [1, -1]
            return smoothstep(-(2.0 * (ax - p) / p - 1.0));
        }
        case WindowFamily::custom:
            if (x < a_ || x > b_) return 0.0;
            return custom_value_(x);
    }
    return 0.0;
}

double SmoothWindow::deriv(double x, int order) const {
    if (order < 1 || order > 4)
        throw config_error("SmoothWindow::deriv: order must be 1..4");
    switch (family_) {
        case WindowFamily::bump_v:
        case WindowFamily::bump_w: {
            double scale = 1.0;
            for (int j = 0; j < order; ++j) scale *= 2.0;
            return M_E * scale * psi_bump_deriv(2.0 * x - 3.0, order);
        }
        case WindowFamily::plateau_u: {
            if (x <= 0.5 || x >= 2.5 || (x >= 1.0 && x <= 2.0)) return 0.0;
            double scale = 1.0;
            for (int j = 0; j < order; ++j) scale *= 4.0;
            if (x < 1.0) return scale * smoothstep_deriv(4.0 * x - 3.0, order);
            const double sgn = (order % 2 == 1) ? -1.0 : 1.0;
            return sgn * scale * smoothstep_deriv(-(4.0 * x - 9.0), order);
        }
        case WindowFamily::plateau_b0: {
            const double p = plateau_half_;
            const double ax = std::fabs(x);
            if (ax >= 2.0 * p || ax <= p) return 0.0;
            double scale = 1.0;
            for (int j = 0; j < order; ++j) scale *= 2.0 / p;
            const double t = -(2.0 * (ax - p) / p - 1.0);
            double v = smoothstep_deriv(t, order);
            // chain rule signs: d/dx (|x|) = sign(x), shoulder slope is -2/p in t
            const double inner_sgn = (x >= 0.0) ? -1.0 : 1.0;
            double sgn = 1.0;
            for (int j = 0; j < order; ++j) sgn *= inner_sgn;
            return sgn * scale * v;
        }
        case WindowFamily::custom:
            if (x < a_ || x > b_) return 0.0;
            if (!custom_derivs_[order - 1])
                throw config_error("custom window: derivative order not provided");
            return custom_derivs_[order - 1](x);
    }
    return 0.0;
}

double SmoothWindow::variation() const {
    if (variation_cache_ >= 0.0) return variation_cache_;
    // composite Simpson of |w'| over the support; windows are C-infinity so
    // the only nonsmooth points of |w'| are the sign changes, and 1<<14
    // panels put those errors far below the uses of this number
    const int n = 1 << 14;
    const double h = (b_ - a_) / n;
    auto slope = [&](double x) -> double {
        if (family_ == WindowFamily::custom && !custom_derivs_[0]) {
            const double dh = (b_ - a_) * 1e-7;
            return (value(x + dh) - value(x - dh)) / (2.0 * dh);
        }
        return deriv(x, 1);
    };
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x0 = a_ + i * h;
        acc += h / 6.0 * (std::fabs(slope(x0)) + 4.0 * std::fabs(slope(x0 + 0.5 * h))
                          + std::fabs(slope(x0 + h)));
    }
    variation_cache_ = acc;
    return acc;
}

double SmoothWindow::sup_norm() const {
    if (sup_cache_ >= 0.0) return sup_cache_;
    const int n = 1 << 12;
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = a_ + (b_ - a_) * i / n;
        m = std::max(m, std::fabs(value(x)));
    }
    sup_cache_ = m;
    return m;
}

} // namespace shiftconv
