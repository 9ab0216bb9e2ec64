#pragma once
//
// Smooth compactly supported windows.
//
// Everything is built from the single C-infinity template
//
//     psi(u) = exp(-1/(1-u^2))   on (-1,1),    0 outside,
//
// whose derivatives are psi^(j)(u) = R_j(u) * psi(u) with rational R_j.
// Four window families are provided:
//
//   bump V      on [1,2]     : V(x) = e * psi(2x-3), peak value 1 at x = 3/2
//   bump W      on [1,2]     : same shape as V, separate tag (weights shifts
//                              rather than lengths)
//   plateau U   on [1/2,5/2] : equals 1 on [1,2], smooth shoulders built from
//                              the cumulative integral of psi
//   plateau B0  on [-2P,2P]  : equals 1 on [-P,P], same shoulder construction
//
// plus fully custom windows given by closures.
//

#include <array>
#include <functional>
#include <memory>

namespace shiftconv {

// ----------------------------------------------------------------------
// template bump and its derivatives (orders 0..4)
// ----------------------------------------------------------------------
double psi_bump(double u);
double psi_bump_deriv(double u, int order);

// int_{-1}^{1} psi(u) du
inline constexpr double psi_bump_mass = 0.443993816168079437823;

// Smoothed step: S(t) = (1/psi_bump_mass) * int_{-1}^{t} psi, so S(-1) = 0,
// S(1) = 1, all derivatives vanish at both ends.  Evaluated from a cached
// cumulative table with Hermite correction (absolute error < 1e-12).
double smoothstep(double t);
double smoothstep_deriv(double t, int order); // order >= 1

enum class WindowFamily { bump_v, bump_w, plateau_u, plateau_b0, custom };

// ----------------------------------------------------------------------
// SmoothWindow
// ----------------------------------------------------------------------
class SmoothWindow {
public:
    static SmoothWindow bump_V();
    static SmoothWindow bump_W();
    static SmoothWindow plateau_U();
    // plateau equal to 1 on [-half_width, half_width], support twice as wide
    static SmoothWindow plateau_B0(double half_width);
    // custom window; derivative closures are optional (index 0 = first
    // derivative) and deriv() throws if a missing order is requested
    static SmoothWindow custom(double a, double b,
                               std::function<double(double)> value,
                               std::array<std::function<double(double)>, 4> derivs = {});

    double value(double x) const;
    double deriv(double x, int order) const;  // 1 <= order <= 4
    double support_a() const { return a_; }
    double support_b() const { return b_; }
    WindowFamily family() const { return family_; }

    // total variation int |w'| (numeric, cached on first use)
    double variation() const;
    // sup |w| over the support (numeric, cached on first use)
    double sup_norm() const;

private:
    SmoothWindow(WindowFamily f, double a, double b) : family_(f), a_(a), b_(b) {}

    WindowFamily family_;
    double a_, b_;
    double plateau_half_ = 0.0;  // plateau_b0 only
    std::function<double(double)> custom_value_;
    std::array<std::function<double(double)>, 4> custom_derivs_{};
    mutable double variation_cache_ = -1.0;
    mutable double sup_cache_ = -1.0;
};

} // namespace shiftconv
