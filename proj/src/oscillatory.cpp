#include "shiftconv/oscillatory.hpp"

#include <algorithm>
#include <cmath>

namespace shiftconv {

// ---------------------------------------------------------------------------
// stationary point location
// ---------------------------------------------------------------------------

std::vector<StationaryPoint> find_stationary(const Phase& f, double a, double b) {
    if (!(b > a)) throw config_error("find_stationary: empty interval");
    const int n = 10000;
    std::vector<double> fp(n + 1);
    double scale = 1.0;
    for (int i = 0; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        fp[i] = f.df(x);
        scale = std::max(scale, std::abs(fp[i]));
    }
    const double tol = 1e-12 * scale;

    std::vector<StationaryPoint> out;
    auto push_root = [&](double x0) {
        // Newton polish; fall back to the bisected value if the second
        // derivative is unusable
        for (int it = 0; it < 60; ++it) {
            const double d1 = f.df(x0), d2 = f.d2f(x0);
            if (std::abs(d1) < tol) break;
            if (d2 == 0.0) break;
            const double step = d1 / d2;
            const double xn = x0 - step;
            if (!(xn > a) || !(xn < b)) break;
            x0 = xn;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x0))) break;
        }
        const double d2 = f.d2f(x0);
        const double curv_floor = 1e-10 * scale / std::max(b - a, 1e-300);
        if (std::abs(d2) <= curv_floor)
            throw domain_error("find_stationary: degenerate stationary point (f'' ~ 0)");
        for (const auto& sp : out)
            if (std::abs(sp.x0 - x0) < (b - a) * 1e-9) return;  // duplicate from adjacent cells
        out.push_back({x0, d2});
    };

    for (int i = 0; i < n; ++i) {
        const double xl = a + (b - a) * i / n;
        const double xr = a + (b - a) * (i + 1) / n;
        if (fp[i] == 0.0 && std::abs(fp[i + 1]) > 0.0) { push_root(xl); continue; }
        if (!(fp[i] * fp[i + 1] < 0.0)) continue;
        // bisection to ~1e-14 relative
        double lo = xl, hi = xr, flo = fp[i];
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f.df(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if (flo * fm < 0.0) hi = mid;
            else { lo = mid; flo = fm; }
        }
        push_root(0.5 * (lo + hi));
    }
    if (fp[n] == 0.0 && (out.empty() || std::abs(out.back().x0 - b) > (b - a) * 1e-9))
        push_root(b);  // exact root on the right endpoint
    return out;
}

// ---------------------------------------------------------------------------
// stationary phase main terms
// ---------------------------------------------------------------------------

cplx stationary_phase_main(const SmoothWindow& w, const Phase& f,
                           const StationaryPoint& sp, int order,
                           bool* boundary_warn) {
    if (order != 0 && order != 1)
        throw config_error("stationary_phase_main: order must be 0 or 1");
    const double a = w.support_a(), b = w.support_b();
    if (boundary_warn) {
        const double margin = 1e-3 * (b - a);
        *boundary_warn = (sp.x0 - a < margin) || (b - sp.x0 < margin);
    }
    if (sp.f2 == 0.0)
        throw domain_error("stationary_phase_main: degenerate stationary point");

    const double s = sp.f2 > 0.0 ? 1.0 : -1.0;
    const cplx frame = std::polar(1.0, 2.0 * M_PI * f.f(sp.x0) + s * M_PI / 4.0)
                     / std::sqrt(std::abs(sp.f2));
    cplx bracket{w.value(sp.x0), 0.0};
    if (order == 1) {
        const double w2 = w.deriv(sp.x0, 2);
        bracket += cplx{0.0, s * w2 / (4.0 * M_PI * std::abs(sp.f2))};
    }
    return frame * bracket;
}

// ---------------------------------------------------------------------------
// nonstationary regime
// ---------------------------------------------------------------------------

NonstationaryReport nonstationary_bound_check(const SmoothWindow& w, const Phase& f,
                                              double tol) {
    const double a = w.support_a(), b = w.support_b();
    double min_slope = HUGE_VAL;
    const int n = 8192;
    for (int i = 0; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        min_slope = std::min(min_slope, std::abs(f.df(x)));
    }
    if (!(min_slope > 0.0))
        throw domain_error("nonstationary_bound_check: phase has a stationary point in support");

    NonstationaryReport rep;
    rep.min_slope = min_slope;
    rep.bound = w.variation() / min_slope;
    rep.integral = integrate_direct(w, f, tol).value;
    rep.within = std::abs(rep.integral) <= rep.bound;
    return rep;
}

} // namespace shiftconv
