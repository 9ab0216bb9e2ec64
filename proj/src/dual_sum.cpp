#include "shiftconv/dual_sum.hpp"

#include <cmath>

#include "shiftconv/quadrature.hpp"

namespace shiftconv {

DualSumParams make_dual_params(int64_t N, double H, double x, int d) {
    if (N < 4) throw config_error("make_dual_params: need N >= 4");
    if (!(H >= 1.0)) throw config_error("make_dual_params: need H >= 1");
    if (x == 0.0) throw config_error("make_dual_params: need x != 0");
    if (d < 2) throw config_error("make_dual_params: need d >= 2");
    DualSumParams p;
    p.N = N;
    p.H = H;
    p.x = x;
    p.d = d;
    p.Q = 2.0 * std::ceil(std::sqrt(static_cast<double>(N)));
    p.Ntilde = std::pow(static_cast<double>(N), d - 1) / std::pow(H, d);
    return p;
}

// ---------------------------------------------------------------------------
// Mellin-side window
// ---------------------------------------------------------------------------

cplx mellin_window(int64_t N, double x, double Q, double sigma, double tau) {
    if (N < 1) throw config_error("mellin_window: need N >= 1");
    if (!(Q > 0.0)) throw config_error("mellin_window: need Q > 0");
    const SmoothWindow V = SmoothWindow::bump_V();
    const double a = x * static_cast<double>(N) / Q;
    auto g = [&](double z) -> cplx {
        const double vz = V.value(z);
        if (vz == 0.0) return {0.0, 0.0};
        // V(z) z^{sigma-1} e(a z) z^{i tau}
        const double arg = 2.0 * M_PI * a * z + tau * std::log(z);
        return vz * std::pow(z, sigma - 1.0) * std::polar(1.0, arg);
    };
    const double sup_slope = 2.0 * M_PI * std::abs(a) + std::abs(tau);  // |d(arg)/dz| on [1,2]
    const double mw = std::min(0.25, 2.0 * M_PI / (4.0 * std::max(sup_slope, 1e-300)));
    return integrate_panels(g, 1.0, 2.0, mw, 1e-10).value;
}

// ---------------------------------------------------------------------------
// dual-side transform
// ---------------------------------------------------------------------------

namespace {

double v1_window(const SmoothWindow& V, double u) {
    if (u <= V.support_a() || u >= V.support_b()) return 0.0;
    return std::sqrt(u) * V.value(u) / std::sqrt(2.0 * M_PI);
}

} // namespace

cplx omega_transform(const DualSumParams& p, int64_t n, OmegaMode mode) {
    if (n < 1) throw config_error("omega_transform: need n >= 1");
    const double ax = std::abs(p.x);
    const double Nd = static_cast<double>(p.N);
    const double nd = static_cast<double>(n);
    const double X = p.Q * nd / ax;
    const double root = std::sqrt(Nd * nd);
    const SmoothWindow V = SmoothWindow::bump_V();
    const double u0 = std::pow(p.Q / ax, static_cast<double>(p.d) / (p.d - 1))
                    * std::pow(nd, 1.0 / (p.d - 1)) / Nd;

    if (mode == OmegaMode::closed_form) {
        if (u0 <= 1.0 || u0 >= 2.0) return {0.0, 0.0};
        const double amp = root * std::sqrt(2.0 * M_PI / (p.d - 1)) * v1_window(V, u0);
        const double phase = 2.0 * M_PI * (p.d - 1) * std::pow(X, 1.0 / (p.d - 1))
                           - M_PI / 4.0;
        return std::polar(amp, phase);
    }

    // quadrature over the tau window where V1(tau Q/(2 pi N |x|)) lives
    const double tau_scale = 2.0 * M_PI * Nd * ax / p.Q;
    const Phase g1 = voronoi_phase(X, p.d);
    auto g = [&](double tau) -> cplx {
        const double v1 = v1_window(V, tau / tau_scale);
        if (v1 == 0.0) return {0.0, 0.0};
        return v1 / std::sqrt(tau) * std::polar(1.0, 2.0 * M_PI * g1.f(tau));
    };
    double sup_slope = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double tau = tau_scale * (1.0 + i / 64.0);
        sup_slope = std::max(sup_slope, std::abs(g1.df(tau)));
    }
    const double mw = std::min(0.25 * tau_scale, 1.0 / (4.0 * std::max(sup_slope, 1e-300)));
    const QuadResult r = integrate_panels(g, tau_scale, 2.0 * tau_scale, mw,
                                          1e-9 * std::sqrt(tau_scale));
    return root * r.value;
}

// ---------------------------------------------------------------------------
// the two-sided comparison
// ---------------------------------------------------------------------------

DualSumReport dual_sum_check(const CoefficientTable& t, const DualSumParams& p) {
    if (t.size() < 2 * p.N)
        throw config_error("dual_sum_check: table must cover n <= 2N");

    const SmoothWindow V = SmoothWindow::bump_V();
    const double Nd = static_cast<double>(p.N);

    DualSumReport rep;
    cplx lhs{0.0, 0.0};
    for (int64_t n = p.N + 1; n < 2 * p.N; ++n) {
        const double vn = V.value(static_cast<double>(n) / Nd);
        if (vn == 0.0) continue;
        lhs += t.at(n) * vn
             * std::polar(1.0, 2.0 * M_PI * p.x * static_cast<double>(n) / p.Q);
    }
    rep.lhs = lhs;

    if (p.x > 0.0) {
        // the dual window is empty on this side; only exponentially small
        // tails remain, so the report carries |lhs| without a dual estimate
        rep.rhs = {0.0, 0.0};
        rep.rel_err = 1.0;
        return rep;
    }

    const double ntilde_x = std::pow(Nd, p.d - 1)
                          * std::pow(std::abs(p.x) / p.Q, p.d);
    rep.dual_lo = ntilde_x;
    rep.dual_hi = ntilde_x * std::pow(2.0, p.d - 1);
    const int64_t lo = static_cast<int64_t>(std::floor(rep.dual_lo)) + 1;
    const int64_t hi = static_cast<int64_t>(std::ceil(rep.dual_hi)) - 1;
    if (hi > t.size())
        throw config_error("dual_sum_check: table too short for the dual window (need n <= " +
                           std::to_string(hi) + ")");

    cplx rhs{0.0, 0.0};
    for (int64_t n = std::max<int64_t>(lo, 1); n <= hi; ++n) {
        const cplx om = omega_transform(p, n, OmegaMode::closed_form);
        if (om == cplx{0.0, 0.0}) continue;
        rhs += t.at(n) / static_cast<double>(n) * om;
        rep.dual_terms += 1;
    }
    rep.rhs = rhs;
    rep.kappa = fit_unimodular({lhs}, {rhs});
    const double al = std::abs(lhs);
    rep.rel_err = al > 0.0 ? std::abs(al - std::abs(rhs)) / al : HUGE_VAL;
    return rep;
}

// ---------------------------------------------------------------------------
// cross-degree stationary point
// ---------------------------------------------------------------------------

StationaryPoint cross_degree_stationary_point(double n, double m, double H,
                                              int d1, int d2) {
    if (d1 == d2) throw domain_error("cross_degree_stationary_point: d1 == d2 has no interior root");
    if (d1 < d2) throw config_error("cross_degree_stationary_point: need d1 > d2");
    if (d2 < 2) throw config_error("cross_degree_stationary_point: need d2 >= 2");
    if (!(n > 0.0) || !(m > 0.0) || !(H > 0.0))
        throw config_error("cross_degree_stationary_point: need n, m, H > 0");
    const double y0 = H * std::pow(std::pow(m, d1 - 1) / std::pow(n, d2 - 1),
                                   1.0 / (d1 - d2));
    const Phase f = power_difference_phase(H * n, H * m, d1, d2);
    return {y0, f.d2f(y0)};
}

} // namespace shiftconv
