#include "shiftconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "shiftconv/errors.hpp"

namespace shiftconv {

// ---------------------------------------------------------------------------
// 7/15 Gauss-Kronrod pair on [-1, 1]
// ---------------------------------------------------------------------------

namespace {

// Kronrod abscissae (positive half, including 0) and weights; the Gauss-7
// rule reuses the odd-indexed abscissae.
constexpr int kK = 8;
constexpr double kx[kK] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kw[kK] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double gw[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEval {
    cplx k15;
    cplx g7;
    double err;
};

PanelEval eval_panel(const std::function<cplx(double)>& g, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    cplx k15{0.0, 0.0}, g7{0.0, 0.0};
    for (int i = 0; i < kK; ++i) {
        cplx s;
        if (i == kK - 1) {
            s = g(c);
        } else {
            s = g(c - h * kx[i]) + g(c + h * kx[i]);
        }
        k15 += kw[i] * s;
        if (i % 2 == 1) g7 += gw[i / 2] * s;  // odd Kronrod indices are the Gauss nodes
    }
    k15 *= h;
    g7 *= h;
    return {k15, g7, std::abs(k15 - g7)};
}

} // namespace

// ---------------------------------------------------------------------------
// adaptive driver
// ---------------------------------------------------------------------------

QuadResult integrate_panels(const std::function<cplx(double)>& g, double a, double b,
                            double max_width, double tol, int64_t panel_budget) {
    if (!(std::isfinite(a) && std::isfinite(b) && b > a))
        throw config_error("integrate_panels: need finite bounds with a < b");
    if (!(max_width > 0.0))
        throw config_error("integrate_panels: max_width must be positive");
    if (!(tol > 0.0))
        throw config_error("integrate_panels: tol must be positive");
    if (panel_budget < 1)
        throw config_error("integrate_panels: panel budget must be positive");
    QuadResult out;
    const double span = b - a;
    const double min_width = span * 1e-13;
    const double per_len = tol / span;  // error allowance per unit length

    // Depth-first, left-to-right: a stack of pending panels with the
    // rightmost work deepest, so the next panel popped is always the
    // leftmost outstanding one.
    struct Pending { double a, b; };
    std::vector<Pending> stack;
    const int n0 = std::max<int>(1, static_cast<int>(std::ceil(span / max_width)));
    for (int i = n0; i-- > 0;) {
        const double pa = a + span * i / n0;
        const double pb = a + span * (i + 1) / n0;
        stack.push_back({pa, i + 1 == n0 ? b : pb});
    }

    int64_t used = 0;
    while (!stack.empty()) {
        const Pending p = stack.back();
        stack.pop_back();
        if (++used > panel_budget) {
            // flush remaining panels into the estimate at face value
            out.converged = false;
            {
                const PanelEval pe = eval_panel(g, p.a, p.b);
                out.value += pe.k15;
                out.err += pe.err;
            }
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                const PanelEval pe = eval_panel(g, it->a, it->b);
                out.value += pe.k15;
                out.err += pe.err;
            }
            throw numeric_error("quadrature: panel budget exhausted",
                                out.value.real(), out.value.imag(), out.err);
        }
        const PanelEval pe = eval_panel(g, p.a, p.b);
        const double width = p.b - p.a;
        if (pe.err <= per_len * width || width <= min_width) {
            out.value += pe.k15;
            out.err += pe.err;
            out.panels += 1;
        } else {
            const double m = 0.5 * (p.a + p.b);
            stack.push_back({m, p.b});
            stack.push_back({p.a, m});
        }
    }
    return out;
}

QuadResult integrate_direct(const SmoothWindow& w, const Phase& f, double tol,
                            int64_t panel_budget) {
    const double a = w.support_a(), b = w.support_b();
    if (!(b > a)) return {};

    // sup |f'| over the support, sampled densely; the phase families in use
    // are monotone or unimodal in f' so 4097 samples bound the sup well
    double fp_max = 0.0;
    const int ns = 4096;
    for (int i = 0; i <= ns; ++i) {
        const double x = a + (b - a) * i / ns;
        fp_max = std::max(fp_max, std::abs(f.df(x)));
    }
    const double max_width = std::min(0.25, 1.0 / (4.0 * std::max(fp_max, 1e-300)));

    auto g = [&](double x) -> cplx {
        const double wx = w.value(x);
        if (wx == 0.0) return {0.0, 0.0};
        return wx * std::polar(1.0, 2.0 * M_PI * f.f(x));
    };
    return integrate_panels(g, a, b, max_width, tol, panel_budget);
}

} // namespace shiftconv
