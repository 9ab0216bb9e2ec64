#include "shiftconv/delta_method.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shiftconv/quadrature.hpp"

namespace shiftconv {

// ---------------------------------------------------------------------------
// bump
// ---------------------------------------------------------------------------

double BumpW::value(double v) const {
    return norm * psi_bump((v / Q - 1.3) / 0.3);
}

double BumpW::sum_over_integers() const {
    double s = 0.0;
    const int64_t lo = static_cast<int64_t>(std::floor(Q)) + 1;
    const int64_t hi = static_cast<int64_t>(std::ceil(1.6 * Q));
    for (int64_t r = lo; r <= hi; ++r) s += value(static_cast<double>(r));
    return s;
}

double BumpW::mass() const {
    // int w dv = norm * 0.3 Q * int psi
    return norm * 0.3 * Q * psi_bump_mass;
}

double BumpW::log_mass() const {
    // int w(v)/v dv, 1e4-panel Simpson on the support (smooth integrand)
    const double a = Q, b = 1.6 * Q;
    const int n = 10000;
    const double h = (b - a) / n;
    double s = value(a) / a + value(b) / b;
    for (int i = 1; i < n; ++i) {
        const double v = a + h * i;
        s += (i % 2 ? 4.0 : 2.0) * value(v) / v;
    }
    return s * h / 3.0;
}

BumpW make_bump_w(double Q) {
    if (!(Q >= 2.0)) throw config_error("make_bump_w: need Q >= 2");
    BumpW w{Q, 1.0};
    const double s = w.sum_over_integers();
    if (!(s > 0.0)) throw config_error("make_bump_w: no integer mass in support");
    w.norm = 1.0 / s;
    return w;
}

// ---------------------------------------------------------------------------
// expansion
// ---------------------------------------------------------------------------

DeltaExpansion::DeltaExpansion(double Q) : Q_(Q), w_(make_bump_w(Q)) {}

int64_t DeltaExpansion::r_cap(int64_t q) const {
    return static_cast<int64_t>(std::ceil(4.0 * Q_ * Q_ / static_cast<double>(q)))
         + 2 * static_cast<int64_t>(std::llround(Q_));
}

int64_t DeltaExpansion::q_cap(double u) const {
    const double band1 = 1.6 * Q_;
    const double band2 = std::abs(u) / Q_;
    return static_cast<int64_t>(std::floor(std::max(band1, band2))) + 1;
}

void DeltaExpansion::ensure_sieves(int64_t upto) const {
    if (static_cast<int64_t>(mu_.size()) > upto) return;
    const size_t n = static_cast<size_t>(upto) + 1;
    mu_.assign(n, 0);
    phi_.assign(n, 0);
    std::vector<int64_t> primes;
    std::vector<char> comp(n, 0);
    if (upto >= 1) { mu_[1] = 1; phi_[1] = 1; }
    for (int64_t i = 2; i <= upto; ++i) {
        if (!comp[static_cast<size_t>(i)]) {
            primes.push_back(i);
            mu_[static_cast<size_t>(i)] = -1;
            phi_[static_cast<size_t>(i)] = i - 1;
        }
        for (int64_t p : primes) {
            if (p > upto / i) break;
            comp[static_cast<size_t>(p * i)] = 1;
            if (i % p == 0) {
                mu_[static_cast<size_t>(p * i)] = 0;
                phi_[static_cast<size_t>(p * i)] = phi_[static_cast<size_t>(i)] * p;
                break;
            }
            mu_[static_cast<size_t>(p * i)] = -mu_[static_cast<size_t>(i)];
            phi_[static_cast<size_t>(p * i)] = phi_[static_cast<size_t>(i)] * (p - 1);
        }
    }
}

int64_t DeltaExpansion::ramanujan_sum(int64_t q, int64_t n) const {
    if (q < 1) throw config_error("ramanujan_sum: need q >= 1");
    ensure_sieves(q);
    const int64_t g = n == 0 ? q : std::gcd(q, std::abs(n));
    const int64_t qg = q / g;
    if (mu_[static_cast<size_t>(qg)] == 0) return 0;
    return mu_[static_cast<size_t>(qg)] * (phi_[static_cast<size_t>(q)] / phi_[static_cast<size_t>(qg)]);
}

// ---------------------------------------------------------------------------
// D_q and the delta evaluation
// ---------------------------------------------------------------------------

double delta_q(const DeltaExpansion& exp, int64_t q, double u, bool* truncated) {
    if (q < 1) throw config_error("delta_q: need q >= 1");
    if (truncated) *truncated = false;
    const BumpW& w = exp.bump();
    const double Q = exp.Q();
    const double qd = static_cast<double>(q);

    double s = 0.0;
    // first band: qr inside the bump support
    {
        const int64_t rlo = static_cast<int64_t>(std::floor(Q / qd)) + 1;
        const int64_t rhi = static_cast<int64_t>(std::ceil(1.6 * Q / qd));
        for (int64_t r = std::max<int64_t>(rlo, 1); r <= rhi; ++r) {
            const double c = qd * static_cast<double>(r);
            s += w.value(c) / c;
        }
    }
    // second band: |u|/(qr) inside the support
    const double au = std::abs(u);
    if (au > 0.0) {
        int64_t rlo = static_cast<int64_t>(std::floor(au / (1.6 * Q * qd))) + 1;
        int64_t rhi = static_cast<int64_t>(std::ceil(au / (Q * qd)));
        rlo = std::max<int64_t>(rlo, 1);
        const int64_t cap = exp.r_cap(q);
        if (rhi > cap) {
            rhi = cap;
            if (truncated) *truncated = true;
        }
        for (int64_t r = rlo; r <= rhi; ++r) {
            const double c = qd * static_cast<double>(r);
            s -= w.value(au / c) / c;
        }
    }
    return s;
}

double evaluate_delta(const DeltaExpansion& exp, int64_t n) {
    const int64_t qmax = exp.q_cap(static_cast<double>(n));
    double s = 0.0;
    for (int64_t q = 1; q <= qmax; ++q) {
        const int64_t cq = exp.ramanujan_sum(q, n);
        if (cq == 0) continue;
        s += static_cast<double>(cq) * delta_q(exp, q, static_cast<double>(n));
    }
    return s;
}

// ---------------------------------------------------------------------------
// frequency weight
// ---------------------------------------------------------------------------

namespace {

double g_weight_value(const BumpW& w, double Q, double x) {
    const double I0 = w.mass();
    const double ax = std::abs(x);
    if (ax == 0.0) return I0;
    double s = 0.0;
    const int64_t mlo = static_cast<int64_t>(std::floor(ax)) + 1;
    const int64_t mhi = static_cast<int64_t>(std::ceil(1.6 * ax));
    for (int64_t m = std::max<int64_t>(mlo, 1); m <= mhi; ++m)
        s += w.value(static_cast<double>(m) * Q / ax);
    return I0 - (Q / ax) * s;
}

} // namespace

std::vector<cplx> g_weight(const DeltaExpansion& exp, int64_t q,
                           const std::vector<double>& x_grid) {
    if (q < 1) throw config_error("g_weight: need q >= 1");
    std::vector<cplx> out;
    out.reserve(x_grid.size());
    for (double x : x_grid)
        out.emplace_back(g_weight_value(exp.bump(), exp.Q(), x), 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// packaged form
// ---------------------------------------------------------------------------

B0FormReport b0_form_check(const DeltaExpansion& exp, double eps,
                           const std::vector<int64_t>& n_list,
                           double grid_step) {
    if (!(eps > 0.0)) throw config_error("b0_form_check: need eps > 0");
    if (!(grid_step > 0.0)) throw config_error("b0_form_check: need grid_step > 0");
    const double Q = exp.Q();
    const BumpW& w = exp.bump();
    const double P = std::pow(Q, eps);
    const SmoothWindow b0 = SmoothWindow::plateau_B0(P);

    // even integrand: sample g * B0 once on [0, 2P]
    int64_t M = static_cast<int64_t>(std::ceil(2.0 * P / grid_step));
    if (M % 2) ++M;
    const double h = 2.0 * P / static_cast<double>(M);
    std::vector<double> gb(static_cast<size_t>(M) + 1);
    for (int64_t i = 0; i <= M; ++i) {
        const double x = h * static_cast<double>(i);
        gb[static_cast<size_t>(i)] = g_weight_value(w, Q, x) * b0.value(x);
    }

    const int64_t qcap = static_cast<int64_t>(std::floor(2.0 * Q));
    const double Jw = w.log_mass();
    std::vector<double> Tq(static_cast<size_t>(qcap) + 1, 0.0);
    for (int64_t q = 1; q <= qcap; ++q) {
        double cq_sum = 0.0;  // C_q = sum_r w(qr)/(qr)
        const int64_t rlo = static_cast<int64_t>(std::floor(Q / static_cast<double>(q))) + 1;
        const int64_t rhi = static_cast<int64_t>(std::ceil(1.6 * Q / static_cast<double>(q)));
        for (int64_t r = std::max<int64_t>(rlo, 1); r <= rhi; ++r) {
            const double c = static_cast<double>(q) * static_cast<double>(r);
            cq_sum += w.value(c) / c;
        }
        Tq[static_cast<size_t>(q)] = cq_sum - Jw / static_cast<double>(q);
    }

    B0FormReport rep;
    for (int64_t n : n_list) {
        double main = 0.0;
        double atom = 0.0;
        for (int64_t q = 1; q <= qcap; ++q) {
            const int64_t cq = exp.ramanujan_sum(q, n);
            if (cq == 0) continue;
            // I(n,q) = int g(x) B0(x) e(x n / (qQ)) dx
            //        = 2 int_0^{2P} g B0 cos(2 pi x n / (qQ)) dx   (even parts)
            const double freq = 2.0 * M_PI * static_cast<double>(n) / (static_cast<double>(q) * Q);
            double simp = gb[0];  // cos(0) = 1
            for (int64_t i = 1; i < M; ++i) {
                const double x = h * static_cast<double>(i);
                simp += (i % 2 ? 4.0 : 2.0) * gb[static_cast<size_t>(i)] * std::cos(freq * x);
            }
            simp += gb[static_cast<size_t>(M)] * std::cos(freq * 2.0 * P);
            const double integral = 2.0 * simp * h / 3.0;
            main += static_cast<double>(cq) / (static_cast<double>(q) * Q) * integral;
            atom += static_cast<double>(cq) * Tq[static_cast<size_t>(q)];
        }
        const double target = n == 0 ? 1.0 : 0.0;
        rep.n.push_back(n);
        rep.packaged.push_back(main + atom);
        rep.packaged_no_atom.push_back(main);
        rep.target.push_back(target);
        rep.max_residual = std::max(rep.max_residual, std::abs(main + atom - target));
        rep.max_residual_no_atom =
            std::max(rep.max_residual_no_atom, std::abs(main - target));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// zero-frequency leakage
// ---------------------------------------------------------------------------

ZeroFrequencyReport zero_frequency_check(double H, int64_t N, int64_t q, double x) {
    if (!(H >= 1.0)) throw config_error("zero_frequency_check: need H >= 1");
    if (N < 4) throw config_error("zero_frequency_check: need N >= 4");
    if (q < 1) throw config_error("zero_frequency_check: need q >= 1");

    const double Q = 2.0 * std::ceil(std::sqrt(static_cast<double>(N)));
    const SmoothWindow W = SmoothWindow::bump_W();

    auto what_abs = [&](double nu) {
        auto g = [&](double t) -> cplx {
            return W.value(t) * std::polar(1.0, -2.0 * M_PI * nu * t);
        };
        const double mw = std::min(0.25, 1.0 / (4.0 * std::max(std::abs(nu), 1e-300)));
        return std::abs(integrate_panels(g, 1.0, 2.0, mw, 1e-12).value);
    };

    ZeroFrequencyReport rep;
    const double nu0 = x * H / (static_cast<double>(q) * Q);
    rep.main_abs = what_abs(nu0);
    double worst = 0.0;
    for (int h = -50; h <= 50; ++h) {
        if (h == 0) continue;
        const double nu = nu0 + static_cast<double>(h) * H / static_cast<double>(q);
        const double a = what_abs(nu);
        rep.alias_sum += a;
        if (a > worst) {
            worst = a;
            rep.worst_alias_freq = nu;
        }
    }
    rep.ratio = rep.main_abs > 0.0 ? rep.alias_sum / rep.main_abs : HUGE_VAL;
    rep.constraint_met = H >= std::pow(static_cast<double>(N), 0.51);
    return rep;
}

} // namespace shiftconv
