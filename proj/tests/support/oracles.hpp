#pragma once
//
// Independent oracles for the unit tests.  Everything here recomputes a
// quantity the library produces, by a different algorithm: schoolbook
// integer series arithmetic, direct character sums, brute-force symmetric
// functions, and plain Simpson quadrature.  Slow is fine; different is the
// point.
//

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "shiftconv/delta_method.hpp"
#include "shiftconv/windows.hpp"

namespace oracles {

using cplx = std::complex<double>;

// ----------------------------------------------------------------------
// Coefficients of q Prod (1-q^n)^24 up to n = nmax, by plain int64 series
// arithmetic: build Prod (1-q^n) with the in-place update, then raise to
// the 24th power by schoolbook multiplication.  Coefficient growth stays
// far inside int64 for nmax <= 300.
// ----------------------------------------------------------------------
inline std::vector<long long> series_tau(int nmax) {
    const int L = nmax;  // degrees 0..L-1 of the eta-quotient part
    std::vector<long long> e(L, 0);
    e[0] = 1;
    for (int n = 1; n < L; ++n)
        for (int j = L - 1; j >= n; --j) e[j] -= e[j - n];

    auto mul = [L](const std::vector<long long>& a, const std::vector<long long>& b) {
        std::vector<long long> c(L, 0);
        for (int i = 0; i < L; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j + i < L; ++j) c[i + j] += a[i] * b[j];
        }
        return c;
    };
    std::vector<long long> p2 = mul(e, e);     // ^2
    std::vector<long long> p4 = mul(p2, p2);   // ^4
    std::vector<long long> p8 = mul(p4, p4);   // ^8
    std::vector<long long> p16 = mul(p8, p8);  // ^16
    std::vector<long long> p24 = mul(p16, p8); // ^24

    std::vector<long long> tau(static_cast<size_t>(nmax) + 1, 0);
    for (int n = 1; n <= nmax; ++n) tau[static_cast<size_t>(n)] = p24[n - 1];
    return tau;
}

// ----------------------------------------------------------------------
// Complete homogeneous symmetric polynomial h_e in the k+1 points
// exp(i (k - 2m) theta), m = 0..k, by the two-index DP
// H[m][j] = H[m-1][j] + x_m H[m][j-1].  Real part is the lifted
// prime-power coefficient.
// ----------------------------------------------------------------------
inline double sym_prime_power(double theta, int k, int e) {
    std::vector<cplx> h(static_cast<size_t>(e) + 1, cplx(0.0, 0.0));
    h[0] = 1.0;
    for (int m = 0; m <= k; ++m) {
        const cplx x = std::polar(1.0, (k - 2 * m) * theta);
        for (int j = 1; j <= e; ++j) h[static_cast<size_t>(j)] += x * h[static_cast<size_t>(j - 1)];
    }
    return h[static_cast<size_t>(e)].real();
}

// ----------------------------------------------------------------------
// Ramanujan sum by the literal definition: sum of e(an/q) over residues
// a prime to q.
// ----------------------------------------------------------------------
inline long long literal_cq(long long q, long long n) {
    cplx s(0.0, 0.0);
    for (long long a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const double arg = 2.0 * M_PI * double(a % q) * double(((n % q) + q) % q) / double(q);
        s += cplx(std::cos(arg), std::sin(arg));
    }
    return std::llround(s.real());
}

// ----------------------------------------------------------------------
// Composite Simpson for complex integrands (n must be even).
// ----------------------------------------------------------------------
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    cplx acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// ----------------------------------------------------------------------
// Frequency weight by windowed quadrature of the expansion itself:
//
//   g(x) ~ 2 int_0^U (D_q(u) - T_q) cos(2 pi x u / (q Q)) eta(u/U) du
//
// with the DC level T_q = sum_r w(qr)/(qr) - (int w/v dv)/q subtracted so
// the integrand decays, and a smooth shoulder eta cutting off the tail.
// The deviation dies off only like (qQ/u)^2, so the window has to reach
// hundreds of periods before the transform settles; sampling step q/4
// resolves every scale in the integrand.  Completely independent of the
// Poisson-summation closed form.
// ----------------------------------------------------------------------
inline double quadrature_g(const shiftconv::DeltaExpansion& exp, long long q, double x) {
    const double Q = exp.Q();
    const shiftconv::BumpW& w = exp.bump();
    double Cq = 0.0;
    for (long long r = 1; double(q) * double(r) <= w.support_hi() + 1.0; ++r)
        Cq += w.value(double(q * r)) / double(q * r);
    const double Tq = Cq - w.log_mass() / double(q);

    auto eta = [](double t) {
        if (t <= 0.5) return 1.0;
        if (t >= 1.0) return 0.0;
        return shiftconv::smoothstep(3.0 - 4.0 * t);
    };

    const double U = 256.0 * double(q) * Q;
    const double h = 0.25 * double(q);
    const int n = 2 * static_cast<int>(std::ceil(U / (2.0 * h)));
    const double step = U / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = i * step;
        const double val = (shiftconv::delta_q(exp, q, u) - Tq) *
                           std::cos(2.0 * M_PI * x * u / (double(q) * Q)) * eta(u / U);
        acc += val * ((i == 0 || i == n) ? 1.0 : (i % 2) ? 4.0 : 2.0);
    }
    return 2.0 * acc * (step / 3.0);
}

} // namespace oracles
