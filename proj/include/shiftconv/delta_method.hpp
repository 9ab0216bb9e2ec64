#pragma once
//
// Divisor-sum expansion of the Kronecker delta
//
// Choose a smooth bump w supported in [Q, 1.6 Q] normalized so that
// sum_{r>=1} w(r) = 1.  For every integer n,
//
//      delta(n = 0) = sum_{q>=1} c_q(n) D_q(n),
//      D_q(u) = sum_{r>=1} (qr)^{-1} [ w(qr) - w(|u|/(qr)) ],
//
// with c_q the Ramanujan sum.  Grouping c = qr and using
// sum_{q | c} c_q(n) = c [c | n] shows the identity is EXACT whenever every
// divisor of |n| below max(1.6 Q, |n|/Q) is reached, in particular for all
// |n| <= 2 Q^2 once q runs to that cap.
//
// The frequency profile of D_q is the weight
//
//      g(x) = I0 - (Q/|x|) sum_{m>=1} w(m Q / |x|),      I0 = int w,
//
// obtained by Poisson summation; it is independent of q, identically I0 on
// |x| < 0.625 (no integer m falls in [|x|, 1.6|x|]), and decays once the
// sampling step Q/|x| drops below the bump's smoothness scale.  D_q itself
// tends to the constant T_q = C_q - J_w / q at large |u| (C_q the first
// band sum, J_w = int w(v)/v dv), so the transform pair carries a DC atom:
// reconstructions from g alone are biased by sum_q c_q(n) T_q, a roughly
// 5% effect that the packaged-form check below accounts for explicitly.
//

#include <complex>
#include <cstdint>
#include <vector>

#include "shiftconv/errors.hpp"
#include "shiftconv/windows.hpp"

namespace shiftconv {

using cplx = std::complex<double>;

// --------------------------------------------------------------------------
// normalized bump
// --------------------------------------------------------------------------

struct BumpW {
    double Q = 0.0;
    double norm = 0.0;   // w(v) = norm * psi((v/Q - 1.3) / 0.3)

    double value(double v) const;
    double support_lo() const { return Q; }
    double support_hi() const { return 1.6 * Q; }
    double sum_over_integers() const;   // == 1 by construction
    double mass() const;                // I0 = int w dv
    double log_mass() const;            // J_w = int w(v)/v dv
};

// Q >= 2 so the support contains at least one integer.
BumpW make_bump_w(double Q);

// --------------------------------------------------------------------------
// expansion state
// --------------------------------------------------------------------------

class DeltaExpansion {
public:
    explicit DeltaExpansion(double Q);

    double Q() const { return Q_; }
    const BumpW& bump() const { return w_; }

    // residue-sum truncation cap for the second band
    int64_t r_cap(int64_t q) const;

    // smallest q cap making the expansion exact at frequency u
    int64_t q_cap(double u) const;

    // Ramanujan sum c_q(n) = mu(q/g) phi(q) / phi(q/g), g = gcd(q, |n|)
    int64_t ramanujan_sum(int64_t q, int64_t n) const;

private:
    double Q_;
    BumpW w_;
    mutable std::vector<int16_t> mu_;
    mutable std::vector<int64_t> phi_;
    void ensure_sieves(int64_t upto) const;
};

// D_q(u); sets *truncated when the residue sum was cut at r_cap
double delta_q(const DeltaExpansion& exp, int64_t q, double u,
               bool* truncated = nullptr);

// sum_{q <= q_cap} c_q(n) D_q(n); equals [n == 0] exactly for |n| <= 2 Q^2
double evaluate_delta(const DeltaExpansion& exp, int64_t n);

// Frequency weight g on a grid (independent of q; the argument is kept so
// call sites read like the two-variable object they approximate).  Purely
// real; returned complex for interface uniformity with the transforms.
std::vector<cplx> g_weight(const DeltaExpansion& exp, int64_t q,
                           const std::vector<double>& x_grid);

// --------------------------------------------------------------------------
// packaged-form residual
// --------------------------------------------------------------------------

// Reconstruct delta(n) from the frequency side: a plateau window B0 of
// half-width Q^eps truncates the x-integral, and the DC atom
// sum_q c_q(n) T_q is restored separately.  Reports the residual with and
// without the atom so the constant bias of the plain form is visible.
struct B0FormReport {
    std::vector<int64_t> n;
    std::vector<double> packaged;          // atom included
    std::vector<double> packaged_no_atom;
    std::vector<double> target;            // [n == 0]
    double max_residual = 0.0;             // with atom
    double max_residual_no_atom = 0.0;
};

B0FormReport b0_form_check(const DeltaExpansion& exp, double eps,
                           const std::vector<int64_t>& n_list,
                           double grid_step = 0.02);

// --------------------------------------------------------------------------
// zero-frequency leakage
// --------------------------------------------------------------------------

// After averaging e(xh H/(qQ)) e(h a/q) over shifts h ~ H, the h-sum
// concentrates on the frequency nu_0 = x H/(qQ) with aliases at
// nu_h = nu_0 + h H/q.  This check compares the alias mass against the
// main term through the transform of the shift window W:
//
//      ratio = sum_{0 < |h| <= 50} |What(nu_0 + h H/q)| / |What(nu_0)|.
//
// The aliases are negligible only when H/q is large, i.e. H well above
// sqrt(N) ~ q; constraint_met records whether H >= N^{0.51} held (the
// regime the asymptotic analysis assumes), and is reported rather than
// enforced so out-of-regime configurations can be measured.
struct ZeroFrequencyReport {
    double main_abs = 0.0;        // |What(nu_0)|
    double alias_sum = 0.0;       // sum over 0 < |h| <= 50
    double ratio = 0.0;
    double worst_alias_freq = 0.0;
    bool constraint_met = false;  // H >= N^{0.51}
};

ZeroFrequencyReport zero_frequency_check(double H, int64_t N, int64_t q, double x);

} // namespace shiftconv
