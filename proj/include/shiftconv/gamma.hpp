#pragma once
//
// Gamma factor of a degree d functional equation and its Stirling profile
//
// For spectral data (alpha_1..alpha_d, delta0) the completed-to-dual ratio
// is
//
//   gamma(s) = i^{-d delta0} pi^{-d(1/2 - s)}
//              prod_j Gamma((1 - s + delta0 - conj(alpha_j)) / 2)
//                   / Gamma((s + delta0 - alpha_j) / 2),
//
// evaluated in log space so moderate degrees and |Im s| up to a few hundred
// stay in range.  With all alpha = 0, delta0 = 0 this is the d-th power of
// the zeta factor: gamma(1/2) = 1 exactly and |gamma(1/2 + i tau)| = 1.
//
// On the critical line the single ratio R(tau) = Gamma((1/2 - i tau)/2) /
// Gamma((1/2 + i tau)/2) obeys R ~ (tau/2e)^{-i tau} e^{i pi/4} with phase
// drift -1/(24 tau) + O(tau^{-3}), which stirling_ratio_check measures.
//

#include <complex>
#include <vector>

#include "shiftconv/errors.hpp"

namespace shiftconv {

using cplx = std::complex<double>;

// principal-branch-compatible log Gamma (Lanczos g = 7, 9 terms, with the
// reflection formula for Re z < 1/2); exact enough for 1e-12 level checks
cplx log_gamma(cplx z);

struct GammaData {
    int d = 1;                  // degree, >= 1
    std::vector<cplx> alphas;   // spectral parameters, |alpha_j| <= 2; empty = all 0
    int delta0 = 0;             // parity, 0 or 1
};

void validate(const GammaData& g);

// Throws domain_error when a numerator argument is within 1e-8 of a pole;
// returns 0 when a denominator argument hits one.
cplx gamma_factor(const GammaData& g, cplx s);

struct StirlingEntry {
    double tau;
    double drift;       // arg(R (tau/2e)^{i tau}) - pi/4, expect ~ -1/(24 tau)
    double model_gap;   // |R - (tau/2e)^{-i tau} e^{i pi/4}|
};

std::vector<StirlingEntry> stirling_ratio_check(const std::vector<double>& tau_grid);

// Euler-Maclaurin zeta, accurate to ~1e-13 for Re s > 0 away from s = 1 and
// to ~1e-10 absolute down to Re s > -4 (the partial sum grows as the real
// part drops, so cancellation eats the last digits there); wide enough to
// exercise the functional equation zeta(s) = gamma(s) zeta(1-s) with both
// arguments evaluated directly.
cplx zeta_em(cplx s);

} // namespace shiftconv
