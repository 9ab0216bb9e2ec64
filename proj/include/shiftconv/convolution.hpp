#pragma once
//
// Shift-averaged convolution sums
//
//      B = (1/H) sum_{H < h <= 2H} sum_{N < n <= 2N} t1(n) t2(n + h),
//
// optionally smoothed by W(h/H) V(n/N).  The inner correlation is either
// summed directly or evaluated for all lags at once through a zero-padded
// FFT cross-correlation; the two must agree to near machine precision,
// which is one of the library's standing checks.
//
// The size of B against N measures how much cancellation the shift average
// buys.  exponent_scan sweeps N with H = floor(N^theta) and fits
// log |B| against log N; the companion bound table gives the predicted
// exponents for the structured estimates and the thresholds where each
// starts to beat the trivial bound.
//

#include <cstdint>
#include <vector>

#include "shiftconv/coefficients.hpp"
#include "shiftconv/errors.hpp"

namespace shiftconv {

enum class Smoothing { sharp, smooth };
enum class SumMethod { naive, fft };

struct ShiftedSumSpec {
    const CoefficientTable* t1 = nullptr;
    const CoefficientTable* t2 = nullptr;
    int64_t N = 0;
    int64_t H = 0;
    Smoothing smoothing = Smoothing::sharp;
};

// Validates N >= 4, H >= 1, t1 covering 2N and t2 covering 2N + 2H.
double compute_B(const ShiftedSumSpec& spec, SumMethod method);

// Correlation scale K0 = N^{d2-2} / H^{d2-1} of the shift-averaged kernel,
// with the dual-length identity K0 = Ntilde^{-1/(d1-d2)} Mtilde^{1+1/(d1-d2)}
// (Ntilde = N^{d1-1}/H^{d1}, Mtilde = N^{d2-1}/H^{d2}) evaluated as a
// consistency gap.
struct CorrelationLength {
    double K0;
    double Ntilde;
    double Mtilde;
    double identity_gap;   // relative
};

CorrelationLength correlation_length(int d1, int d2, double N, double H);

// Predicted exponents of N for |B| under H = N^theta, normalized so the
// trivial bound is exponent 1.  Each structured bound crosses the trivial
// one exactly at its threshold theta.
struct ExponentBounds {
    double equal_degree;      // (d-1) - d theta          (d1 == d2 = d)
    double cross_degree;      // (d1+d2-2)/2 - theta (d1+d2)/2   (d1 > d2)
    double partial_sum;       // 1 + (d2-1)/(d2+1) - theta
    double trivial;           // 1
    double threshold_equal;   // 1 - 2/d
    double threshold_cross;   // 1 - 4/(d1+d2)
    double threshold_partial; // (d2-1)/(d2+1)
};

ExponentBounds exponent_bounds(int d1, int d2, double theta);

struct ExponentFit {
    double theta = 0.0;
    int points = 0;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

struct ScanRow {
    int64_t N = 0;
    int64_t H = 0;
    double B_sharp = 0.0;
    double B_smooth = 0.0;
    double partial_slope = 0.0;  // fit over included rows so far (NaN until 2 points)
    bool excluded = false;       // |B_smooth| == 0, left out of the fit
};

struct ExponentScan {
    double theta = 0.0;
    std::vector<ScanRow> rows;
    ExponentFit fit;             // log |B_smooth| against log N
};

ExponentScan exponent_scan(const CoefficientTable& t1, const CoefficientTable& t2,
                           double theta, const std::vector<int64_t>& N_grid);

} // namespace shiftconv
