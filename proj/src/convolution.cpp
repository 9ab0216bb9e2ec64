#include "shiftconv/convolution.hpp"

#include <cmath>
#include <limits>

#include "shiftconv/fftc.hpp"
#include "shiftconv/windows.hpp"

namespace shiftconv {

namespace {

void validate_spec(const ShiftedSumSpec& s) {
    if (!s.t1 || !s.t2) throw config_error("compute_B: missing coefficient tables");
    if (s.N < 4) throw config_error("compute_B: need N >= 4");
    if (s.H < 1) throw config_error("compute_B: need H >= 1");
    if (s.t1->size() < 2 * s.N)
        throw config_error("compute_B: t1 must cover n <= 2N");
    if (s.t2->size() < 2 * s.N + 2 * s.H)
        throw config_error("compute_B: t2 must cover n <= 2N + 2H");
}

} // namespace

double compute_B(const ShiftedSumSpec& spec, SumMethod method) {
    validate_spec(spec);
    const int64_t N = spec.N, H = spec.H;
    const bool smooth = spec.smoothing == Smoothing::smooth;
    const SmoothWindow V = SmoothWindow::bump_V();
    const SmoothWindow W = SmoothWindow::bump_W();

    // per-lag correlation c[h] = sum_{N < n <= 2N} t1(n) [V] t2(n+h)
    std::vector<double> corr(static_cast<size_t>(2 * H) + 1, 0.0);
    if (method == SumMethod::fft) {
        std::vector<double> a(static_cast<size_t>(N));
        std::vector<double> b(static_cast<size_t>(N + 2 * H));
        for (int64_t i = 0; i < N; ++i) {
            const int64_t n = N + 1 + i;
            a[static_cast<size_t>(i)] =
                smooth ? spec.t1->at(n) * V.value(static_cast<double>(n) / N)
                       : spec.t1->at(n);
        }
        for (int64_t j = 0; j < N + 2 * H; ++j)
            b[static_cast<size_t>(j)] = spec.t2->at(N + 1 + j);
        corr = fftc::cross_correlate(a, b, 2 * H);
    } else {
        for (int64_t h = H + 1; h <= 2 * H; ++h) {
            double s = 0.0;
            for (int64_t n = N + 1; n <= 2 * N; ++n) {
                const double w1 =
                    smooth ? spec.t1->at(n) * V.value(static_cast<double>(n) / N)
                           : spec.t1->at(n);
                s += w1 * spec.t2->at(n + h);
            }
            corr[static_cast<size_t>(h)] = s;
        }
    }

    // compensated average over the shift window
    double sum = 0.0, comp = 0.0;
    for (int64_t h = H + 1; h <= 2 * H; ++h) {
        const double wh = smooth ? W.value(static_cast<double>(h) / H) : 1.0;
        const double term = wh * corr[static_cast<size_t>(h)] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum / static_cast<double>(H);
}

CorrelationLength correlation_length(int d1, int d2, double N, double H) {
    if (d2 < 2 || d1 <= d2)
        throw config_error("correlation_length: need d1 > d2 >= 2");
    if (!(N > 1.0) || !(H >= 1.0))
        throw config_error("correlation_length: need N > 1, H >= 1");
    CorrelationLength out;
    out.K0 = std::pow(N, d2 - 2) / std::pow(H, d2 - 1);
    out.Ntilde = std::pow(N, d1 - 1) / std::pow(H, d1);
    out.Mtilde = std::pow(N, d2 - 1) / std::pow(H, d2);
    const double e = 1.0 / (d1 - d2);
    const double via_duals = std::pow(out.Ntilde, -e) * std::pow(out.Mtilde, 1.0 + e);
    out.identity_gap = std::abs(out.K0 - via_duals) / out.K0;
    return out;
}

ExponentBounds exponent_bounds(int d1, int d2, double theta) {
    if (d1 < 2 || d2 < 2) throw config_error("exponent_bounds: need d1, d2 >= 2");
    if (d1 < d2) throw config_error("exponent_bounds: need d1 >= d2");
    if (!(theta > 0.0) || !(theta < 1.0))
        throw config_error("exponent_bounds: need 0 < theta < 1");
    ExponentBounds b;
    b.trivial = 1.0;
    b.equal_degree = d1 == d2
        ? (d1 - 1.0) - d1 * theta
        : std::numeric_limits<double>::quiet_NaN();
    b.cross_degree = d1 > d2
        ? (d1 + d2 - 2.0) / 2.0 - theta * (d1 + d2) / 2.0
        : std::numeric_limits<double>::quiet_NaN();
    b.partial_sum = 1.0 + (d2 - 1.0) / (d2 + 1.0) - theta;
    b.threshold_equal = 1.0 - 2.0 / d1;
    b.threshold_cross = 1.0 - 4.0 / (d1 + d2);
    b.threshold_partial = (d2 - 1.0) / (d2 + 1.0);
    return b;
}

ExponentScan exponent_scan(const CoefficientTable& t1, const CoefficientTable& t2,
                           double theta, const std::vector<int64_t>& N_grid) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw config_error("exponent_scan: need 0 < theta < 1");
    if (N_grid.size() < 2)
        throw config_error("exponent_scan: need at least 2 grid points");

    ExponentScan scan;
    scan.theta = theta;
    std::vector<double> lx, ly;
    for (int64_t N : N_grid) {
        ScanRow row;
        row.N = N;
        row.H = static_cast<int64_t>(
            std::floor(std::pow(static_cast<double>(N), theta) + 1e-9));
        if (row.H < 1) row.H = 1;

        ShiftedSumSpec spec{&t1, &t2, N, row.H, Smoothing::sharp};
        row.B_sharp = compute_B(spec, SumMethod::fft);
        spec.smoothing = Smoothing::smooth;
        row.B_smooth = compute_B(spec, SumMethod::fft);

        if (row.B_smooth == 0.0) {
            row.excluded = true;  // log fit cannot use an exact zero
        } else {
            lx.push_back(std::log(static_cast<double>(N)));
            ly.push_back(std::log(std::abs(row.B_smooth)));
        }
        row.partial_slope = lx.size() >= 2
            ? fit_line(lx, ly).slope
            : std::numeric_limits<double>::quiet_NaN();
        scan.rows.push_back(row);
    }

    scan.fit.theta = theta;
    scan.fit.points = static_cast<int>(lx.size());
    if (lx.size() >= 2) {
        const LineFit f = fit_line(lx, ly);
        scan.fit.slope = f.slope;
        scan.fit.intercept = f.intercept;
        scan.fit.r2 = f.r2;
    }
    return scan;
}

} // namespace shiftconv
