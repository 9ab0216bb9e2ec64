//
// Shift-averaged correlation sums: the FFT path against the direct double
// loop and against a from-scratch evaluation written in this file, the
// exponent bound table at its crossover thresholds, and the scan driver on
// an all-ones control where the answer is known.
//

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "shiftconv/convolution.hpp"
#include "shiftconv/errors.hpp"
#include "shiftconv/windows.hpp"
#include "support/testkit.hpp"

using namespace shiftconv;

namespace {

// Fully independent reference: the defining double sum, written against the
// same window conventions but none of the library's summation code.
double reference_B(const CoefficientTable& t1, const CoefficientTable& t2,
                   int64_t N, int64_t H, Smoothing sm) {
    const SmoothWindow V = SmoothWindow::bump_V();
    const SmoothWindow W = SmoothWindow::bump_W();
    double total = 0.0;
    for (int64_t h = H + 1; h <= 2 * H; ++h) {
        const double wh = (sm == Smoothing::smooth) ? W.value(double(h) / double(H)) : 1.0;
        if (wh == 0.0) continue;
        for (int64_t n = N + 1; n <= 2 * N; ++n) {
            const double vn = (sm == Smoothing::smooth) ? V.value(double(n) / double(N)) : 1.0;
            if (vn == 0.0) continue;
            total += t1.at(n) * t2.at(n + h) * wh * vn;
        }
    }
    return total / double(H);
}

CoefficientTable random_table(std::mt19937_64& rng, int64_t len) {
    CoefficientTable t;
    t.label = "test";
    t.degree = 2;
    t.kind = CoefficientKind::random_model;
    t.values.resize(size_t(len));
    std::normal_distribution<double> g(0.0, 1.0);
    for (double& v : t.values) v = g(rng);
    return t;
}

} // namespace

TEST_CASE("naive sum equals the handwritten reference") {
    std::mt19937_64 rng(7);
    CoefficientTable t1 = random_table(rng, 300);
    CoefficientTable t2 = random_table(rng, 400);
    for (Smoothing sm : {Smoothing::sharp, Smoothing::smooth}) {
        ShiftedSumSpec spec{&t1, &t2, 120, 30, sm};
        const double lib = compute_B(spec, SumMethod::naive);
        const double ref = reference_B(t1, t2, 120, 30, sm);
        CHECK_REL(lib, ref, 1e-12);
    }
}

TEST_CASE("fft path agrees with the naive path on random instances") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int64_t> pickN(8, 200), pickH(1, 40);
    for (int trial = 0; trial < 50; ++trial) {
        const int64_t N = pickN(rng), H = pickH(rng);
        CoefficientTable t1 = random_table(rng, 2 * N);
        CoefficientTable t2 = random_table(rng, 2 * N + 2 * H);
        const Smoothing sm = (trial % 2 == 0) ? Smoothing::sharp : Smoothing::smooth;
        ShiftedSumSpec spec{&t1, &t2, N, H, sm};
        const double a = compute_B(spec, SumMethod::naive);
        const double b = compute_B(spec, SumMethod::fft);
        CHECK(std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}));
    }
}

TEST_CASE("correlation sum is bilinear") {
    std::mt19937_64 rng(99);
    CoefficientTable a = random_table(rng, 200);
    CoefficientTable b = random_table(rng, 200);
    CoefficientTable c = random_table(rng, 260);
    CoefficientTable ab = a;
    for (size_t i = 0; i < ab.values.size(); ++i)
        ab.values[i] = 2.0 * a.values[i] + 3.0 * b.values[i];
    ShiftedSumSpec sa{&a, &c, 80, 20, Smoothing::smooth};
    ShiftedSumSpec sb{&b, &c, 80, 20, Smoothing::smooth};
    ShiftedSumSpec sab{&ab, &c, 80, 20, Smoothing::smooth};
    const double va = compute_B(sa, SumMethod::fft);
    const double vb = compute_B(sb, SumMethod::fft);
    const double vab = compute_B(sab, SumMethod::fft);
    CHECK_CLOSE(vab, 2.0 * va + 3.0 * vb, 1e-9 * (std::abs(va) + std::abs(vb) + 1.0));
}

TEST_CASE("spec validation") {
    std::mt19937_64 rng(1);
    CoefficientTable t1 = random_table(rng, 100);
    CoefficientTable t2 = random_table(rng, 100);
    ShiftedSumSpec shortN{&t1, &t2, 3, 1, Smoothing::sharp};
    CHECK_THROWS_AS(compute_B(shortN, SumMethod::naive), config_error);
    ShiftedSumSpec shortT1{&t1, &t2, 60, 1, Smoothing::sharp};   // t1 needs 120
    CHECK_THROWS_AS(compute_B(shortT1, SumMethod::naive), config_error);
    ShiftedSumSpec shortT2{&t1, &t2, 40, 20, Smoothing::sharp};  // t2 needs 120
    CHECK_THROWS_AS(compute_B(shortT2, SumMethod::naive), config_error);
    ShiftedSumSpec noT{nullptr, &t2, 10, 1, Smoothing::sharp};
    CHECK_THROWS_AS(compute_B(noT, SumMethod::naive), config_error);
}

TEST_CASE("bound table crosses the trivial bound at each threshold") {
    for (int d = 4; d <= 8; ++d) {
        ExponentBounds eq = exponent_bounds(d, d, 1.0 - 2.0 / d);
        CHECK_CLOSE(eq.equal_degree, eq.trivial, 1e-12);
        CHECK(eq.trivial == 1.0);
        for (int d2 = 2; d2 < d; ++d2) {
            ExponentBounds cr = exponent_bounds(d, d2, 1.0 - 4.0 / (d + d2));
            CHECK_CLOSE(cr.cross_degree, cr.trivial, 1e-12);
            ExponentBounds ps = exponent_bounds(d, d2, double(d2 - 1) / double(d2 + 1));
            CHECK_CLOSE(ps.partial_sum, ps.trivial, 1e-12);
        }
        // past the threshold the structured bound wins
        ExponentBounds past = exponent_bounds(d, d, 1.0 - 2.0 / d + 0.05);
        CHECK(past.equal_degree < past.trivial);
    }
}

TEST_CASE("correlation length identity") {
    for (int d1 : {4, 5, 7}) {
        for (int d2 : {2, 3}) {
            if (d1 <= d2) continue;
            CorrelationLength cl = correlation_length(d1, d2, 50000.0, 600.0);
            CHECK(cl.identity_gap < 1e-12);
            CHECK_REL(cl.K0, std::pow(50000.0, d2 - 2) / std::pow(600.0, d2 - 1), 1e-12);
        }
    }
}

TEST_CASE("scan driver recovers the all-ones growth exponent") {
    CoefficientTable ones = gen_divisor(1, 2 * 2048 + 2 * 120 + 2);
    ExponentScan scan = exponent_scan(ones, ones, 0.6, {256, 512, 1024, 2048});
    CHECK(scan.fit.points == 4);
    CHECK(scan.fit.slope > 0.9);
    CHECK(scan.fit.slope < 1.1);
    for (const ScanRow& r : scan.rows) {
        CHECK(!r.excluded);
        CHECK(r.H == int64_t(std::pow(double(r.N), 0.6) + 1e-9));
        CHECK(r.B_sharp > 0.0);
    }
    // the sharp count of an all-ones correlation is exactly N
    CHECK_REL(scan.rows[0].B_sharp, 256.0, 1e-12);
}
