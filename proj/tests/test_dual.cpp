//
// Dual-sum identity: the Mellin window against its stationary-phase model,
// the two Omega implementations against each other, the end-to-end modulus
// comparison for degrees 2 and 4, and the cross-degree stationary point
// against an inline finite-difference oracle.
//

#include <cmath>
#include <complex>

#include "shiftconv/coefficients.hpp"
#include "shiftconv/dual_sum.hpp"
#include "shiftconv/errors.hpp"
#include "shiftconv/windows.hpp"
#include "support/testkit.hpp"

using namespace shiftconv;

TEST_CASE("dual parameter derivation and validation") {
    DualSumParams p = make_dual_params(10000, 251.0, -0.8, 4);
    CHECK(p.Q == 200.0);
    CHECK_REL(p.Ntilde, 1e12 / std::pow(251.0, 4), 1e-12);
    CHECK_THROWS_AS(make_dual_params(3, 10.0, -1.0, 2), config_error);
    CHECK_THROWS_AS(make_dual_params(100, 0.5, -1.0, 2), config_error);
    CHECK_THROWS_AS(make_dual_params(100, 10.0, 0.0, 2), config_error);
    CHECK_THROWS_AS(make_dual_params(100, 10.0, -1.0, 1), config_error);
}

TEST_CASE("mellin window modulus at the stationary point") {
    const int64_t N = 1000;
    const double Q = 64.0, x = -0.5, z0 = 1.5;
    const double tau = z0 * 2.0 * M_PI * double(N) * std::abs(x) / Q;
    const cplx val = mellin_window(N, x, Q, 1.0, tau);
    const SmoothWindow V = SmoothWindow::bump_V();
    const double predicted = std::sqrt(2.0 * M_PI) * V.value(z0) * z0 / std::sqrt(tau);
    CHECK_REL(std::abs(val), predicted, 10.0 / tau);
    // on the positive side the phase is monotone: what's left is the window
    // transform's tail, three to four orders below the stationary value
    CHECK(std::abs(mellin_window(N, -x, Q, 1.0, tau)) < 1e-3 * std::abs(val));
}

TEST_CASE("omega transform: quadrature against the closed form") {
    DualSumParams p = make_dual_params(10000, 251.0, -200.0 / 251.0, 4);
    for (double u0 : {1.2, 1.35, 1.5, 1.65, 1.8}) {
        const int64_t n = std::llround(u0 * u0 * u0 * p.Ntilde);
        const cplx qv = omega_transform(p, n, OmegaMode::quadrature);
        const cplx cv = omega_transform(p, n, OmegaMode::closed_form);
        CHECK(std::abs(cv) > 0.0);
        const double ratio = std::abs(qv) / std::abs(cv);
        CHECK(ratio > 0.8);
        CHECK(ratio < 1.25);
    }
    // outside the dual window the closed form vanishes identically
    const int64_t far = std::llround(3.5 * 3.5 * 3.5 * p.Ntilde);
    CHECK(std::abs(omega_transform(p, far, OmegaMode::closed_form)) == 0.0);
    CHECK_THROWS_AS(omega_transform(p, 0, OmegaMode::closed_form), config_error);
}

TEST_CASE("end-to-end modulus agreement, degree 2") {
    const int64_t N = 10000;
    const double H = 15.0;
    CoefficientTable t = gen_ramanujan(2 * N);
    const double Q = 2.0 * std::ceil(std::sqrt(double(N)));
    DualSumParams p = make_dual_params(N, H, -Q / H, 2);
    DualSumReport rep = dual_sum_check(t, p);
    CHECK(std::abs(rep.lhs) > 0.0);
    CHECK(rep.dual_terms > 10);
    CHECK_CLOSE(std::abs(rep.kappa), 1.0, 1e-12);
    CHECK(rep.rel_err < 0.1);   // measured ~1e-2; generous band for stability
    CHECK_REL(rep.dual_lo, double(N) / (H * H), 1e-12);
    CHECK_REL(rep.dual_hi, 2.0 * double(N) / (H * H), 1e-12);
}

TEST_CASE("end-to-end modulus agreement, degree 4 lift") {
    const int64_t N = 10000;
    const double H = 251.0;
    CoefficientTable base = gen_ramanujan(4 * N);
    CoefficientTable t = gen_sym_power(base, 3, 4 * N);
    const double Q = 2.0 * std::ceil(std::sqrt(double(N)));
    DualSumParams p = make_dual_params(N, H, -Q / H, 4);
    DualSumReport rep = dual_sum_check(t, p);
    CHECK(rep.dual_terms > 100);
    CHECK(rep.rel_err < 0.25);  // measured ~1e-2
}

TEST_CASE("positive twist has an empty dual side") {
    CoefficientTable t = gen_ramanujan(400);
    DualSumParams p = make_dual_params(200, 5.0, 1.0, 2);
    DualSumReport rep = dual_sum_check(t, p);
    CHECK(rep.rhs == cplx(0.0, 0.0));
    CHECK(rep.rel_err == 1.0);
    CHECK(std::abs(rep.lhs) > 0.0);
}

TEST_CASE("window coverage errors") {
    CoefficientTable t = gen_ramanujan(200);
    DualSumParams p = make_dual_params(200, 5.0, -1.0, 2);
    CHECK_THROWS_AS(dual_sum_check(t, p), config_error);  // shorter than 2N
    CoefficientTable t2 = gen_ramanujan(400);
    DualSumParams wide = make_dual_params(200, 5.0, -60.0, 2);  // |x| = 2Q
    CHECK_THROWS_AS(dual_sum_check(t2, wide), config_error);    // dual hi = 8N
}

TEST_CASE("cross-degree stationary point") {
    StationaryPoint sp = cross_degree_stationary_point(16.0, 81.0, 100.0, 5, 4);
    CHECK_REL(sp.x0, 1050945.3369140625, 1e-12);
    // finite-difference oracle for the phase and its curvature
    auto f = [](double y) {
        return 4.0 * std::pow(100.0 * 16.0 / y, 0.25)
             - 3.0 * std::pow(100.0 * 81.0 / y, 1.0 / 3.0);
    };
    const double h = sp.x0 * 1e-4;
    const double d1f = (f(sp.x0 + h) - f(sp.x0 - h)) / (2.0 * h);
    const double d2f = (f(sp.x0 + h) - 2.0 * f(sp.x0) + f(sp.x0 - h)) / (h * h);
    CHECK(std::abs(d1f) < 1e-12);
    CHECK_REL(sp.f2, d2f, 1e-4);

    CHECK_THROWS_AS(cross_degree_stationary_point(1.0, 1.0, 1.0, 3, 3), domain_error);
    CHECK_THROWS_AS(cross_degree_stationary_point(1.0, 1.0, 1.0, 2, 3), config_error);
    CHECK_THROWS_AS(cross_degree_stationary_point(1.0, 1.0, 1.0, 3, 1), config_error);
    CHECK_THROWS_AS(cross_degree_stationary_point(-1.0, 1.0, 1.0, 3, 2), config_error);
}
