//
// Window and bump primitives: derivative consistency against central
// differences, mass against plain Simpson, and the documented shapes of
// the built-in window families.
//

#include <cmath>

#include "shiftconv/errors.hpp"
#include "shiftconv/windows.hpp"
#include "support/oracles.hpp"
#include "support/testkit.hpp"

using namespace shiftconv;

namespace {

// central difference of a scalar function, fourth-order stencil
double cdiff(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

} // namespace

TEST_CASE("psi bump basics") {
    CHECK(psi_bump(0.0) == std::exp(-1.0));
    CHECK(psi_bump(1.0) == 0.0);
    CHECK(psi_bump(-1.0) == 0.0);
    CHECK(psi_bump(1.5) == 0.0);
    CHECK(psi_bump(0.3) > 0.0);
    CHECK(psi_bump(0.3) == psi_bump(-0.3));

    // mass constant against Simpson on a fine grid
    double acc = 0.0;
    const int n = 20000;
    for (int i = 0; i <= n; ++i) {
        const double u = -1.0 + 2.0 * i / n;
        acc += psi_bump(u) * ((i == 0 || i == n) ? 1.0 : (i % 2) ? 4.0 : 2.0);
    }
    acc *= (2.0 / n) / 3.0;
    CHECK_CLOSE(acc, psi_bump_mass, 1e-12);
}

TEST_CASE("psi bump derivatives match central differences") {
    for (int order = 1; order <= 4; ++order) {
        for (double u : {-0.7, -0.25, 0.0, 0.33, 0.61, 0.85}) {
            auto lower = [order](double v) { return psi_bump_deriv(v, order - 1); };
            const double fd = cdiff(lower, u, 1e-4);
            const double an = psi_bump_deriv(u, order);
            const double scale = std::max(1.0, std::abs(an));
            CHECK(std::abs(fd - an) < 1e-5 * scale);
        }
    }
    // order 0 is the bump itself
    CHECK(psi_bump_deriv(0.3, 0) == psi_bump(0.3));
}

TEST_CASE("smoothstep endpoints, monotonicity, derivative") {
    CHECK(smoothstep(-1.0) == 0.0);
    CHECK(smoothstep(1.0) == 1.0);
    CHECK(smoothstep(-2.0) == 0.0);
    CHECK(smoothstep(2.0) == 1.0);
    CHECK_CLOSE(smoothstep(0.0), 0.5, 1e-12);

    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double t = -1.0 + 2.0 * i / 100.0;
        const double v = smoothstep(t);
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
    for (double t : {-0.6, -0.2, 0.1, 0.5, 0.9}) {
        const double fd = cdiff([](double v) { return smoothstep(v); }, t, 1e-5);
        CHECK(std::abs(fd - smoothstep_deriv(t, 1)) < 1e-6);
    }
}

TEST_CASE("bump_V shape") {
    SmoothWindow V = SmoothWindow::bump_V();
    CHECK(V.support_a() == 1.0);
    CHECK(V.support_b() == 2.0);
    CHECK_CLOSE(V.value(1.5), 1.0, 1e-14);  // e * psi(0) = 1
    CHECK(V.value(1.0) == 0.0);
    CHECK(V.value(2.0) == 0.0);
    CHECK(V.value(0.9) == 0.0);
    CHECK(V.value(2.1) == 0.0);
    CHECK_CLOSE(V.sup_norm(), 1.0, 1e-9);
    CHECK_CLOSE(V.variation(), 2.0, 1e-6);  // up to 1 and back down

    for (double x : {1.2, 1.5, 1.8}) {
        const double fd = cdiff([&](double v) { return V.value(v); }, x, 1e-5);
        CHECK(std::abs(fd - V.deriv(x, 1)) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("plateau_U plateau and support") {
    SmoothWindow U = SmoothWindow::plateau_U();
    CHECK(U.support_a() == 0.5);
    CHECK(U.support_b() == 2.5);
    CHECK(U.value(1.0) == 1.0);
    CHECK(U.value(1.5) == 1.0);
    CHECK(U.value(2.0) == 1.0);
    CHECK(U.value(0.5) == 0.0);
    CHECK(U.value(2.5) == 0.0);
    CHECK(U.value(0.75) > 0.0);
    CHECK(U.value(0.75) < 1.0);
}

TEST_CASE("plateau_B0 scaling") {
    SmoothWindow B = SmoothWindow::plateau_B0(3.0);
    CHECK(B.support_a() == -6.0);
    CHECK(B.support_b() == 6.0);
    CHECK(B.value(0.0) == 1.0);
    CHECK(B.value(2.9) == 1.0);
    CHECK(B.value(-2.9) == 1.0);
    CHECK(B.value(6.0) == 0.0);
    CHECK(B.value(4.5) > 0.0);
    CHECK(B.value(4.5) < 1.0);
    CHECK(B.value(4.5) == B.value(-4.5));
}

TEST_CASE("custom window and missing derivatives") {
    SmoothWindow w = SmoothWindow::custom(
        0.0, 1.0, [](double x) { return x * (1.0 - x); },
        {[](double x) { return 1.0 - 2.0 * x; }, {}, {}, {}});
    CHECK(w.value(0.5) == 0.25);
    CHECK(w.deriv(0.25, 1) == 0.5);
    CHECK_THROWS_AS(w.deriv(0.25, 2), config_error);
}

TEST_CASE("window derivative order bounds") {
    SmoothWindow V = SmoothWindow::bump_V();
    CHECK_THROWS_AS(V.deriv(1.5, 0), config_error);
    CHECK_THROWS_AS(V.deriv(1.5, 5), config_error);
}
