//
// Delta expansion: exactness of the divisor-sum identity on its guaranteed
// range, Ramanujan sums against the literal exponential sum, the frequency
// weight against an independent quadrature of D_q, and the plateau / decay
// geometry of g.
//

#include <algorithm>
#include <cmath>
#include <vector>

#include "shiftconv/delta_method.hpp"
#include "shiftconv/errors.hpp"
#include "support/oracles.hpp"
#include "support/testkit.hpp"

using namespace shiftconv;

TEST_CASE("bump normalization") {
    for (double Q : {5.0, 20.0, 200.0}) {
        BumpW w = make_bump_w(Q);
        CHECK_CLOSE(w.sum_over_integers(), 1.0, 1e-12);
        CHECK(w.value(Q) == 0.0);
        CHECK(w.value(1.6 * Q) == 0.0);
        CHECK(w.value(1.3 * Q) > 0.0);
        // mass against a direct Simpson integral of the bump
        const auto f = [&](double v) { return cplx(w.value(v), 0.0); };
        const double ref = oracles::simpson(f, Q, 1.6 * Q, 20000).real();
        CHECK_REL(w.mass(), ref, 1e-10);
        const auto fl = [&](double v) { return cplx(w.value(v) / v, 0.0); };
        const double refl = oracles::simpson(fl, Q, 1.6 * Q, 20000).real();
        CHECK_REL(w.log_mass(), refl, 1e-10);
    }
    CHECK_THROWS_AS(DeltaExpansion(1.5), config_error);
}

TEST_CASE("ramanujan sums match the literal exponential sum") {
    DeltaExpansion exp(16.0);
    for (int64_t q = 1; q <= 30; ++q)
        for (int64_t n : {0LL, 1LL, -1LL, 5LL, 12LL, 30LL, 360LL})
            CHECK(exp.ramanujan_sum(q, n) == oracles::literal_cq(q, n));
}

TEST_CASE("delta identity is exact through 2 Q^2") {
    for (double Q : {20.0, 50.0}) {
        DeltaExpansion exp(Q);
        const int64_t nmax = 2 * int64_t(Q);
        double worst = 0.0;
        for (int64_t n = -nmax; n <= nmax; ++n) {
            const double want = (n == 0) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(evaluate_delta(exp, n) - want));
        }
        CHECK(worst < 1e-5);
        // spots at the edge of the guaranteed range
        const int64_t Qi = int64_t(Q);
        CHECK(std::abs(evaluate_delta(exp, Qi * Qi)) < 1e-5);
        CHECK(std::abs(evaluate_delta(exp, 2 * Qi * Qi - 1)) < 1e-5);
        CHECK(std::abs(evaluate_delta(exp, 2 * Qi * Qi)) < 1e-5);
    }
}

TEST_CASE("delta_q truncation flag") {
    DeltaExpansion exp(10.0);
    bool trunc = true;
    delta_q(exp, 1, 3.0, &trunc);          // small u: full residue sum
    CHECK(!trunc);
    delta_q(exp, 1, 1e9, &trunc);          // giant u: second band cut
    CHECK(trunc);
}

TEST_CASE("frequency weight: plateau, frozen spots, q-independence") {
    DeltaExpansion exp(200.0);
    std::vector<double> grid = {0.0,  0.1, 0.3, 0.5, 0.62,
                                0.7,  0.8, 0.9, 1.3, 1.5,
                                1.6,  2.0, 3.0};
    std::vector<cplx> g1 = g_weight(exp, 1, grid);
    std::vector<cplx> g7 = g_weight(exp, 7, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(g1[i].imag() == 0.0);
        CHECK(g1[i] == g7[i]);             // exactly q-free
    }
    // plateau: no integer m with |x| <= m|x| ... inside [|x|, 1.6|x|] below 0.625
    for (size_t i = 0; i < grid.size(); ++i)
        if (grid[i] < 0.625) CHECK(std::abs(g1[i].real() - 1.0) < 1e-8);
    auto at = [&](double x) {
        for (size_t i = 0; i < grid.size(); ++i)
            if (grid[i] == x) return g1[i].real();
        return 1e300;
    };
    CHECK_CLOSE(at(0.7), -2.1507, 2e-4);
    CHECK_CLOSE(at(0.8), -2.3553, 2e-4);
    CHECK_CLOSE(at(0.9), -0.59119, 2e-4);
    CHECK_CLOSE(at(1.3), +0.61811, 2e-4);
    CHECK_CLOSE(at(1.5), -0.81839, 2e-4);
    CHECK_CLOSE(at(1.6), -0.67761, 2e-4);
    CHECK_CLOSE(at(2.0), +0.37950, 2e-4);
    CHECK_CLOSE(at(3.0), +0.09080, 2e-4);
}

TEST_CASE("frequency weight decays across dyadic bands") {
    DeltaExpansion exp(200.0);
    std::vector<double> grid;
    for (double x = 2.0; x <= 128.0; x += 0.01) grid.push_back(x);
    std::vector<cplx> g = g_weight(exp, 1, grid);
    std::vector<double> sup;
    for (int j = 1; j <= 5; ++j) {
        const double lo = std::pow(2.0, j), hi = std::pow(2.0, j + 1);
        double s = 0.0;
        for (size_t i = 0; i < grid.size(); ++i)
            if (grid[i] >= lo && grid[i] < hi) s = std::max(s, std::abs(g[i].real()));
        sup.push_back(s);
    }
    for (size_t j = 1; j < sup.size(); ++j) CHECK(sup[j] < sup[j - 1]);
}

TEST_CASE("closed-form weight against direct quadrature of D_q") {
    DeltaExpansion exp(64.0);
    for (int64_t q : {1, 3}) {
        for (double x : {0.3, 0.7, 0.9, 1.3, 2.0}) {
            std::vector<cplx> g = g_weight(exp, q, {x});
            const double direct = oracles::quadrature_g(exp, q, x);
            CHECK(std::abs(g[0].real() - direct) < 1e-4);
        }
    }
}

TEST_CASE("packaged reconstruction and its constant bias") {
    DeltaExpansion exp(128.0);
    B0FormReport rep = b0_form_check(exp, 1.15, {0, 1, -1, 2, 5, -12});
    CHECK(rep.max_residual < 5e-3);
    // dropping the atom leaves a visible constant offset
    CHECK(rep.max_residual_no_atom > 0.02);
    CHECK(rep.max_residual_no_atom < 0.2);
    for (size_t i = 0; i < rep.n.size(); ++i)
        CHECK(rep.target[i] == (rep.n[i] == 0 ? 1.0 : 0.0));
}

TEST_CASE("zero-frequency alias mass in and out of regime") {
    ZeroFrequencyReport in = zero_frequency_check(199.0, 10000, 100, -1.0);
    CHECK(in.constraint_met);
    CHECK_CLOSE(in.main_abs, 0.60340, 1e-3);
    CHECK(in.ratio > 0.15);
    CHECK(in.ratio < 0.3);

    ZeroFrequencyReport out = zero_frequency_check(80.0, 10000, 100, -1.0);
    CHECK(!out.constraint_met);
    CHECK(out.ratio > 1.0);
    CHECK(out.ratio < 2.0);
    CHECK(out.ratio > 3.0 * in.ratio);
}
