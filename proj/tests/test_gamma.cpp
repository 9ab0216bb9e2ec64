//
// Gamma factor and the Euler-Maclaurin zeta: literal values, unitarity on
// the critical line, pole handling, the Stirling phase drift, and the two
// implementations cross-checked through the functional equation.
//

#include <cmath>
#include <complex>

#include "shiftconv/errors.hpp"
#include "shiftconv/gamma.hpp"
#include "support/testkit.hpp"

using namespace shiftconv;

TEST_CASE("log gamma literals and reflection") {
    CHECK(std::abs(log_gamma(cplx{1.0, 0.0})) < 1e-13);
    CHECK(std::abs(log_gamma(cplx{2.0, 0.0})) < 1e-13);
    CHECK_REL(std::exp(log_gamma(cplx{5.0, 0.0})).real(), 24.0, 1e-13);
    CHECK_REL(std::exp(log_gamma(cplx{0.5, 0.0})).real(), std::sqrt(M_PI), 1e-13);
    // |Gamma(i)|^2 = pi / sinh(pi)
    const double gi = std::abs(std::exp(log_gamma(cplx{0.0, 1.0})));
    CHECK_REL(gi, std::sqrt(M_PI / std::sinh(M_PI)), 1e-12);
    // Gamma(z) Gamma(1-z) = pi / sin(pi z) at z = 0.3 - 0.4i
    const cplx z{0.3, -0.4};
    const cplx lhs = std::exp(log_gamma(z) + log_gamma(cplx{1.0, 0.0} - z));
    const cplx rhs = M_PI / std::sin(M_PI * z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("gamma factor at the center and on the line") {
    for (int d : {1, 2, 4}) {
        GammaData g{d, {}, 0};
        CHECK(std::abs(gamma_factor(g, cplx{0.5, 0.0}) - cplx{1.0, 0.0}) < 1e-12);
        for (double tau : {5.0, 10.0, 20.0})
            CHECK(std::abs(std::abs(gamma_factor(g, cplx{0.5, tau})) - 1.0) < 1e-8);
    }
    // degree 1 at s = 2: pi^{3/2} Gamma(-1/2) / Gamma(1) = -2 pi^2
    GammaData g1{1, {}, 0};
    const cplx v = gamma_factor(g1, cplx{2.0, 0.0});
    CHECK_REL(v.real(), -2.0 * M_PI * M_PI, 1e-12);
    CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v.real()));
}

TEST_CASE("gamma factor pole handling") {
    GammaData g1{1, {}, 0};
    // numerator Gamma(-1) at s = 3
    CHECK_THROWS_AS(gamma_factor(g1, cplx{3.0, 0.0}), domain_error);
    CHECK_THROWS_AS(gamma_factor(g1, cplx{5.0, 0.0}), domain_error);
    // denominator Gamma(0) at s = 0: trivial zero of the completed quotient
    CHECK(std::abs(gamma_factor(g1, cplx{0.0, 0.0})) == 0.0);
    GammaData bad{0, {}, 0};
    CHECK_THROWS_AS(validate(bad), config_error);
    GammaData bad2{2, {}, 2};
    CHECK_THROWS_AS(validate(bad2), config_error);
    GammaData bad3{2, {cplx{3.0, 0.0}, cplx{0.0, 0.0}}, 0};
    CHECK_THROWS_AS(validate(bad3), config_error);
    GammaData bad4{3, {cplx{0.0, 0.0}, cplx{0.0, 0.0}}, 0};
    CHECK_THROWS_AS(validate(bad4), config_error);
}

TEST_CASE("zeta literals") {
    CHECK_REL(zeta_em(cplx{2.0, 0.0}).real(), M_PI * M_PI / 6.0, 1e-12);
    CHECK_REL(zeta_em(cplx{3.0, 0.0}).real(), 1.2020569031595942854, 1e-12);
    CHECK_REL(zeta_em(cplx{4.0, 0.0}).real(), std::pow(M_PI, 4) / 90.0, 1e-12);
    CHECK_CLOSE(zeta_em(cplx{0.0, 0.0}).real(), -0.5, 1e-12);
    CHECK_CLOSE(zeta_em(cplx{-1.0, 0.0}).real(), -1.0 / 12.0, 1e-12);
    // the partial sum behind zeta(-3) is ~8e4, so cancellation leaves an
    // absolute floor near ulp(8e4) ~ 1e-11
    CHECK_CLOSE(zeta_em(cplx{-3.0, 0.0}).real(), 1.0 / 120.0, 1e-9);
    CHECK_REL(zeta_em(cplx{0.5, 0.0}).real(), -1.4603545088095868, 1e-12);
    for (cplx s : {cplx{2.0, 0.0}, cplx{0.5, 3.0}, cplx{-1.5, 2.0}})
        CHECK(std::abs(zeta_em(s).imag()) < 1e-10 ||
              std::abs(zeta_em(std::conj(s)) - std::conj(zeta_em(s))) < 1e-12);
    CHECK_THROWS_AS(zeta_em(cplx{1.0, 0.0}), domain_error);
}

TEST_CASE("functional equation ties zeta to the gamma factor") {
    // zeta(s)^d = gamma(s) zeta(1-s)^d for the trivial degree-d data; the
    // two sides go through entirely separate code paths.
    for (int d : {1, 2, 3}) {
        GammaData g{d, {}, 0};
        for (cplx s : {cplx{2.0, 0.0}, cplx{2.5, 0.0}, cplx{1.75, 1.25}}) {
            const cplx lhs = std::pow(zeta_em(s), d);
            const cplx rhs = gamma_factor(g, s) * std::pow(zeta_em(cplx{1.0, 0.0} - s), d);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(lhs));
        }
    }
}

TEST_CASE("stirling ratio drift follows the 1/(24 tau) law") {
    auto rows = stirling_ratio_check({40.0, 80.0, 100.0});
    CHECK(rows.size() == 3);
    CHECK_REL(rows[0].drift, -1.0 / (24.0 * 40.0), 0.05);
    CHECK_REL(rows[1].drift, -1.0 / (24.0 * 80.0), 0.05);
    CHECK_CLOSE(rows[0].drift / rows[1].drift, 2.0, 0.01);
    for (const auto& r : rows) CHECK(r.model_gap < 0.02);
    CHECK(rows[2].model_gap < rows[0].model_gap * 1.05);
    CHECK_THROWS_AS(stirling_ratio_check({-3.0}), config_error);
}
