#include "shiftconv/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>

#include "shiftconv/fftc.hpp"

namespace shiftconv {

// ---------------------------------------------------------------------------
// small shared utilities
// ---------------------------------------------------------------------------

const char* kind_name(CoefficientKind k) {
    switch (k) {
        case CoefficientKind::divisor:      return "divisor";
        case CoefficientKind::gl2_cusp:     return "gl2_cusp";
        case CoefficientKind::sym_power:    return "sym_power";
        case CoefficientKind::random_model: return "random_model";
    }
    return "unknown";
}

std::vector<int64_t> primes_up_to(int64_t n) {
    std::vector<int64_t> out;
    if (n < 2) return out;
    std::vector<char> comp(static_cast<size_t>(n) + 1, 0);
    for (int64_t i = 2; i <= n; ++i) {
        if (comp[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (int64_t j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = 1;
    }
    return out;
}

double binomial_coeff(int top, int bottom) {
    if (bottom < 0 || bottom > top) return 0.0;
    bottom = std::min(bottom, top - bottom);
    double r = 1.0;
    for (int i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
    return std::round(r);
}

namespace {

// Linear multiplicative sieve: fills f[n] for 1 <= n <= N given f on prime
// powers through the callback pp(p, e).  Every composite is visited once.
void multiplicative_sieve(int64_t N, std::vector<double>& f,
                          const std::function<double(int64_t, int)>& pp) {
    f.assign(static_cast<size_t>(N) + 1, 0.0);
    if (N >= 1) f[1] = 1.0;
    std::vector<uint8_t> e1(static_cast<size_t>(N) + 1, 0);  // spf exponent
    std::vector<int64_t> primes;
    for (int64_t n = 2; n <= N; ++n) {
        if (e1[static_cast<size_t>(n)] == 0) {
            primes.push_back(n);
            e1[static_cast<size_t>(n)] = 1;
            f[static_cast<size_t>(n)] = pp(n, 1);
        }
        for (int64_t p : primes) {
            if (p > N / n) break;
            const int64_t pn = p * n;
            if (n % p == 0) {
                const int e = e1[static_cast<size_t>(n)];
                e1[static_cast<size_t>(pn)] = static_cast<uint8_t>(e + 1);
                int64_t q = 1;
                for (int t = 0; t < e; ++t) q *= p;      // p^e || n
                f[static_cast<size_t>(pn)] =
                    f[static_cast<size_t>(n / q)] * pp(p, e + 1);
                break;
            }
            e1[static_cast<size_t>(pn)] = 1;
            f[static_cast<size_t>(pn)] = f[static_cast<size_t>(n)] * pp(p, 1);
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// divisor table
// ---------------------------------------------------------------------------

CoefficientTable gen_divisor(int d, int64_t N) {
    if (d < 1 || d > 16) throw config_error("gen_divisor: need 1 <= d <= 16");
    if (N < 1 || N > 100000000) throw config_error("gen_divisor: need 1 <= N <= 1e8");

    // tau_d(p^e) = C(e+d-1, d-1), independent of p
    double pp_table[64];
    for (int e = 0; e < 64; ++e) pp_table[e] = binomial_coeff(e + d - 1, d - 1);

    CoefficientTable t;
    t.label = "tau" + std::to_string(d);
    t.degree = d;
    t.kind = CoefficientKind::divisor;
    std::vector<double> f;
    multiplicative_sieve(N, f, [&](int64_t, int e) { return pp_table[e]; });
    t.values.assign(f.begin() + 1, f.end());
    return t;
}

// ---------------------------------------------------------------------------
// discriminant-form eigenvalues
// ---------------------------------------------------------------------------

namespace {

uint64_t mulmod_u(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
}

// residues of a signed vector; the modulus can exceed INT64_MAX, so the
// reduction has to run in unsigned arithmetic throughout
std::vector<uint64_t> to_residues(const std::vector<int64_t>& v, uint64_t p) {
    std::vector<uint64_t> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        const int64_t x = v[i];
        if (x >= 0) {
            const uint64_t u = static_cast<uint64_t>(x);
            r[i] = u >= p ? u % p : u;
        } else {
            const uint64_t mag = static_cast<uint64_t>(-(x + 1)) + 1;
            const uint64_t m = mag >= p ? mag % p : mag;
            r[i] = m == 0 ? 0 : p - m;
        }
    }
    return r;
}

} // namespace

CoefficientTable gen_ramanujan(int64_t N) {
    if (N < 1 || N > 10000000) throw config_error("gen_ramanujan: need 1 <= N <= 1e7");
    const size_t M = static_cast<size_t>(N);

    // cube of the eta series (without the q^{1/8} prefactor) is lacunary:
    //   sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}
    struct Term { int64_t idx, val; };
    std::vector<Term> e3;
    for (int64_t k = 0;; ++k) {
        const int64_t idx = k * (k + 1) / 2;
        if (idx >= static_cast<int64_t>(M)) break;
        e3.push_back({idx, (k & 1) ? -(2 * k + 1) : (2 * k + 1)});
    }

    // sixth power: dense square of the sparse cube, exact in int64
    std::vector<int64_t> e6(M, 0);
    for (size_t i = 0; i < e3.size(); ++i) {
        for (size_t j = 0; j < e3.size(); ++j) {
            const int64_t idx = e3[i].idx + e3[j].idx;
            if (idx >= static_cast<int64_t>(M)) break;
            e6[static_cast<size_t>(idx)] += e3[i].val * e3[j].val;
        }
    }

    using fftc::ntt_primes;

    // twelfth power: residue-transform square under two primes, recombined
    // with a balanced two-term CRT (coefficients stay below 2^62)
    std::vector<int64_t> e12(M);
    {
        const uint64_t p0 = ntt_primes[0], p1 = ntt_primes[1];
        const auto r0 = fftc::ntt_convolve(to_residues(e6, p0), to_residues(e6, p0), M, 0);
        const auto r1 = fftc::ntt_convolve(to_residues(e6, p1), to_residues(e6, p1), M, 1);
        const uint64_t inv_p0 = fftc::pow_mod(p0 % p1, p1 - 2, p1);
        const unsigned __int128 P = static_cast<unsigned __int128>(p0) * p1;
        for (size_t i = 0; i < M; ++i) {
            uint64_t t = r1[i] >= r0[i] % p1 ? r1[i] - r0[i] % p1
                                             : r1[i] + p1 - r0[i] % p1;
            t = mulmod_u(t, inv_p0, p1);
            unsigned __int128 x = static_cast<unsigned __int128>(t) * p0 + r0[i];
            const unsigned __int128 mag = x > P / 2 ? P - x : x;
            if (mag > static_cast<unsigned __int128>(INT64_MAX))
                throw resource_error("gen_ramanujan: intermediate coefficient overflow");
            e12[i] = x > P / 2 ? -static_cast<int64_t>(static_cast<uint64_t>(mag))
                               : static_cast<int64_t>(static_cast<uint64_t>(mag));
        }
    }

    // twenty-fourth power: three primes and a mixed-radix (Garner) rebuild.
    // With digits x = a0 + p0 (a1 + p1 a2'), a2' balanced, the top digit
    // vanishes exactly when |coef| < p0 p1 / 2, in which case the value is
    // exact in 128-bit; otherwise the long double combination keeps a
    // relative error around 1e-18, far below the double rounding of the
    // final normalized values.
    std::vector<double> lam(M);
    {
        const uint64_t p0 = ntt_primes[0], p1 = ntt_primes[1], p2 = ntt_primes[2];
        const auto r0 = fftc::ntt_convolve(to_residues(e12, p0), to_residues(e12, p0), M, 0);
        const auto r1 = fftc::ntt_convolve(to_residues(e12, p1), to_residues(e12, p1), M, 1);
        const auto r2 = fftc::ntt_convolve(to_residues(e12, p2), to_residues(e12, p2), M, 2);
        const uint64_t inv_p0_p1 = fftc::pow_mod(p0 % p1, p1 - 2, p1);
        const uint64_t p0p1_mod_p2 = mulmod_u(p0 % p2, p1 % p2, p2);
        const uint64_t inv_p0p1_p2 = fftc::pow_mod(p0p1_mod_p2, p2 - 2, p2);
        const unsigned __int128 P01 = static_cast<unsigned __int128>(p0) * p1;
        const long double P01_ld = static_cast<long double>(p0) * static_cast<long double>(p1);

        for (size_t i = 0; i < M; ++i) {
            const uint64_t a0 = r0[i];
            uint64_t d1 = r1[i] >= a0 % p1 ? r1[i] - a0 % p1 : r1[i] + p1 - a0 % p1;
            const uint64_t a1 = mulmod_u(d1, inv_p0_p1, p1);
            const uint64_t low_mod_p2 =
                (mulmod_u(a1 % p2, p0 % p2, p2) + a0 % p2) % p2;
            uint64_t d2 = r2[i] >= low_mod_p2 ? r2[i] - low_mod_p2
                                              : r2[i] + p2 - low_mod_p2;
            const uint64_t a2 = mulmod_u(d2, inv_p0p1_p2, p2);

            // balance the low digit into (-P01/2, P01/2] and carry the wrap
            // into the top digit, so small coefficients of either sign land
            // in the exact integer branch
            const unsigned __int128 low = static_cast<unsigned __int128>(a1) * p0 + a0;
            __int128 lowb = static_cast<__int128>(low);
            uint64_t a2c = a2;
            if (low > P01 / 2) {
                lowb -= static_cast<__int128>(P01);
                a2c = a2 + 1 == p2 ? 0 : a2 + 1;
            }
            const int64_t a2b = a2c > p2 / 2 ? static_cast<int64_t>(a2c) - static_cast<int64_t>(p2)
                                             : static_cast<int64_t>(a2c);

            long double tau;
            if (a2b == 0) {
                tau = static_cast<long double>(lowb);
            } else {
                // |coef| >= P01/2 here, so the combination carries a relative
                // error near 1e-19, well under the final double rounding
                tau = static_cast<long double>(a2b) * P01_ld
                    + static_cast<long double>(lowb);
            }
            const long double n = static_cast<long double>(i + 1);
            lam[i] = static_cast<double>(tau / powl(n, 5.5L));
        }
    }

    CoefficientTable t;
    t.label = "delta_hecke";
    t.degree = 2;
    t.kind = CoefficientKind::gl2_cusp;
    t.values = std::move(lam);
    return t;
}

// ---------------------------------------------------------------------------
// symmetric power lift
// ---------------------------------------------------------------------------

namespace {

// Coefficients of prod_i (X - alpha_i) for the k+1 symmetric-power Satake
// parameters {e^{i(k-2m)theta} : m = 0..k}; c[0] = 1, c[j] = (-1)^j e_j.
void sym_char_poly(int k, double theta, std::vector<double>& c) {
    c.assign(1, 1.0);
    auto mul_quadratic = [&](double b1, double b2) {
        // multiply by X^2 + b1 X + b2
        std::vector<double> out(c.size() + 2, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            out[i] += c[i];
            out[i + 1] += b1 * c[i];
            out[i + 2] += b2 * c[i];
        }
        c.swap(out);
    };
    auto mul_linear = [&](double b1) {
        std::vector<double> out(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            out[i] += c[i];
            out[i + 1] += b1 * c[i];
        }
        c.swap(out);
    };
    for (int m = 0; 2 * m < k; ++m)
        mul_quadratic(-2.0 * std::cos((k - 2 * m) * theta), 1.0);
    if (k % 2 == 0) mul_linear(-1.0);  // unpaired parameter e^{i 0} = 1
}

// Complete homogeneous values h_0..h_emax by the Newton-style recurrence
// h_j = -sum_{t=1}^{min(j,k+1)} c[t] h_{j-t}.
void sym_prime_powers(const std::vector<double>& c, int emax, std::vector<double>& h) {
    const int deg = static_cast<int>(c.size()) - 1;  // = k+1
    h.assign(static_cast<size_t>(emax) + 1, 0.0);
    h[0] = 1.0;
    for (int j = 1; j <= emax; ++j) {
        double s = 0.0;
        for (int t = 1; t <= std::min(j, deg); ++t) s += c[static_cast<size_t>(t)] * h[static_cast<size_t>(j - t)];
        h[static_cast<size_t>(j)] = -s;
    }
}

} // namespace

CoefficientTable gen_sym_power(const CoefficientTable& base, int k, int64_t N) {
    if (k < 1 || k + 1 > 8) throw config_error("gen_sym_power: need 1 <= k <= 7");
    if (N < 1) throw config_error("gen_sym_power: need N >= 1");
    if (base.kind != CoefficientKind::gl2_cusp)
        throw config_error("gen_sym_power: base table must be gl2_cusp");
    if (base.size() < N)
        throw config_error("gen_sym_power: base table shorter than N");

    // Per-prime state: char poly and (lazily extended) prime-power values.
    // The sieve asks for pp(p, e) in nondecreasing e per prime, so a small
    // per-call recompute is cheap; primes above sqrt(N) only ever need e=1.
    std::vector<double> cpoly, hbuf;
    int64_t cached_p = -1;
    int cached_e = -1;
    std::vector<double> cached_h;

    auto pp = [&](int64_t p, int e) -> double {
        const double lam = base.at(p);
        if (std::abs(lam) > 2.0 + 1e-9)
            throw domain_error("gen_sym_power: base eigenvalue violates |lambda| <= 2 at p=" +
                               std::to_string(p));
        if (p != cached_p || e > cached_e) {
            const double theta = std::acos(std::clamp(lam / 2.0, -1.0, 1.0));
            sym_char_poly(k, theta, cpoly);
            sym_prime_powers(cpoly, e, hbuf);
            cached_p = p;
            cached_e = e;
            cached_h = hbuf;
        }
        const double v = cached_h[static_cast<size_t>(e)];
        if (e == 1 && std::abs(v) > k + 1 + 1e-9)
            throw domain_error("gen_sym_power: prime value exceeds the dimension bound");
        return v;
    };

    CoefficientTable t;
    t.label = "sym" + std::to_string(k) + "_" + base.label;
    t.degree = k + 1;
    t.kind = CoefficientKind::sym_power;
    std::vector<double> f;
    multiplicative_sieve(N, f, pp);
    t.values.assign(f.begin() + 1, f.end());
    return t;
}

// ---------------------------------------------------------------------------
// random model
// ---------------------------------------------------------------------------

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

CoefficientTable gen_random_model(int64_t N, uint64_t seed, int degree) {
    if (N < 1 || N > 100000000) throw config_error("gen_random_model: need 1 <= N <= 1e8");
    if (degree < 1) throw config_error("gen_random_model: need degree >= 1");

    CoefficientTable t;
    t.label = "random_d" + std::to_string(degree);
    t.degree = degree;
    t.kind = CoefficientKind::random_model;
    t.values.resize(static_cast<size_t>(N));
    for (int64_t n = 1; n <= N; ++n) {
        // counter-based Box-Muller: the draw is a pure function of (seed, n)
        const uint64_t h1 = splitmix64(seed ^ (0xD1B54A32D192ED03ULL * static_cast<uint64_t>(n)));
        const uint64_t h2 = splitmix64(h1 + 0x9E3779B97F4A7C15ULL);
        const double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1p-53;  // (0, 1]
        const double u2 = static_cast<double>(h2 >> 11) * 0x1p-53;          // [0, 1)
        t.values[static_cast<size_t>(n - 1)] =
            std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Satake angles
// ---------------------------------------------------------------------------

SatakeAngles satake_angles(const CoefficientTable& gl2,
                           const std::vector<int64_t>& primes) {
    if (gl2.kind != CoefficientKind::gl2_cusp)
        throw config_error("satake_angles: table must be gl2_cusp");
    SatakeAngles s;
    s.primes = primes;
    s.theta.reserve(primes.size());
    for (int64_t p : primes) {
        if (p < 2 || p > gl2.size())
            throw config_error("satake_angles: prime outside table range");
        const double lam = gl2.at(p);
        if (std::abs(lam) > 2.0 + 1e-9)
            throw domain_error("satake_angles: |lambda(p)| > 2");
        s.theta.push_back(std::acos(std::clamp(lam / 2.0, -1.0, 1.0)));
    }
    return s;
}

// ---------------------------------------------------------------------------
// profiles
// ---------------------------------------------------------------------------

RankinProfile rankin_selberg_profile(const CoefficientTable& t,
                                     const std::vector<double>& X_grid) {
    RankinProfile out;
    for (double X : X_grid) {
        if (!(X >= 1.0) || X > static_cast<double>(t.size()))
            throw config_error("rankin_selberg_profile: X outside table range");
        const int64_t top = static_cast<int64_t>(X);
        double s2 = 0.0;
        for (int64_t n = 1; n <= top; ++n) {
            const double v = t.at(n);
            s2 += v * v;
        }
        out.X.push_back(X);
        out.S2_over_X.push_back(s2 / X);
    }
    return out;
}

PartialSumProfile partial_sum_profile(const CoefficientTable& t,
                                      const std::vector<double>& X_grid) {
    if (t.kind == CoefficientKind::divisor)
        throw config_error(
            "partial_sum_profile: divisor tables have a main term; "
            "a cancellation exponent is not defined for them");
    PartialSumProfile out;
    out.reference_slope = (t.degree - 1.0) / (t.degree + 1.0);
    std::vector<double> lx, ly;
    for (double X : X_grid) {
        if (!(X >= 1.0) || X > static_cast<double>(t.size()))
            throw config_error("partial_sum_profile: X outside table range");
        const int64_t top = static_cast<int64_t>(X);
        double s = 0.0;
        for (int64_t n = 1; n <= top; ++n) s += t.at(n);
        out.X.push_back(X);
        out.S.push_back(s);
        if (s != 0.0) {
            lx.push_back(std::log(X));
            ly.push_back(std::log(std::abs(s)));
        }
    }
    if (lx.size() >= 2) out.fit = fit_line(lx, ly);
    return out;
}

// ---------------------------------------------------------------------------
// structural checks
// ---------------------------------------------------------------------------

double multiplicativity_defect(const CoefficientTable& t, int64_t cap) {
    cap = std::min<int64_t>(cap, t.size());
    double worst = 0.0;
    for (int64_t m = 2; m * m <= cap; ++m) {
        for (int64_t n = m + 1; m * n <= cap; ++n) {
            if (std::gcd(m, n) != 1) continue;
            worst = std::max(worst, std::abs(t.at(m * n) - t.at(m) * t.at(n)));
        }
    }
    return worst;
}

double hecke_defect(const CoefficientTable& t, int64_t pmax, int jmax) {
    double worst = 0.0;
    for (int64_t p : primes_up_to(pmax)) {
        int64_t pj = p;
        for (int j = 1; j <= jmax; ++j) {
            if (pj > t.size() / p) break;  // need p^{j+1} in range
            const int64_t pj1 = pj * p;
            const int64_t pjm1 = pj / p;
            const double lhs = t.at(p) * t.at(pj);
            const double rhs = t.at(pj1) + t.at(pjm1);
            worst = std::max(worst, std::abs(lhs - rhs));
            pj = pj1;
        }
    }
    return worst;
}

bool binomial_prime_power_check(const CoefficientTable& t, int64_t pmax, int kmax) {
    for (int64_t p : primes_up_to(pmax)) {
        int64_t pk = 1;
        for (int k = 1; k <= kmax; ++k) {
            if (pk > t.size() / p) break;
            pk *= p;
            if (t.at(pk) != binomial_coeff(k + t.degree - 1, t.degree - 1)) return false;
        }
    }
    return true;
}

double prime_bound_ratio(const CoefficientTable& t) {
    double worst = 0.0;
    for (int64_t p : primes_up_to(t.size()))
        worst = std::max(worst, std::abs(t.at(p)) / t.degree);
    return worst;
}

} // namespace shiftconv
