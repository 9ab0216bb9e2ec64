#pragma once
//
// Arithmetic coefficient sequences
//
// Four families of multiplicative (or deliberately non-multiplicative)
// sequences a(1..N), each normalized so that the mean square is O(log^c N):
//
//   divisor       tau_d(n) = #{(n_1,...,n_d) : n_1 ... n_d = n}
//   gl2_cusp      lambda(n) = tau(n) / n^{11/2}, tau = discriminant form
//                 coefficients, computed exactly by eta-power squaring
//   sym_power     A(n) from the degree k+1 symmetric power lift of a
//                 gl2_cusp table, filled multiplicatively from Satake angles
//   random_model  i.i.d. standard normal draws, counter-based so the table
//                 is a pure function of (seed, n)
//
// All tables are 1-based: at(n) is defined for 1 <= n <= size().
//

#include <cstdint>
#include <string>
#include <vector>

#include "shiftconv/errors.hpp"
#include "shiftconv/fit.hpp"

namespace shiftconv {

enum class CoefficientKind : uint8_t {
    divisor = 0,
    gl2_cusp = 1,
    sym_power = 2,
    random_model = 3,
};

const char* kind_name(CoefficientKind k);

struct CoefficientTable {
    std::string label;
    int degree = 1;                // d: length of the implied Euler product
    CoefficientKind kind = CoefficientKind::divisor;
    std::vector<double> values;    // values[i] = a(i+1)

    int64_t size() const { return static_cast<int64_t>(values.size()); }
    double at(int64_t n) const { return values[static_cast<size_t>(n - 1)]; }
};

struct SatakeAngles {
    std::vector<int64_t> primes;
    std::vector<double> theta;     // theta_p = acos(lambda(p)/2)
};

// --------------------------------------------------------------------------
// generators
// --------------------------------------------------------------------------

// tau_d via a linear multiplicative sieve; exact in double for the supported
// range (1 <= d <= 16, N <= 1e8).
CoefficientTable gen_divisor(int d, int64_t N);

// Hecke eigenvalues of the weight-12 discriminant form, normalized to
// |lambda(p)| <= 2.  Exact integer pipeline (sparse eta^3 square, then two
// rounds of residue-transform squaring) up to N <= 1e7.
CoefficientTable gen_ramanujan(int64_t N);

// Symmetric power lift: degree k+1 table built from the Satake angles of a
// gl2_cusp base table.  Requires k >= 1 and k+1 <= 8; base must cover the
// primes <= N.
CoefficientTable gen_sym_power(const CoefficientTable& base, int k, int64_t N);

// Counter-based N(0,1) draws; a pure function of (seed, n) so regeneration
// and thread count cannot change the table.
CoefficientTable gen_random_model(int64_t N, uint64_t seed, int degree);

// Satake angles of a gl2_cusp table at the given primes.
SatakeAngles satake_angles(const CoefficientTable& gl2,
                           const std::vector<int64_t>& primes);

// --------------------------------------------------------------------------
// profiles
// --------------------------------------------------------------------------

struct RankinProfile {
    std::vector<double> X;
    std::vector<double> S2_over_X;   // (1/X) sum_{n<=X} a(n)^2
};

RankinProfile rankin_selberg_profile(const CoefficientTable& t,
                                     const std::vector<double>& X_grid);

struct PartialSumProfile {
    std::vector<double> X;
    std::vector<double> S;           // sum_{n<=X} a(n)
    LineFit fit;                     // log |S| against log X
    double reference_slope;          // (d-1)/(d+1), the square-root
                                     // cancellation benchmark for degree d
};

// Rejects divisor tables (their partial sums grow like X log^{d-1} X, so a
// power-law fit is meaningless).
PartialSumProfile partial_sum_profile(const CoefficientTable& t,
                                      const std::vector<double>& X_grid);

// --------------------------------------------------------------------------
// structural checks (used by the unit tests and the coeffs suite)
// --------------------------------------------------------------------------

// max over coprime pairs m*n <= cap of |a(mn) - a(m)a(n)|
double multiplicativity_defect(const CoefficientTable& t, int64_t cap = 10000);

// max over p <= pmax, 1 <= j <= jmax of
// |lambda(p) lambda(p^j) - lambda(p^{j+1}) - lambda(p^{j-1})|
double hecke_defect(const CoefficientTable& t, int64_t pmax = 100, int jmax = 5);

// true iff tau_d(p^k) = C(k+d-1, d-1) exactly for p <= pmax, k <= kmax
bool binomial_prime_power_check(const CoefficientTable& t, int64_t pmax = 50,
                                int kmax = 6);

// max over primes p <= size of |A(p)| / degree (Ramanujan bound: <= 1)
double prime_bound_ratio(const CoefficientTable& t);

// simple utilities shared across modules
std::vector<int64_t> primes_up_to(int64_t n);
double binomial_coeff(int top, int bottom);

} // namespace shiftconv
