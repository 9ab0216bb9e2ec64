#pragma once
//
// Transforms used by the library:
//
//  * an iterative radix-2 complex FFT, used for the cross-correlation path
//    of the shifted-sum evaluator, and
//  * number-theoretic transforms modulo three 64-bit primes, used to build
//    exact integer coefficient sequences by repeated series squaring.
//
// The NTT primes (all with large power-of-two torsion and verified
// primitive roots):
//
//    p0 = 2^64 - 2^32 + 1          root 7    (2-adic valuation 32)
//    p1 = 29 * 2^57 + 1            root 3    (2-adic valuation 57)
//    p2 = 27 * 2^56 + 1            root 5    (2-adic valuation 56)
//
// A product of values bounded by B stays reconstructible from residues mod
// p0*p1 while 2B < p0*p1 ~ 7.7e37, and mod all three while 2B < ~1.5e56.
//

#include <complex>
#include <cstdint>
#include <vector>

namespace shiftconv::fftc {

using cplx = std::complex<double>;

// In-place radix-2 FFT; size must be a power of two.  inverse=true applies
// the conjugate transform and divides by the size.
void fft_inplace(std::vector<cplx>& a, bool inverse);

// Linear cross-correlation c[h] = sum_n a[n] * b[n+h] for h = 0..max_lag,
// via zero-padded FFTs.  a and b are real arrays indexed from 0.
std::vector<double> cross_correlate(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    std::size_t max_lag);

inline constexpr int ntt_prime_count = 3;
inline constexpr std::uint64_t ntt_primes[3] = {
    0xFFFFFFFF00000001ULL,        // 2^64 - 2^32 + 1
    4179340454199820289ULL,       // 29 * 2^57 + 1
    1945555039024054273ULL,       // 27 * 2^56 + 1
};
inline constexpr std::uint64_t ntt_roots[3] = {7, 3, 5};

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p);

// First out_len coefficients of the linear convolution a*b, computed mod
// ntt_primes[prime_index].  Inputs are residues (already reduced).
std::vector<std::uint64_t> ntt_convolve(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b,
                                        std::size_t out_len, int prime_index);

} // namespace shiftconv::fftc
