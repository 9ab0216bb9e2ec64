#include "shiftconv/fftc.hpp"
#include "shiftconv/errors.hpp"

#include <cmath>

namespace shiftconv::fftc {

// ----------------------------------------------------------------------
// complex FFT
// ----------------------------------------------------------------------

void fft_inplace(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw config_error("fft_inplace: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

std::vector<double> cross_correlate(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    std::size_t max_lag) {
    // need L > max index of b so that no wrapped lag touches the data
    std::size_t need = std::max(a.size(), b.size()) + max_lag + 1;
    std::size_t L = 1;
    while (L < need) L <<= 1;

    std::vector<cplx> fa(L), fb(L);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < L; ++i) fa[i] = std::conj(fa[i]) * fb[i];
    fft_inplace(fa, true);

    std::vector<double> out(max_lag + 1);
    for (std::size_t h = 0; h <= max_lag; ++h) out[h] = fa[h].real();
    return out;
}

// ----------------------------------------------------------------------
// NTT
// ----------------------------------------------------------------------

static inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    base %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, base, p);
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    return r;
}

static void ntt_inplace(std::vector<std::uint64_t>& a, bool inverse, int prime_index) {
    const std::uint64_t p = ntt_primes[prime_index];
    const std::uint64_t g = ntt_roots[prime_index];
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw config_error("ntt_inplace: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t wlen = pow_mod(g, (p - 1) / len, p);
        if (inverse) wlen = pow_mod(wlen, p - 2, p);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t w = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::uint64_t u = a[i + j];
                const std::uint64_t v = mul_mod(a[i + j + len / 2], w, p);
                // p may sit just under 2^64, so the sum can carry out of the
                // word; the carry-aware form stays exact for every prime here
                std::uint64_t s = u + v;
                if (s < u || s >= p) s -= p;
                a[i + j] = s;
                a[i + j + len / 2] = u >= v ? u - v : u + (p - v);
                w = mul_mod(w, wlen, p);
            }
        }
    }
    if (inverse) {
        const std::uint64_t ninv = pow_mod(n % p, p - 2, p);
        for (auto& x : a) x = mul_mod(x, ninv, p);
    }
}

std::vector<std::uint64_t> ntt_convolve(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b,
                                        std::size_t out_len, int prime_index) {
    if (prime_index < 0 || prime_index >= ntt_prime_count)
        throw config_error("ntt_convolve: bad prime index");
    // full linear convolution length, so no circular aliasing can reach
    // the requested prefix
    const std::size_t full = a.size() + b.size() - 1;
    std::size_t L = 1;
    while (L < full) L <<= 1;

    std::vector<std::uint64_t> fa(L, 0), fb;
    std::copy(a.begin(), a.end(), fa.begin());
    ntt_inplace(fa, false, prime_index);

    const std::uint64_t p = ntt_primes[prime_index];
    if (&a == &b) {
        for (auto& x : fa) x = mul_mod(x, x, p);
    } else {
        fb.assign(L, 0);
        std::copy(b.begin(), b.end(), fb.begin());
        ntt_inplace(fb, false, prime_index);
        for (std::size_t i = 0; i < L; ++i) fa[i] = mul_mod(fa[i], fb[i], p);
    }
    ntt_inplace(fa, true, prime_index);
    fa.resize(std::min(out_len, full));
    fa.resize(out_len, 0);
    return fa;
}

} // namespace shiftconv::fftc
