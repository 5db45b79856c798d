#pragma once

#include <bit>
#include <complex>
#include <cstddef>

#include "covert/common.hpp"

namespace covert {

// In-place iterative radix-2 FFT. Length must be a power of two.
// The inverse transform includes the 1/n scaling.
inline void fft_inplace(cvec& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidInput("fft_inplace: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

inline std::size_t next_pow2(std::size_t n) {
    return std::bit_ceil(n);
}

// Linear cross-correlation r[k] = sum_m conj(tpl[m]) rx[k+m] for
// k = 0 .. rx.size()-tpl.size(), via zero-padded FFTs.
inline cvec xcorr_valid(const cvec& rx, const cvec& tpl) {
    if (tpl.empty() || rx.size() < tpl.size())
        throw InvalidInput("xcorr_valid: template longer than input");
    const std::size_t nfft = next_pow2(rx.size() + tpl.size());
    cvec fa(nfft), fb(nfft);
    std::copy(rx.begin(), rx.end(), fa.begin());
    std::copy(tpl.begin(), tpl.end(), fb.begin());
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < nfft; ++i) fa[i] *= std::conj(fb[i]);
    fft_inplace(fa, true);
    cvec out(rx.size() - tpl.size() + 1);
    std::copy(fa.begin(), fa.begin() + static_cast<std::ptrdiff_t>(out.size()), out.begin());
    return out;
}

}  // namespace covert
