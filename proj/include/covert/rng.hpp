#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace covert {

// SplitMix64: tiny counter-style generator with full 64-bit output.
// Used everywhere so that derived substreams are cheap to construct:
// one generator per (seed, index) pair makes slot-level processing
// order-independent and bit-exact under any parallel schedule.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// 64-bit avalanche finalizer (same constants as SplitMix64's mixer).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic substream derivation. Streams for distinct tag tuples are
// independent for practical purposes; the same tuple always yields the same
// stream regardless of how work is scheduled.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
    h = mix64(h ^ mix64(a ^ 0x13198a2e03707344ULL));
    h = mix64(h ^ mix64(b ^ 0xa4093822299f31d0ULL));
    h = mix64(h ^ mix64(c ^ 0x082efa98ec4e6c89ULL));
    return h;
}

inline double uniform01(SplitMix64& g) {
    return (g() >> 11) * 0x1.0p-53;
}

// One complex sample with independent zero-mean Gaussian quadratures of
// standard deviation sigma_q each (total variance 2 sigma_q^2).
inline std::complex<double> complex_normal(SplitMix64& g, double sigma_q) {
    std::normal_distribution<double> n(0.0, sigma_q);
    const double re = n(g);
    const double im = n(g);
    return {re, im};
}

}  // namespace covert
