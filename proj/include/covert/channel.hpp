#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "covert/common.hpp"
#include "covert/rng.hpp"

namespace covert {

enum class PhaseMode {
    fixed,             // theta_i = theta_fixed for every slot
    uniform_per_slot,  // theta_i drawn uniformly per slot, constant within it
};

struct ChannelParams {
    double a = 1.0;       // gain magnitude
    double sigma2 = 1.0;  // noise variance per quadrature (complex variance 2 sigma2)
    PhaseMode phase_mode = PhaseMode::uniform_per_slot;
    double theta_fixed = 0.0;

    void validate() const {
        if (!(a >= 0.0)) throw InvalidInput("ChannelParams: gain must be >= 0");
        if (!(sigma2 >= 0.0)) throw InvalidInput("ChannelParams: sigma2 must be >= 0");
    }
};

// y_i = a e^{j theta_i} x_i + z_i applied to one slot. Each slot consumes
// its own substream derived from (seed, slot_index), so outputs are
// independent of processing order and chunking.
inline cvec channel_slot(std::span<const std::complex<double>> x, const ChannelParams& p,
                         std::uint64_t seed, std::uint64_t slot_index) {
    SplitMix64 g(derive_seed(seed, slot_index));
    double theta = p.theta_fixed;
    if (p.phase_mode == PhaseMode::uniform_per_slot) theta = 2.0 * kPi * uniform01(g);
    const std::complex<double> h = p.a * std::polar(1.0, theta);
    const double sq = std::sqrt(p.sigma2);
    cvec y(x.size());
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t m = 0; m < x.size(); ++m) {
        const double re = n(g), im = n(g);
        y[m] = h * x[m] + std::complex<double>(sq * re, sq * im);
    }
    return y;
}

inline std::vector<cvec> channel_transmit(const std::vector<cvec>& slots, const ChannelParams& p,
                                          std::uint64_t seed, std::uint64_t first_slot = 0) {
    p.validate();
    std::vector<cvec> out;
    out.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i)
        out.push_back(channel_slot(slots[i], p, seed, first_slot + i));
    return out;
}

}  // namespace covert
