#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "covert/common.hpp"
#include "covert/pulse.hpp"
#include "covert/rng.hpp"

namespace covert {

// Shared secret: slot-selection vector t (Bernoulli alpha per slot) and
// one-time pad s covering the 2 bits of every selected slot.
struct SecretKey {
    std::vector<std::uint8_t> t;  // length n_p, 0/1
    std::vector<std::uint8_t> s;  // length 2 * n_t, 0/1
    std::size_t n_t = 0;
};

inline SecretKey gen_secret(std::size_t n_p, double alpha, std::uint64_t seed) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("gen_secret: alpha outside [0,1]");
    SecretKey k;
    k.t.resize(n_p);
    SplitMix64 g(derive_seed(seed, 0x5ec2e7ULL));
    for (std::size_t i = 0; i < n_p; ++i) k.t[i] = uniform01(g) < alpha ? 1 : 0;
    for (auto v : k.t) k.n_t += v;
    k.s.resize(2 * k.n_t);
    for (auto& b : k.s) b = static_cast<std::uint8_t>(g() & 1u);
    return k;
}

// Gray map from padded bit pairs to symbols:
//   (0,0) -> 1, (0,1) -> 2, (1,1) -> 3, (1,0) -> 4.
// The first bit of the pair decides the quadrature sign, the second the
// in-phase sign.
inline int pair_to_symbol(int b0, int b1) {
    if (b0 == 0) return b1 == 0 ? 1 : 2;
    return b1 == 1 ? 3 : 4;
}

inline std::pair<int, int> symbol_to_pair(int x) {
    switch (x) {
        case 1: return {0, 0};
        case 2: return {0, 1};
        case 3: return {1, 1};
        case 4: return {1, 0};
        default: throw InvalidInput("symbol_to_pair: symbol outside {1,2,3,4}");
    }
}

// XOR the data bits with the pad and map consecutive pairs to symbols.
inline std::vector<int> encode_message(const std::vector<std::uint8_t>& data,
                                       const std::vector<std::uint8_t>& pad) {
    if (data.size() != pad.size())
        throw InvalidInput("encode_message: data/pad length mismatch");
    if (data.size() % 2 != 0)
        throw InvalidInput("encode_message: bit count must be even");
    std::vector<int> symbols(data.size() / 2);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const int b0 = (data[2 * i] ^ pad[2 * i]) & 1;
        const int b1 = (data[2 * i + 1] ^ pad[2 * i + 1]) & 1;
        symbols[i] = pair_to_symbol(b0, b1);
    }
    return symbols;
}

inline std::vector<std::uint8_t> unpad_bits(const std::vector<std::uint8_t>& decisions,
                                            const std::vector<std::uint8_t>& pad) {
    if (decisions.size() != pad.size())
        throw InvalidInput("unpad_bits: decisions/pad length mismatch");
    std::vector<std::uint8_t> out(decisions.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (decisions[i] ^ pad[i]) & 1;
    return out;
}

inline rvec barker13() {
    return {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1};
}

// Root-raised-cosine taps, odd length span*sps + 1, normalized to unit
// energy. Time is measured in symbol durations.
inline rvec rrc_taps(double beta, int span_symbols, int sps) {
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("rrc_taps: beta outside (0,1)");
    if (span_symbols < 1 || sps < 1) throw InvalidInput("rrc_taps: bad span or sps");
    const int n = span_symbols * sps + 1;
    rvec h(static_cast<std::size_t>(n));
    const double mid = 0.5 * (n - 1);
    for (int i = 0; i < n; ++i) {
        const double t = (i - mid) / sps;
        double v;
        if (std::abs(t) < 1e-12) {
            v = 1.0 - beta + 4.0 * beta / kPi;
        } else if (std::abs(std::abs(4.0 * beta * t) - 1.0) < 1e-9) {
            v = (beta / std::sqrt(2.0)) *
                ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * beta)) +
                 (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * beta)));
        } else {
            const double x = 4.0 * beta * t;
            v = (std::sin(kPi * t * (1.0 - beta)) + x * std::cos(kPi * t * (1.0 + beta))) /
                (kPi * t * (1.0 - x * x));
        }
        h[static_cast<std::size_t>(i)] = v;
    }
    double e = 0.0;
    for (double v : h) e += v * v;
    const double s = 1.0 / std::sqrt(e);
    for (double& v : h) v *= s;
    return h;
}

// Synchronization preamble: the 13-chip Barker code repeated five times,
// impulse-modulated at sps samples per symbol and shaped by the RRC filter.
// Output length is 65*sps + span*sps (full convolution).
inline cvec build_preamble(double amplitude, int sps = 200, double beta = 0.35,
                           int span_symbols = 12, int repeats = 5) {
    if (!(amplitude >= 0.0)) throw InvalidInput("build_preamble: amplitude must be >= 0");
    const rvec b = barker13();
    const rvec h = rrc_taps(beta, span_symbols, sps);
    const std::size_t n_sym = b.size() * static_cast<std::size_t>(repeats);
    const std::size_t up_len = n_sym * static_cast<std::size_t>(sps);
    const std::size_t out_len = up_len + h.size() - 1;
    cvec out(out_len, 0.0);
    for (std::size_t k = 0; k < n_sym; ++k) {
        const double sym = amplitude * b[k % b.size()];
        const std::size_t base = k * static_cast<std::size_t>(sps);
        for (std::size_t m = 0; m < h.size(); ++m)
            out[base + m] += sym * h[m];
    }
    return out;
}

// One transmission: preamble, an "on" segment of n_p pulse slots (plus a
// zero-padded residual so the segment spans exactly round(T * fs) samples),
// and an equally long silent "off" segment.
struct Frame {
    cvec preamble;
    cvec alice_on;               // length segment_len
    std::size_t segment_len = 0; // alice_off is implicit zeros of this length
    std::size_t n_p = 0;
    int n_s = 0;

    std::size_t packet_len() const { return preamble.size() + 2 * segment_len; }

    cvec packet() const {
        cvec p;
        p.reserve(packet_len());
        p.insert(p.end(), preamble.begin(), preamble.end());
        p.insert(p.end(), alice_on.begin(), alice_on.end());
        p.resize(packet_len(), 0.0);
        return p;
    }
};

inline std::size_t pulses_per_segment(double T, double sample_rate, int n_s) {
    if (!(T > 0.0) || !(sample_rate > 0.0))
        throw InvalidInput("pulses_per_segment: T and sample_rate must be > 0");
    const auto seg = static_cast<std::size_t>(std::llround(T * sample_rate));
    return seg / static_cast<std::size_t>(n_s);
}

inline Frame build_frame(const PulseParams& params, const SecretKey& key,
                         const std::vector<int>& symbols, const rvec& thetas, double T,
                         double sample_rate, double preamble_amplitude) {
    params.validate();
    const auto seg = static_cast<std::size_t>(std::llround(T * sample_rate));
    const std::size_t n_p = seg / static_cast<std::size_t>(params.n_s());
    if (key.t.size() != n_p)
        throw InvalidInput("build_frame: key length does not match slot count");
    if (symbols.size() != key.n_t || thetas.size() != key.n_t)
        throw InvalidInput("build_frame: need one symbol and one theta per selected slot");

    const PulsePair pp = make_pulse_pair(params);
    Frame f;
    f.preamble = build_preamble(preamble_amplitude);
    f.alice_on.assign(seg, 0.0);
    f.segment_len = seg;
    f.n_p = n_p;
    f.n_s = params.n_s();

    std::size_t pulse_idx = 0;
    for (std::size_t i = 0; i < n_p; ++i) {
        if (!key.t[i]) continue;
        const cvec u = assemble_pulse(pp, symbols[pulse_idx], thetas[pulse_idx]);
        std::copy(u.begin(), u.end(),
                  f.alice_on.begin() + static_cast<std::ptrdiff_t>(i * u.size()));
        ++pulse_idx;
    }
    return f;
}

}  // namespace covert
