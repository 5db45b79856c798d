#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "covert/common.hpp"
#include "covert/fft.hpp"
#include "covert/framing.hpp"
#include "covert/pulse.hpp"
#include "covert/special.hpp"

namespace covert {

namespace detail {

// Refinement of a correlation peak. The coarse stage normalizes by the
// per-offset window energy, whose sample-to-sample fluctuation is of the
// same order as the mainlobe droop of the heavily oversampled template,
// so its argmax wobbles a sample or two. The raw correlation magnitude
// peaks at the true lag with a far larger margin (adjacent-lag noise is
// almost perfectly correlated, the droop is deterministic), so the exact
// sample is recovered by re-taking the argmax of |corr| near the coarse
// peak.
inline std::size_t refine_corr_peak(const cvec& corr, std::size_t coarse) {
    constexpr std::size_t kHalfWindow = 160;
    const std::size_t lo = coarse > kHalfWindow ? coarse - kHalfWindow : 0;
    const std::size_t hi = std::min(corr.size() - 1, coarse + kHalfWindow);
    std::size_t best = coarse;
    double bm = -1.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double v = std::abs(corr[k]);
        if (v > bm) {
            bm = v;
            best = k;
        }
    }
    return best;
}

}  // namespace detail

// Offset of the preamble inside rx. A coarse peak of the energy-normalized
// cross-correlation magnitude is refined to the raw-magnitude argmax in a
// window around it. The coarse peak must exceed `threshold` times the
// median correlation magnitude, otherwise SyncFailure is thrown. The default threshold of 5
// is calibrated for search windows up to millions of offsets
// (complex-magnitude correlation noise has Rayleigh tails, so the
// noise-only peak-to-median ratio stays near sqrt(log2 K)).
inline std::size_t sync_preamble(const cvec& rx, const cvec& tpl, double threshold = 5.0) {
    if (tpl.empty()) throw InvalidInput("sync_preamble: empty template");
    if (rx.size() < tpl.size()) throw InvalidInput("sync_preamble: input shorter than template");
    const cvec corr = xcorr_valid(rx, tpl);

    double tpl_e = 0.0;
    for (const auto& v : tpl) tpl_e += std::norm(v);

    // prefix energies of rx for per-offset window normalization
    std::vector<double> prefix(rx.size() + 1, 0.0);
    for (std::size_t i = 0; i < rx.size(); ++i) prefix[i + 1] = prefix[i] + std::norm(rx[i]);

    rvec mag(corr.size());
    for (std::size_t k = 0; k < corr.size(); ++k) {
        const double win_e = prefix[k + tpl.size()] - prefix[k];
        const double denom = std::sqrt(tpl_e * win_e);
        mag[k] = denom > 0.0 ? std::abs(corr[k]) / denom : 0.0;
    }

    const std::size_t peak =
        static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());

    // Noise-floor median over lags outside the correlation mainlobe. With
    // too few such lags (capture barely longer than the template) the test
    // is meaningless and the peak is accepted as is.
    constexpr std::size_t kMainlobe = 400;
    constexpr std::size_t kMinFloorLags = 256;
    rvec floor_mags;
    floor_mags.reserve(mag.size());
    for (std::size_t k = 0; k < mag.size(); ++k) {
        const std::size_t d = k > peak ? k - peak : peak - k;
        if (d > kMainlobe) floor_mags.push_back(mag[k]);
    }
    if (floor_mags.size() >= kMinFloorLags) {
        std::nth_element(floor_mags.begin(),
                         floor_mags.begin() + static_cast<std::ptrdiff_t>(floor_mags.size() / 2),
                         floor_mags.end());
        const double med = floor_mags[floor_mags.size() / 2];
        if (!(med > 0.0) || mag[peak] < threshold * med)
            throw SyncFailure("sync_preamble: correlation peak below threshold");
    }
    return detail::refine_corr_peak(corr, peak);
}

enum class PhaseConvention {
    standard,  // atan2(p_Q, p_I): full-quadrant, consistent with the pilot model
    printed,   // atan(p_I / p_Q): kept selectable for auditing comparisons
};

// Pilot phase estimate from the pilot half of one received slot.
inline double estimate_phase(const PulsePair& pp, std::span<const std::complex<double>> y_p,
                             PhaseConvention conv = PhaseConvention::standard) {
    if (y_p.size() != pp.pilot.size()) throw InvalidInput("estimate_phase: length mismatch");
    double norm = 0.0;
    for (double v : pp.pilot) norm += v * v;
    if (!(norm > 0.0)) throw UnusablePilot("estimate_phase: pilot has zero energy");
    double p_i = 0.0, p_q = 0.0;
    for (std::size_t i = 0; i < y_p.size(); ++i) {
        p_i += pp.pilot[i] * y_p[i].real();
        p_q += pp.pilot[i] * y_p[i].imag();
    }
    if (conv == PhaseConvention::printed) return std::atan(p_i / p_q);
    return std::atan2(p_q, p_i);
}

struct DemodResult {
    double r_I = 0.0;
    double r_Q = 0.0;
    int bit0 = 0;  // from the quadrature branch
    int bit1 = 0;  // from the in-phase branch
};

// Coherent matched-filter demodulation of the data half of one slot.
inline DemodResult demod_slot(const PulsePair& pp, std::span<const std::complex<double>> y_q,
                              double theta_hat) {
    if (y_q.size() != pp.data.size()) throw InvalidInput("demod_slot: length mismatch");
    const std::complex<double> rot = std::polar(1.0, -theta_hat);
    DemodResult d;
    for (std::size_t i = 0; i < y_q.size(); ++i) {
        const std::complex<double> v = y_q[i] * rot;
        d.r_I += v.real() * pp.data[i];
        d.r_Q += v.imag() * pp.data[i];
    }
    d.bit0 = (1 - sgn_pos(d.r_Q)) / 2;
    d.bit1 = (1 - sgn_pos(d.r_I)) / 2;
    return d;
}

struct PulseRecord {
    std::size_t slot = 0;
    double theta_hat = 0.0;
    double r_I = 0.0;
    double r_Q = 0.0;
    int bit0 = 0;
    int bit1 = 0;
};

struct DecodeReport {
    std::size_t n_t = 0;
    std::size_t bit_errors = 0;
    double p_e_bsc = 0.5;
    double c_bsc = 0.0;   // 1 - h2(p_e_bsc), bits per channel bit
    double b_bsc = 0.0;   // 2 n_t c_bsc, bits per frame
    std::size_t sync_offset = 0;
    bool pilot_unusable = false;  // c_p = 0: decoded with theta_hat = 0
    bool degenerate = false;      // n_t = 0: throughput forced to zero
    std::vector<PulseRecord> per_pulse;
    std::vector<std::uint8_t> decisions;  // post-unpad bit estimates
};

struct DecodeOptions {
    double sync_threshold = 5.0;
    PhaseConvention phase_convention = PhaseConvention::standard;
};

inline double bsc_capacity(double p_e) {
    return 1.0 - binary_entropy(p_e);
}

// Full receive chain for one packet: preamble synchronization, per-pulse
// pilot phase estimation, demodulation, de-padding, and error accounting
// against the true data bits.
inline DecodeReport decode_frame(const cvec& rx, const SecretKey& key,
                                 const PulseParams& params, const cvec& preamble_tpl,
                                 std::size_t segment_len,
                                 const std::vector<std::uint8_t>& truth_bits,
                                 const DecodeOptions& opts = {}) {
    params.validate();
    if (truth_bits.size() != 2 * key.n_t)
        throw InvalidInput("decode_frame: truth bit count must be 2 n_t");
    const std::size_t n_s = static_cast<std::size_t>(params.n_s());
    const std::size_t n_p = segment_len / n_s;
    if (key.t.size() != n_p) throw InvalidInput("decode_frame: key/segment slot mismatch");

    DecodeReport rep;
    rep.sync_offset = sync_preamble(rx, preamble_tpl, opts.sync_threshold);
    const std::size_t payload = rep.sync_offset + preamble_tpl.size();
    if (payload + segment_len > rx.size())
        throw InvalidInput("decode_frame: input too short for payload");

    const PulsePair pp = make_pulse_pair(params);
    const bool pilotless = !(params.c_p > 0.0);
    rep.pilot_unusable = pilotless;
    rep.n_t = key.n_t;

    std::vector<std::uint8_t> decisions;
    decisions.reserve(2 * key.n_t);
    for (std::size_t i = 0; i < n_p; ++i) {
        if (!key.t[i]) continue;
        const std::size_t base = payload + i * n_s;
        const std::span<const std::complex<double>> y_p(rx.data() + base, pp.pilot.size());
        const std::span<const std::complex<double>> y_q(rx.data() + base + pp.pilot.size(),
                                                        pp.data.size());
        const double theta = pilotless ? 0.0 : estimate_phase(pp, y_p, opts.phase_convention);
        const DemodResult d = demod_slot(pp, y_q, theta);
        rep.per_pulse.push_back({i, theta, d.r_I, d.r_Q, d.bit0, d.bit1});
        decisions.push_back(static_cast<std::uint8_t>(d.bit0));
        decisions.push_back(static_cast<std::uint8_t>(d.bit1));
    }

    if (key.n_t == 0) {
        rep.degenerate = true;
        rep.p_e_bsc = 0.5;
        rep.c_bsc = 0.0;
        rep.b_bsc = 0.0;
        return rep;
    }

    rep.decisions = unpad_bits(decisions, key.s);
    for (std::size_t i = 0; i < rep.decisions.size(); ++i)
        rep.bit_errors += (rep.decisions[i] != (truth_bits[i] & 1u)) ? 1u : 0u;
    rep.p_e_bsc = static_cast<double>(rep.bit_errors) / static_cast<double>(2 * key.n_t);
    rep.c_bsc = bsc_capacity(rep.p_e_bsc);
    rep.b_bsc = 2.0 * static_cast<double>(key.n_t) * rep.c_bsc;
    return rep;
}

}  // namespace covert
