#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "covert/common.hpp"
#include "covert/density.hpp"
#include "covert/framing.hpp"
#include "covert/pulse.hpp"

namespace covert {

struct SnrEstimate {
    double a_hat = 0.0;        // channel gain magnitude
    double sigma2_hat = 0.0;   // noise variance per quadrature
    double snr = 0.0;          // a_hat^2 c_q^2 / sigma2_hat
    double snr_db = 0.0;
    std::size_t n_bearing = 0;
    std::size_t n_empty = 0;
};

// Calibration-time SNR estimation from labeled slots. The estimator matched-
// filters each pulse-bearing slot with the exact transmitted waveform (the
// experimenter knows the symbol and the transmit phase), averages the
// complex outputs coherently, and reads the noise variance off the empty
// slots. Valid when the channel phase is held fixed over the calibration.
inline SnrEstimate estimate_snr(const std::vector<cvec>& slots,
                                const std::vector<std::uint8_t>& t,
                                const std::vector<int>& symbols, const rvec& thetas,
                                const PulseParams& params) {
    params.validate();
    if (slots.size() != t.size()) throw InvalidInput("estimate_snr: slots/t length mismatch");
    const PulsePair pp = make_pulse_pair(params);
    const double c2 = params.c() * params.c();
    const std::size_t n_s = static_cast<std::size_t>(params.n_s());

    std::complex<double> acc(0.0, 0.0);
    double noise_e = 0.0;
    std::size_t bearing = 0, empty = 0, pulse_idx = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const cvec& w = slots[i];
        if (w.size() != n_s) throw InvalidInput("estimate_snr: slot length mismatch");
        if (t[i]) {
            if (pulse_idx >= symbols.size() || pulse_idx >= thetas.size())
                throw InvalidInput("estimate_snr: missing symbol/theta for bearing slot");
            const cvec u = assemble_pulse(pp, symbols[pulse_idx], thetas[pulse_idx]);
            std::complex<double> ip(0.0, 0.0);
            for (std::size_t m = 0; m < n_s; ++m) ip += std::conj(u[m]) * w[m];
            acc += ip / c2;
            ++bearing;
            ++pulse_idx;
        } else {
            for (const auto& v : w) noise_e += std::norm(v);
            ++empty;
        }
    }
    if (bearing == 0)
        throw InsufficientCalibration("estimate_snr: no pulse-bearing slots");
    if (empty == 0)
        throw InsufficientCalibration("estimate_snr: no empty slots");

    SnrEstimate e;
    e.n_bearing = bearing;
    e.n_empty = empty;
    e.a_hat = std::abs(acc / static_cast<double>(bearing));
    e.sigma2_hat = noise_e / (2.0 * static_cast<double>(n_s) * static_cast<double>(empty));
    e.snr = e.a_hat * e.a_hat * params.c_q * params.c_q / e.sigma2_hat;
    e.snr_db = 10.0 * std::log10(e.snr);
    return e;
}

// Log-likelihood ratio of a whole segment of independent slots.
inline double frame_llr(const SlotModel& m, const cvec& segment) {
    const std::size_t n_s = static_cast<std::size_t>(m.n_s());
    if (segment.size() % n_s != 0) throw InvalidInput("frame_llr: segment not slot-aligned");
    const std::size_t n_slots = segment.size() / n_s;
    double llr = 0.0;
    for (std::size_t i = 0; i < n_slots; ++i) {
        const std::span<const std::complex<double>> w(segment.data() + i * n_s, n_s);
        llr += slot_llr(m, w);
    }
    return llr;
}

// Total received energy, the classical radiometer statistic.
inline double radiometer_stat(const cvec& segment) {
    double e = 0.0;
    for (const auto& v : segment) e += std::norm(v);
    return e;
}

// Midpoint threshold between the expected energies under the two hypotheses.
inline double radiometer_threshold(const SlotModel& m, std::size_t n_slots) {
    const double n = static_cast<double>(n_slots) * m.n_s();
    const double noise = 2.0 * n * m.sigma2;
    const double signal = m.alpha * static_cast<double>(n_slots) * m.a * m.a * m.c2();
    return noise + 0.5 * signal;
}

struct DetectionReport {
    std::size_t trials = 0;        // labeled segments scored
    std::size_t llr_errors = 0;
    std::size_t radiometer_errors = 0;
    double pe_llr = 0.5;
    double pe_radiometer = 0.5;
    double se_llr = 0.0;           // binomial standard error
    double se_radiometer = 0.0;
    double llr_mean_h0 = 0.0;
    double llr_mean_h1 = 0.0;
};

// Score labeled segments with both detectors: the likelihood-ratio test at
// threshold 0 (optimal under equal priors) and the radiometer baseline.
// Downstream checks compare pe_llr against the Hellinger lower bound; the
// empirical error of the optimal test must dominate the bound up to
// sampling error.
inline DetectionReport empirical_pe(const SlotModel& m, const std::vector<cvec>& segments,
                                    const std::vector<int>& labels) {
    if (segments.size() != labels.size())
        throw InvalidInput("empirical_pe: segments/labels length mismatch");
    if (segments.empty()) throw InvalidInput("empirical_pe: no trials");
    DetectionReport rep;
    rep.trials = segments.size();
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const double llr = frame_llr(m, segments[i]);
        const std::size_t n_slots = segments[i].size() / static_cast<std::size_t>(m.n_s());
        const double rad = radiometer_stat(segments[i]);
        const double thr = radiometer_threshold(m, n_slots);
        const int d_llr = llr > 0.0 ? 1 : 0;
        const int d_rad = rad > thr ? 1 : 0;
        if (labels[i]) {
            rep.llr_mean_h1 += llr;
            ++n1;
        } else {
            rep.llr_mean_h0 += llr;
            ++n0;
        }
        if (d_llr != labels[i]) ++rep.llr_errors;
        if (d_rad != labels[i]) ++rep.radiometer_errors;
    }
    if (n0) rep.llr_mean_h0 /= static_cast<double>(n0);
    if (n1) rep.llr_mean_h1 /= static_cast<double>(n1);
    const double n = static_cast<double>(rep.trials);
    rep.pe_llr = static_cast<double>(rep.llr_errors) / n;
    rep.pe_radiometer = static_cast<double>(rep.radiometer_errors) / n;
    rep.se_llr = std::sqrt(std::max(rep.pe_llr * (1.0 - rep.pe_llr), 1.0 / n) / n);
    rep.se_radiometer =
        std::sqrt(std::max(rep.pe_radiometer * (1.0 - rep.pe_radiometer), 1.0 / n) / n);
    return rep;
}

}  // namespace covert
