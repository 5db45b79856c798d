#pragma once

#include <array>
#include <cmath>
#include <span>

#include "covert/common.hpp"
#include "covert/pulse.hpp"
#include "covert/special.hpp"

namespace covert {

// Per-slot observation model at the adversary: with probability 1-alpha the
// slot is noise only, otherwise it carries one pulse with unknown uniform
// phase and equiprobable symbol. All densities are evaluated in the log
// domain; Bessel factors use log_i0 to survive high-SNR arguments.
struct SlotModel {
    rvec cp;        // pilot amplitude vector (norm c_p)
    rvec cq;        // data amplitude vector (norm c_q)
    double alpha = 0.0;
    double a = 0.0;       // adversary channel gain
    double sigma2 = 1.0;  // adversary noise variance per quadrature
    double c_p = 0.0;
    double c_q = 0.0;

    int n_s() const { return static_cast<int>(cp.size() + cq.size()); }
    double c2() const { return c_p * c_p + c_q * c_q; }
    // log of the signal attenuation factor exp(-a^2 c^2 / (2 sigma^2))
    double kappa() const { return a * a * c2() / (2.0 * sigma2); }
    double bessel_scale() const { return a / sigma2; }
};

inline SlotModel make_slot_model(const PulseParams& params, double alpha, double a,
                                 double sigma2) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("SlotModel: alpha outside [0,1]");
    if (!(a >= 0.0)) throw InvalidInput("SlotModel: gain must be >= 0");
    if (!(sigma2 > 0.0)) throw InvalidInput("SlotModel: sigma2 must be > 0");
    const PulsePair pp = make_pulse_pair(params);
    SlotModel m;
    m.cp = pp.pilot;
    m.cq = pp.data;
    m.alpha = alpha;
    m.a = a;
    m.sigma2 = sigma2;
    m.c_p = params.c_p;
    m.c_q = params.c_q;
    return m;
}

// The slot likelihood ratio depends on the observation only through the four
// pilot/data projections and, for the absolute densities, the energy.
struct SlotStats {
    double Ap = 0.0;  // <cp, Re w_p>
    double Bp = 0.0;  // <cp, Im w_p>
    double Aq = 0.0;  // <cq, Re w_q>
    double Bq = 0.0;  // <cq, Im w_q>
    double w2 = 0.0;  // ||w||^2 over the whole slot
};

inline SlotStats slot_stats(const SlotModel& m, std::span<const std::complex<double>> w) {
    if (w.size() != static_cast<std::size_t>(m.n_s()))
        throw InvalidInput("slot_stats: slot length mismatch");
    SlotStats s;
    const std::size_t np = m.cp.size();
    for (std::size_t i = 0; i < np; ++i) {
        s.Ap += m.cp[i] * w[i].real();
        s.Bp += m.cp[i] * w[i].imag();
        s.w2 += std::norm(w[i]);
    }
    for (std::size_t i = 0; i < m.cq.size(); ++i) {
        const auto& v = w[np + i];
        s.Aq += m.cq[i] * v.real();
        s.Bq += m.cq[i] * v.imag();
        s.w2 += std::norm(v);
    }
    return s;
}

// f_k, k = 0..3: the four sign combinations of the data projection folded
// into the pilot projection,
//   f_k = sqrt((Ap + (-1)^{floor(k/2)} Aq)^2 + (Bp + (-1)^k Bq)^2).
inline std::array<double, 4> f_k(const SlotStats& s) {
    std::array<double, 4> f{};
    for (int k = 0; k < 4; ++k) {
        const double e1 = (k / 2 == 0) ? 1.0 : -1.0;
        const double e2 = (k % 2 == 0) ? 1.0 : -1.0;
        f[static_cast<std::size_t>(k)] = std::hypot(s.Ap + e1 * s.Aq, s.Bp + e2 * s.Bq);
    }
    return f;
}

// log p0(w): circularly symmetric Gaussian, variance sigma2 per quadrature.
inline double log_density_h0(const SlotModel& m, double w2) {
    return -m.n_s() * std::log(2.0 * kPi * m.sigma2) - w2 / (2.0 * m.sigma2);
}

// log [ p1(w) / p0(w) ]: mixture of the empty slot and the four-phase,
// phase-averaged pulse-bearing slot.
inline double slot_llr_from_stats(const SlotModel& m, const SlotStats& s) {
    if (m.alpha == 0.0) return 0.0;
    const auto f = f_k(s);
    const double u = m.bessel_scale();
    double terms[5];
    double bess[4];
    for (int k = 0; k < 4; ++k) bess[k] = log_i0(u * f[static_cast<std::size_t>(k)]);
    const double pulse_part = std::log(m.alpha / 4.0) - m.kappa() + log_sum_exp(bess, 4);
    if (m.alpha >= 1.0) return pulse_part;
    terms[0] = std::log1p(-m.alpha);
    terms[1] = pulse_part;
    return log_sum_exp(terms, 2);
}

inline double slot_llr(const SlotModel& m, std::span<const std::complex<double>> w) {
    return slot_llr_from_stats(m, slot_stats(m, w));
}

inline double log_density_h1(const SlotModel& m, std::span<const std::complex<double>> w) {
    const SlotStats s = slot_stats(m, w);
    return log_density_h0(m, s.w2) + slot_llr_from_stats(m, s);
}

}  // namespace covert
