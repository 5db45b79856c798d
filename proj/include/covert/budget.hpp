#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "covert/common.hpp"
#include "covert/oracle.hpp"
#include "covert/pulse.hpp"

namespace covert {

// log(1 / (1 - 2 delta^2)); requires delta in [0, 1/sqrt(2)).
inline double covertness_log_term(double delta) {
    if (!(delta >= 0.0) || delta * delta >= 0.5)
        throw InvalidInput("delta must lie in [0, 1/sqrt(2))");
    return -std::log1p(-2.0 * delta * delta);
}

// Pulse occupancy probability that keeps the adversary's error probability
// above 1/2 - delta over an n_p-slot frame:
//   alpha_n = (4 sigma_w^2 / (a_w^2 c_q^2)) sqrt(2 L / (n_p (1 + r^4))),
// clamped to [0, 1]. `clamped` reports whether the clamp engaged.
inline double alpha_n(double delta, std::uint64_t n_p, const PulseParams& params, double a_w,
                      double sigma_w2, bool* clamped = nullptr) {
    const double L = covertness_log_term(delta);
    if (n_p == 0) throw InvalidInput("alpha_n: n_p must be positive");
    if (!(a_w > 0.0) || !(sigma_w2 > 0.0))
        throw InvalidInput("alpha_n: channel parameters must be positive");
    const double r = params.r_pq();
    const double r4 = r * r * r * r;
    const double snr = a_w * a_w * params.c_q * params.c_q / sigma_w2;
    double a = (4.0 / snr) * std::sqrt(2.0 * L / (static_cast<double>(n_p) * (1.0 + r4)));
    bool cl = false;
    if (a > 1.0) {
        a = 1.0;
        cl = true;
    }
    if (clamped) *clamped = cl;
    return a;
}

// Scaling coefficient zeta = alpha_n sqrt(n) with n = n_p n_s.
inline double zeta_from_alpha(double alpha, std::uint64_t n) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("zeta: alpha outside [0,1]");
    return alpha * std::sqrt(static_cast<double>(n));
}

// Equivalent closed form independent of n: zeta = sqrt(32 L n_s) / (SNR sqrt(1 + r^4)).
inline double zeta_design(double delta, int n_s, double snr, double r_pq) {
    const double L = covertness_log_term(delta);
    if (n_s < 1) throw InvalidInput("zeta_design: n_s must be >= 1");
    if (!(snr > 0.0)) throw InvalidInput("zeta_design: snr must be > 0");
    const double r4 = r_pq * r_pq * r_pq * r_pq;
    return std::sqrt(32.0 * L * n_s) / (snr * std::sqrt(1.0 + r4));
}

// Detection-error lower bounds, each floored at zero.
inline double pe_bound_tv(double tv) {
    if (!(tv >= 0.0 && tv <= 1.0)) throw InvalidInput("pe_bound_tv: TV outside [0,1]");
    return std::max(0.0, 0.5 - 0.5 * tv);
}

// d_bits is the relative entropy of the frame distributions in bits.
inline double pe_bound_pinsker(double d_bits) {
    if (!(d_bits >= 0.0)) throw InvalidInput("pe_bound_pinsker: negative divergence");
    return std::max(0.0, 0.5 - std::sqrt(d_bits) / (2.0 * std::sqrt(2.0)));
}

// h is the (unsquared) Hellinger distance of the frame distributions.
inline double pe_bound_hellinger(double h) {
    if (!(h >= 0.0 && h <= 1.0)) throw InvalidInput("pe_bound_hellinger: H outside [0,1]");
    return std::max(0.0, 0.5 - h / std::sqrt(2.0));
}

// Taylor form of the frame Hellinger budget:
//   H^2 ~= 1 - (1 - alpha^2 (1+r^4) a^4 c_q^4 / (32 sigma^4))^{n_p}
inline double h2_taylor(double alpha, std::uint64_t n_p, const PulseParams& params, double a_w,
                        double sigma_w2) {
    const double r = params.r_pq();
    const double r4 = r * r * r * r;
    const double num = alpha * alpha * (1.0 + r4) * std::pow(a_w, 4) * std::pow(params.c_q, 4);
    const double per_slot = num / (32.0 * sigma_w2 * sigma_w2);
    if (per_slot >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n_p) * std::log1p(-per_slot));
}

struct CovertBudget {
    double alpha = 0.0;
    bool alpha_clamped = false;
    double zeta = 0.0;
    std::uint64_t n = 0;     // total channel uses n_p * n_s
    double h2_taylor = 0.0;
    double h2_oracle = 0.0;
    double h2_oracle_se = 0.0;
    double d_bits = 0.0;     // frame relative entropy, bits
    double d_bits_se = 0.0;
    double pe_pinsker = 0.0;
    double pe_hellinger = 0.0;
    std::optional<double> pe_tv;  // only available when a TV estimate exists
};

// Full budget evaluation at the covertness-constrained occupancy.
inline CovertBudget compute_budget(double delta, std::uint64_t n_p, const PulseParams& params,
                                   double a_w, double sigma_w2,
                                   OracleMethod method = OracleMethod::quadrature,
                                   const OracleOptions& opts = {}) {
    params.validate();
    CovertBudget b;
    b.alpha = alpha_n(delta, n_p, params, a_w, sigma_w2, &b.alpha_clamped);
    b.n = n_p * static_cast<std::uint64_t>(params.n_s());
    b.zeta = zeta_from_alpha(b.alpha, b.n);
    b.h2_taylor = covert::h2_taylor(b.alpha, n_p, params, a_w, sigma_w2);
    const DivergenceResult h = hellinger_oracle(params, b.alpha, a_w, sigma_w2, n_p, method, opts);
    b.h2_oracle = h.value;
    b.h2_oracle_se = h.se;
    const DivergenceResult d =
        relative_entropy_oracle(params, b.alpha, a_w, sigma_w2, n_p, method, opts);
    b.d_bits = d.value;
    b.d_bits_se = d.se;
    b.pe_pinsker = pe_bound_pinsker(b.d_bits);
    b.pe_hellinger = pe_bound_hellinger(std::sqrt(std::clamp(b.h2_oracle, 0.0, 1.0)));
    return b;
}

// Throughput measure for design scoring: r = 2 C_bsc n_p alpha_n, the
// expected number of covert bits per frame.
inline double throughput_bits(double c_bsc, std::uint64_t n_p, double alpha) {
    return 2.0 * c_bsc * static_cast<double>(n_p) * alpha;
}

}  // namespace covert
