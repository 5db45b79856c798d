#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "covert/common.hpp"

namespace covert {

// Discrete Gaussian envelope over m = 0..n-1, centered at n/2:
//   g[m] = exp(-(m - n/2)^2 / (2 sigma^2))
inline rvec gaussian_envelope(int n, double sigma) {
    if (n < 1) throw InvalidInput("gaussian_envelope: n must be >= 1");
    if (!(sigma > 0.0)) throw InvalidInput("gaussian_envelope: sigma must be > 0");
    rvec g(static_cast<std::size_t>(n));
    const double c = 0.5 * n;
    for (int m = 0; m < n; ++m) {
        const double d = m - c;
        g[static_cast<std::size_t>(m)] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return g;
}

// Scale a nonzero envelope to Euclidean norm c (c = 0 gives the zero pulse).
inline rvec normalize_pulse(const rvec& g, double c) {
    if (c < 0.0) throw InvalidInput("normalize_pulse: amplitude must be >= 0");
    double ss = 0.0;
    for (double v : g) ss += v * v;
    if (!(ss > 0.0)) throw InvalidInput("normalize_pulse: zero envelope");
    const double scale = c / std::sqrt(ss);
    rvec out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] * scale;
    return out;
}

// Fraction of the envelope's total amplitude mass that falls inside the
// slot, with the out-of-slot tail summed over m in [lo_mult*n, hi_mult*n).
// Scaling cancels in the ratio, so this works on the raw envelope.
inline double confinement_ratio(int n, double sigma, int lo_mult = -10, int hi_mult = 11) {
    if (n < 1) throw InvalidInput("confinement_ratio: n must be >= 1");
    if (!(sigma > 0.0)) throw InvalidInput("confinement_ratio: sigma must be > 0");
    const double c = 0.5 * n;
    const double inv = 1.0 / (2.0 * sigma * sigma);
    double in_slot = 0.0, total = 0.0;
    const long lo = static_cast<long>(lo_mult) * n;
    const long hi = static_cast<long>(hi_mult) * n;
    for (long m = lo; m < hi; ++m) {
        const double d = static_cast<double>(m) - c;
        const double v = std::exp(-d * d * inv);
        total += v;
        if (m >= 0 && m < n) in_slot += v;
    }
    return in_slot / total;
}

namespace detail {
// Tail of the summation window must be negligible at the returned sigma;
// checked by widening the window and comparing.
inline void check_window_tail(int n, double sigma) {
    const double narrow = confinement_ratio(n, sigma, -10, 11);
    const double wide = confinement_ratio(n, sigma, -20, 21);
    if (std::abs(narrow - wide) > 1e-12 * std::max(narrow, wide))
        throw NumericFailure("select_sigma: window tail not negligible at solution");
}
}  // namespace detail

// Largest sigma whose envelope keeps at least `target` of its amplitude
// mass inside the slot. The ratio is monotone decreasing in sigma, so a
// bisection over [1e-3, 10 n] suffices. For n = 1 no sigma can reach the
// usual 0.999 target (the sample at m = 1 sits exactly as close to the
// center n/2 as the in-slot sample at m = 0, capping the ratio at 1/2);
// the search minimum is returned in that case.
inline double select_sigma(int n, double target = 0.999) {
    if (n < 1) throw InvalidInput("select_sigma: n must be >= 1");
    if (!(target > 0.0 && target < 1.0)) throw InvalidInput("select_sigma: target outside (0,1)");
    double lo = 1e-3;
    double hi = 10.0 * n;
    if (confinement_ratio(n, lo) < target) return lo;
    while ((hi - lo) > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (confinement_ratio(n, mid) >= target)
            lo = mid;
        else
            hi = mid;
    }
    detail::check_window_tail(n, lo);
    return lo;
}

struct PulseParams {
    int n_s_pilot = 0;
    int n_s_data = 0;
    double c_p = 0.0;
    double c_q = 0.0;
    double sigma_p = 0.0;
    double sigma_q = 0.0;

    int n_s() const { return n_s_pilot + n_s_data; }
    double c() const { return std::hypot(c_p, c_q); }
    double r_pq() const { return c_p / c_q; }

    // Throws InvalidInput on violated invariants. c_p = 0 (pilotless pulse)
    // is allowed; phase estimation on such pulses fails downstream. The
    // confinement check does not apply to single-sample envelopes.
    void validate() const {
        if (n_s_pilot < 1 || n_s_data < 1)
            throw InvalidInput("PulseParams: slot sample counts must be >= 1");
        if (c_p < 0.0 || !(c_q > 0.0))
            throw InvalidInput("PulseParams: require c_p >= 0 and c_q > 0");
        if (!(sigma_p > 0.0) || !(sigma_q > 0.0))
            throw InvalidInput("PulseParams: envelope widths must be > 0");
        const double tol = 1e-9;
        if (n_s_pilot > 1 && confinement_ratio(n_s_pilot, sigma_p) < 0.999 - tol)
            throw InvalidInput("PulseParams: pilot envelope not 99.9% confined");
        if (n_s_data > 1 && confinement_ratio(n_s_data, sigma_q) < 0.999 - tol)
            throw InvalidInput("PulseParams: data envelope not 99.9% confined");
    }
};

// Fills the envelope widths with the largest admissible values.
inline PulseParams make_pulse_params(int n_s_pilot, int n_s_data, double c_p, double c_q) {
    PulseParams p;
    p.n_s_pilot = n_s_pilot;
    p.n_s_data = n_s_data;
    p.c_p = c_p;
    p.c_q = c_q;
    if (n_s_pilot >= 1) p.sigma_p = select_sigma(n_s_pilot);
    if (n_s_data >= 1) p.sigma_q = select_sigma(n_s_data);
    p.validate();
    return p;
}

// Real amplitude vectors of the two pulse halves, norms c_p and c_q.
struct PulsePair {
    rvec pilot;
    rvec data;
    double c_p = 0.0;
    double c_q = 0.0;

    double c() const { return std::hypot(c_p, c_q); }
};

inline PulsePair make_pulse_pair(const PulseParams& p) {
    p.validate();
    PulsePair pp;
    pp.c_p = p.c_p;
    pp.c_q = p.c_q;
    if (p.c_p > 0.0) {
        pp.pilot = normalize_pulse(gaussian_envelope(p.n_s_pilot, p.sigma_p), p.c_p);
    } else {
        pp.pilot.assign(static_cast<std::size_t>(p.n_s_pilot), 0.0);
    }
    pp.data = normalize_pulse(gaussian_envelope(p.n_s_data, p.sigma_q), p.c_q);
    return pp;
}

// Data-half phase for symbol x in {1,2,3,4}: pi (2x - 1) / 4.
inline double symbol_phase(int x) {
    if (x < 1 || x > 4) throw InvalidInput("symbol_phase: symbol outside {1,2,3,4}");
    return kPi * (2.0 * x - 1.0) / 4.0;
}

// Full n_s-sample baseband pulse: pilot half rotated by theta, data half by
// theta plus the symbol phase. The norm is c for every symbol and theta.
inline cvec assemble_pulse(const PulsePair& pp, int symbol, double theta) {
    const double phi = symbol_phase(symbol);
    const std::complex<double> rp = std::polar(1.0, theta);
    const std::complex<double> rq = std::polar(1.0, theta + phi);
    cvec u;
    u.reserve(pp.pilot.size() + pp.data.size());
    for (double v : pp.pilot) u.push_back(rp * v);
    for (double v : pp.data) u.push_back(rq * v);
    return u;
}

}  // namespace covert
