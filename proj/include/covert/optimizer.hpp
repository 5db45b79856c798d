#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "covert/budget.hpp"
#include "covert/channel.hpp"
#include "covert/common.hpp"
#include "covert/gp.hpp"
#include "covert/receiver.hpp"
#include "covert/rng.hpp"

namespace covert {

// Pulse design point: sample counts of the two halves and their amplitudes.
struct DesignPoint {
    int n_s_pilot = 0;
    int n_s_data = 0;
    double c_p = 0.0;
    double c_q = 0.0;
};

struct DesignBounds {
    int n_s_pilot_min = 2, n_s_pilot_max = 16;
    int n_s_data_min = 2, n_s_data_max = 16;
    double c_p_min = 0.0, c_p_max = 2.0;
    double c_q_min = 0.05, c_q_max = 2.0;

    void validate() const {
        if (n_s_pilot_min < 1 || n_s_pilot_max < n_s_pilot_min || n_s_data_min < 1 ||
            n_s_data_max < n_s_data_min)
            throw InvalidInput("DesignBounds: bad sample-count range");
        if (c_p_min < 0.0 || c_p_max < c_p_min || !(c_q_min > 0.0) || c_q_max < c_q_min)
            throw InvalidInput("DesignBounds: bad amplitude range");
    }

    bool contains(const DesignPoint& d) const {
        return d.n_s_pilot >= n_s_pilot_min && d.n_s_pilot <= n_s_pilot_max &&
               d.n_s_data >= n_s_data_min && d.n_s_data <= n_s_data_max && d.c_p >= c_p_min &&
               d.c_p <= c_p_max && d.c_q >= c_q_min && d.c_q <= c_q_max;
    }
};

struct DesignEvaluation {
    DesignPoint design;
    double r_mean = 0.0;  // sample mean of the throughput measure
    double r_se = 0.0;    // standard error of the mean
    bool alpha_clamped = false;
    double p_e_bsc = 0.5;
};

struct OptimizeConfig {
    DesignBounds bounds;
    int iterations = 50;
    int cold_start = 8;
    int trials = 16;              // channel trials per design evaluation
    double trial_duration = 0.1;  // seconds of payload per trial
    double sample_rate = 1e5;
    double delta = 0.05;
    ChannelParams bob{1.0, 0.05, PhaseMode::uniform_per_slot, 0.0};
    double willie_a = 0.1;
    double willie_sigma2 = 1.0;
    double preamble_amplitude_factor = 10.0;  // times c_q
    std::uint64_t seed = 1;
};

namespace detail {

// Map a design to/from the unit box; integer dimensions are relaxed to the
// continuous range and rounded on the way back.
inline rvec design_to_unit(const DesignPoint& d, const DesignBounds& b) {
    auto lin = [](double v, double lo, double hi) {
        return hi > lo ? (v - lo) / (hi - lo) : 0.5;
    };
    return {lin(d.n_s_pilot, b.n_s_pilot_min, b.n_s_pilot_max),
            lin(d.n_s_data, b.n_s_data_min, b.n_s_data_max), lin(d.c_p, b.c_p_min, b.c_p_max),
            lin(d.c_q, b.c_q_min, b.c_q_max)};
}

inline DesignPoint unit_to_design(const rvec& u, const DesignBounds& b) {
    auto lin = [](double t, double lo, double hi) { return lo + t * (hi - lo); };
    DesignPoint d;
    d.n_s_pilot = static_cast<int>(
        std::lround(lin(std::clamp(u[0], 0.0, 1.0), b.n_s_pilot_min, b.n_s_pilot_max)));
    d.n_s_data = static_cast<int>(
        std::lround(lin(std::clamp(u[1], 0.0, 1.0), b.n_s_data_min, b.n_s_data_max)));
    d.c_p = lin(std::clamp(u[2], 0.0, 1.0), b.c_p_min, b.c_p_max);
    d.c_q = lin(std::clamp(u[3], 0.0, 1.0), b.c_q_min, b.c_q_max);
    return d;
}

inline double halton(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

// Scrambled low-discrepancy start: Halton points under a seeded rotation.
inline std::vector<rvec> scrambled_halton(int count, std::uint64_t seed) {
    static const std::uint64_t bases[4] = {2, 3, 5, 7};
    SplitMix64 g(derive_seed(seed, 0xc01d5ULL));
    double shift[4];
    for (double& s : shift) s = uniform01(g);
    std::vector<rvec> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        rvec u(4);
        for (int j = 0; j < 4; ++j) {
            const double v = halton(static_cast<std::uint64_t>(i + 1), bases[j]) + shift[j];
            u[static_cast<std::size_t>(j)] = v - std::floor(v);
        }
        pts.push_back(u);
    }
    return pts;
}

}  // namespace detail

// Measure the throughput r = 2 C_bsc n_p alpha_n of one design by running
// the calibration-style packet (every fifth slot carries a pulse) through
// the receiver chain over `trials` independent channel realizations.
// A design whose occupancy clamps at 1 cannot meet the covertness budget
// and scores zero throughput.
inline DesignEvaluation evaluate_design(const DesignPoint& d, const OptimizeConfig& cfg,
                                        std::uint64_t seed) {
    PulseParams params = make_pulse_params(d.n_s_pilot, d.n_s_data, d.c_p, d.c_q);
    const std::size_t n_p =
        pulses_per_segment(cfg.trial_duration, cfg.sample_rate, params.n_s());
    if (n_p == 0) throw InvalidInput("evaluate_design: trial too short for one slot");

    DesignEvaluation ev;
    ev.design = d;
    double alpha = alpha_n(cfg.delta, n_p, params, cfg.willie_a, cfg.willie_sigma2,
                           &ev.alpha_clamped);
    if (ev.alpha_clamped) {
        ev.r_mean = 0.0;
        ev.r_se = 0.0;
        return ev;
    }

    SecretKey key;
    key.t.assign(n_p, 0);
    for (std::size_t i = 0; i < n_p; i += 5) key.t[i] = 1;
    key.n_t = 0;
    for (auto v : key.t) key.n_t += v;

    const cvec preamble_tpl = build_preamble(cfg.preamble_amplitude_factor * params.c_q);
    rvec r_vals;
    double pe_acc = 0.0;
    r_vals.reserve(static_cast<std::size_t>(cfg.trials));
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t ts = derive_seed(seed, 0xde519ULL, static_cast<std::uint64_t>(trial));
        SplitMix64 g(ts);
        key.s.assign(2 * key.n_t, 0);
        for (auto& b : key.s) b = static_cast<std::uint8_t>(g() & 1u);
        std::vector<std::uint8_t> data(2 * key.n_t);
        for (auto& b : data) b = static_cast<std::uint8_t>(g() & 1u);
        rvec thetas(key.n_t);
        for (double& th : thetas) th = 2.0 * kPi * uniform01(g);
        const std::vector<int> symbols = encode_message(data, key.s);

        const Frame frame =
            build_frame(params, key, symbols, thetas, cfg.trial_duration, cfg.sample_rate,
                        cfg.preamble_amplitude_factor * params.c_q);
        // one channel block per slot: preamble, payload slots, residual, tail
        std::vector<cvec> slots;
        slots.push_back(frame.preamble);
        const std::size_t n_s = static_cast<std::size_t>(params.n_s());
        for (std::size_t i = 0; i < n_p; ++i)
            slots.emplace_back(frame.alice_on.begin() + static_cast<std::ptrdiff_t>(i * n_s),
                               frame.alice_on.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_s));
        if (frame.segment_len > n_p * n_s)
            slots.emplace_back(frame.alice_on.begin() + static_cast<std::ptrdiff_t>(n_p * n_s),
                               frame.alice_on.end());
        slots.emplace_back(256, 0.0);
        const std::vector<cvec> rx_slots =
            channel_transmit(slots, cfg.bob, derive_seed(ts, 0xb0bULL));
        cvec rx;
        rx.reserve(frame.preamble.size() + frame.segment_len + 256);
        for (const auto& s : rx_slots) rx.insert(rx.end(), s.begin(), s.end());

        DecodeReport rep;
        try {
            rep = decode_frame(rx, key, params, preamble_tpl, frame.segment_len, data);
        } catch (const std::exception&) {
            rep.p_e_bsc = 0.5;
            rep.c_bsc = 0.0;
        }
        pe_acc += rep.p_e_bsc;
        r_vals.push_back(throughput_bits(rep.c_bsc, n_p, alpha));
    }

    double m = 0.0;
    for (double v : r_vals) m += v;
    m /= static_cast<double>(r_vals.size());
    double ss = 0.0;
    for (double v : r_vals) ss += (v - m) * (v - m);
    ev.r_mean = m;
    ev.r_se = r_vals.size() > 1
                  ? std::sqrt(ss / (static_cast<double>(r_vals.size()) *
                                    static_cast<double>(r_vals.size() - 1)))
                  : 0.0;
    ev.p_e_bsc = pe_acc / static_cast<double>(cfg.trials);
    return ev;
}

struct OptimizeHistoryEntry {
    int iteration = 0;
    DesignEvaluation eval;
    bool from_cold_start = false;
};

struct OptimizeResult {
    std::vector<OptimizeHistoryEntry> history;
    DesignPoint best;
    double best_r_mean = 0.0;
    double best_r_se = 0.0;
};

// One acquisition step: fit the GP to the history and maximize expected
// improvement over 256 seeded candidates refined by coordinate search.
// Duplicate integer-rounded proposals are rejected in favor of the next
// best candidate.
inline DesignPoint propose_next(const std::vector<OptimizeHistoryEntry>& history,
                                const DesignBounds& bounds, std::uint64_t seed) {
    bounds.validate();
    if (history.empty()) throw InvalidInput("propose_next: empty history");
    std::vector<rvec> X;
    rvec y, nv;
    for (const auto& h : history) {
        X.push_back(detail::design_to_unit(h.eval.design, bounds));
        y.push_back(h.eval.r_mean);
        nv.push_back(h.eval.r_se * h.eval.r_se);
    }
    GaussianProcess gp;
    gp.fit(X, y, nv, derive_seed(seed, 0x6bULL));

    double incumbent = y[0];
    for (double v : y) incumbent = std::max(incumbent, v);

    auto ei_at = [&](const rvec& u) {
        const auto post = gp.predict(u);
        return expected_improvement(post.mean, post.var, incumbent);
    };

    auto same_design = [](const DesignPoint& a, const DesignPoint& b) {
        return a.n_s_pilot == b.n_s_pilot && a.n_s_data == b.n_s_data &&
               std::abs(a.c_p - b.c_p) < 1e-9 && std::abs(a.c_q - b.c_q) < 1e-9;
    };

    SplitMix64 g(derive_seed(seed, 0xac9ULL));
    std::vector<std::pair<double, rvec>> cands;
    for (int i = 0; i < 256; ++i) {
        rvec u(4);
        for (auto& v : u) v = uniform01(g);
        cands.emplace_back(ei_at(u), u);
    }
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    // local coordinate refinement on the best few candidates
    for (std::size_t c = 0; c < std::min<std::size_t>(8, cands.size()); ++c) {
        rvec u = cands[c].second;
        double best = cands[c].first;
        double step = 0.12;
        while (step > 1e-3) {
            bool improved = false;
            for (std::size_t j = 0; j < 4; ++j) {
                for (double s : {-step, step}) {
                    rvec u2 = u;
                    u2[j] = std::clamp(u2[j] + s, 0.0, 1.0);
                    const double e = ei_at(u2);
                    if (e > best) {
                        best = e;
                        u = u2;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        cands[c] = {best, u};
    }
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    for (const auto& [e, u] : cands) {
        const DesignPoint d = detail::unit_to_design(u, bounds);
        bool dup = false;
        for (const auto& h : history)
            if (same_design(h.eval.design, d)) {
                dup = true;
                break;
            }
        if (!dup) return d;
    }
    // everything proposed already evaluated: perturb the incumbent
    rvec u = detail::design_to_unit(history[0].eval.design, bounds);
    for (auto& v : u) v = std::clamp(v + 0.25 * (uniform01(g) - 0.5), 0.0, 1.0);
    return detail::unit_to_design(u, bounds);
}

// Full Bayesian-optimization loop over the design space: scrambled
// low-discrepancy cold start, then EI-driven proposals, each scored by
// `evaluate`. Returns the history and the argmax of the observed means.
inline OptimizeResult
optimize_design(const OptimizeConfig& cfg,
                const std::function<DesignEvaluation(const DesignPoint&, std::uint64_t)>& evaluate) {
    cfg.bounds.validate();
    if (cfg.iterations < 1) throw InvalidInput("optimize_design: need at least one iteration");
    OptimizeResult res;
    const int cold = std::min(cfg.cold_start, cfg.iterations);
    const auto starts = detail::scrambled_halton(cold, cfg.seed);
    for (int i = 0; i < cfg.iterations; ++i) {
        DesignPoint d;
        if (i < cold) {
            d = detail::unit_to_design(starts[static_cast<std::size_t>(i)], cfg.bounds);
        } else {
            d = propose_next(res.history, cfg.bounds,
                             derive_seed(cfg.seed, 0x9c0ULL, static_cast<std::uint64_t>(i)));
        }
        OptimizeHistoryEntry entry;
        entry.iteration = i;
        entry.from_cold_start = i < cold;
        entry.eval = evaluate(d, derive_seed(cfg.seed, 0xe7a1ULL, static_cast<std::uint64_t>(i)));
        res.history.push_back(entry);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.history.size(); ++i)
        if (res.history[i].eval.r_mean > res.history[best].eval.r_mean) best = i;
    res.best = res.history[best].eval.design;
    res.best_r_mean = res.history[best].eval.r_mean;
    res.best_r_se = res.history[best].eval.r_se;
    return res;
}

inline OptimizeResult optimize_design(const OptimizeConfig& cfg) {
    return optimize_design(
        cfg, [&cfg](const DesignPoint& d, std::uint64_t s) { return evaluate_design(d, cfg, s); });
}

}  // namespace covert
