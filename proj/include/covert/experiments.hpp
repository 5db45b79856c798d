#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "covert/budget.hpp"
#include "covert/channel.hpp"
#include "covert/common.hpp"
#include "covert/framing.hpp"
#include "covert/oracle.hpp"
#include "covert/receiver.hpp"
#include "covert/warden.hpp"

namespace covert {

using json = nlohmann::json;

struct FitImpossible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    double sample_rate = 1e5;
    rvec T_values = {1, 2, 3, 4, 5, 6, 7, 8};
    int trials_per_T = 30;
    double delta = 0.05;
    std::uint64_t seed = 1;

    int n_s_pilot = 6;
    int n_s_data = 6;
    double c_p = 1.0;
    double c_q = 1.0;

    ChannelParams bob{1.0, 0.05, PhaseMode::uniform_per_slot, 0.0};
    ChannelParams willie{0.1, 1.0, PhaseMode::uniform_per_slot, 0.0};

    double preamble_amplitude_factor = 10.0;  // times c_q
    double sync_threshold = 5.0;

    int calib_frames = 50;
    double calib_duration = 0.5;   // seconds per calibration frame
    int calib_slot_period = 5;     // every k-th slot carries a pulse
    double calib_theta_w = 0.0;    // channel phase held fixed during calibration

    PulseParams pulse_params() const {
        return make_pulse_params(n_s_pilot, n_s_data, c_p, c_q);
    }

    void validate() const {
        if (!(sample_rate > 0.0)) throw InvalidInput("config: sample_rate must be > 0");
        if (T_values.empty()) throw InvalidInput("config: T_values must be nonempty");
        for (double t : T_values)
            if (!(t > 0.0)) throw InvalidInput("config: T values must be > 0");
        if (trials_per_T < 1) throw InvalidInput("config: trials_per_T must be >= 1");
        if (calib_frames < 1 || calib_slot_period < 1 || !(calib_duration > 0.0))
            throw InvalidInput("config: bad calibration settings");
        pulse_params();
        bob.validate();
        willie.validate();
    }

    static ExperimentConfig from_json(const json& j) {
        ExperimentConfig c;
        if (j.contains("sample_rate")) c.sample_rate = j.at("sample_rate").get<double>();
        if (j.contains("T_values")) c.T_values = j.at("T_values").get<rvec>();
        if (j.contains("trials_per_T")) c.trials_per_T = j.at("trials_per_T").get<int>();
        if (j.contains("delta")) c.delta = j.at("delta").get<double>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("pulse")) {
            const auto& p = j.at("pulse");
            if (p.contains("n_s_pilot")) c.n_s_pilot = p.at("n_s_pilot").get<int>();
            if (p.contains("n_s_data")) c.n_s_data = p.at("n_s_data").get<int>();
            if (p.contains("c_p")) c.c_p = p.at("c_p").get<double>();
            if (p.contains("c_q")) c.c_q = p.at("c_q").get<double>();
        }
        auto chan = [](const json& cj, ChannelParams& ch) {
            if (cj.contains("a")) ch.a = cj.at("a").get<double>();
            if (cj.contains("sigma2")) ch.sigma2 = cj.at("sigma2").get<double>();
        };
        if (j.contains("bob")) chan(j.at("bob"), c.bob);
        if (j.contains("willie")) chan(j.at("willie"), c.willie);
        if (j.contains("preamble_amplitude_factor"))
            c.preamble_amplitude_factor = j.at("preamble_amplitude_factor").get<double>();
        if (j.contains("sync_threshold")) c.sync_threshold = j.at("sync_threshold").get<double>();
        if (j.contains("calibration")) {
            const auto& cj = j.at("calibration");
            if (cj.contains("frames")) c.calib_frames = cj.at("frames").get<int>();
            if (cj.contains("duration")) c.calib_duration = cj.at("duration").get<double>();
            if (cj.contains("slot_period")) c.calib_slot_period = cj.at("slot_period").get<int>();
            if (cj.contains("theta_w")) c.calib_theta_w = cj.at("theta_w").get<double>();
        }
        c.validate();
        return c;
    }

    json to_json() const {
        return json{
            {"sample_rate", sample_rate},
            {"T_values", T_values},
            {"trials_per_T", trials_per_T},
            {"delta", delta},
            {"seed", seed},
            {"pulse",
             {{"n_s_pilot", n_s_pilot}, {"n_s_data", n_s_data}, {"c_p", c_p}, {"c_q", c_q}}},
            {"bob", {{"a", bob.a}, {"sigma2", bob.sigma2}}},
            {"willie", {{"a", willie.a}, {"sigma2", willie.sigma2}}},
            {"preamble_amplitude_factor", preamble_amplitude_factor},
            {"sync_threshold", sync_threshold},
            {"calibration",
             {{"frames", calib_frames},
              {"duration", calib_duration},
              {"slot_period", calib_slot_period},
              {"theta_w", calib_theta_w}}},
        };
    }
};

// Pre-sweep calibration: frames with every k-th slot active, transmit phase
// held at zero and the adversary channel phase frozen, so the coherent
// estimator of Appendix-style averaging applies.
inline SnrEstimate run_calibration(const ExperimentConfig& cfg) {
    const PulseParams params = cfg.pulse_params();
    const std::size_t n_s = static_cast<std::size_t>(params.n_s());
    const std::size_t n_p_cal =
        pulses_per_segment(cfg.calib_duration, cfg.sample_rate, params.n_s());
    if (n_p_cal == 0) throw InsufficientCalibration("run_calibration: frame too short");

    ChannelParams wch = cfg.willie;
    wch.phase_mode = PhaseMode::fixed;
    wch.theta_fixed = cfg.calib_theta_w;

    const PulsePair pp = make_pulse_pair(params);
    std::vector<cvec> all_slots;
    std::vector<std::uint8_t> all_t;
    std::vector<int> all_symbols;
    rvec all_thetas;
    all_slots.reserve(static_cast<std::size_t>(cfg.calib_frames) * n_p_cal);

    for (int f = 0; f < cfg.calib_frames; ++f) {
        const std::uint64_t fseed = derive_seed(cfg.seed, 0xca11bULL, static_cast<std::uint64_t>(f));
        SplitMix64 g(fseed);
        std::vector<cvec> tx;
        tx.reserve(n_p_cal);
        for (std::size_t i = 0; i < n_p_cal; ++i) {
            const bool active = (i % static_cast<std::size_t>(cfg.calib_slot_period)) == 0;
            all_t.push_back(active ? 1 : 0);
            if (active) {
                const int sym = 1 + static_cast<int>(g() % 4);
                all_symbols.push_back(sym);
                all_thetas.push_back(0.0);
                tx.push_back(assemble_pulse(pp, sym, 0.0));
            } else {
                tx.emplace_back(n_s, 0.0);
            }
        }
        std::vector<cvec> rx = channel_transmit(tx, wch, derive_seed(fseed, 0x0b5ULL));
        for (auto& s : rx) all_slots.push_back(std::move(s));
    }
    return estimate_snr(all_slots, all_t, all_symbols, all_thetas, params);
}

struct TrialRow {
    double T = 0.0;
    std::uint64_t n = 0;      // n_p * n_s channel uses in the on segment
    std::size_t n_t = 0;
    double p_e_bsc = 0.5;
    double b_bsc = 0.0;
    double snr_db = 0.0;      // calibrated gain over per-trial noise estimate
    double pe_w_bound = 0.0;
    double pe_w_empirical = 0.5;  // fraction wrong of this trial's two decisions
    double alpha = 0.0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string error;
};

struct PerTBudget {
    double T = 0.0;
    std::uint64_t n_p = 0;
    std::uint64_t n = 0;
    double alpha = 0.0;
    bool alpha_clamped = false;
    double h2_oracle = 0.0;
    double pe_bound = 0.0;
};

struct SweepResult {
    ExperimentConfig config;
    SnrEstimate calibration;
    std::vector<PerTBudget> budgets;
    std::vector<TrialRow> rows;
    std::size_t failed_trials = 0;
};

namespace detail {

inline void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int nw = std::min<int>(workers, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

// One sweep trial: Alice builds a frame at the budgeted occupancy, Bob
// decodes his noisy copy, the adversary scores both the on and the off
// segment with the likelihood-ratio detector.
inline TrialRow run_trial(const ExperimentConfig& cfg, const PulseParams& params,
                          const PerTBudget& bt, const cvec& preamble_tpl,
                          const SlotModel& wmodel, double a_hat_cal, std::uint64_t trial_seed) {
    TrialRow row;
    row.T = bt.T;
    row.n = bt.n;
    row.alpha = bt.alpha;
    row.pe_w_bound = bt.pe_bound;
    row.seed = trial_seed;

    const std::size_t n_s = static_cast<std::size_t>(params.n_s());
    const std::size_t n_p = bt.n_p;

    const SecretKey key = gen_secret(n_p, bt.alpha, derive_seed(trial_seed, 0x5ecULL));
    SplitMix64 g(derive_seed(trial_seed, 0xda7aULL));
    std::vector<std::uint8_t> data(2 * key.n_t);
    for (auto& b : data) b = static_cast<std::uint8_t>(g() & 1u);
    rvec thetas(key.n_t);
    for (double& th : thetas) th = 2.0 * kPi * uniform01(g);
    const std::vector<int> symbols = encode_message(data, key.s);

    const Frame frame = build_frame(params, key, symbols, thetas, bt.T, cfg.sample_rate,
                                    cfg.preamble_amplitude_factor * params.c_q);

    // Bob: preamble block, payload slots, residual block, and a short
    // listen tail so a rare one-sample sync slip still decodes (degraded)
    // instead of running off the end of the capture.
    std::vector<cvec> bob_tx;
    bob_tx.push_back(frame.preamble);
    for (std::size_t i = 0; i < n_p; ++i)
        bob_tx.emplace_back(frame.alice_on.begin() + static_cast<std::ptrdiff_t>(i * n_s),
                            frame.alice_on.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_s));
    if (frame.segment_len > n_p * n_s)
        bob_tx.emplace_back(frame.alice_on.begin() + static_cast<std::ptrdiff_t>(n_p * n_s),
                            frame.alice_on.end());
    bob_tx.emplace_back(256, 0.0);
    const std::vector<cvec> bob_rx_slots =
        channel_transmit(bob_tx, cfg.bob, derive_seed(trial_seed, 0xb0bULL));
    cvec bob_rx;
    bob_rx.reserve(frame.preamble.size() + frame.segment_len);
    for (const auto& s : bob_rx_slots) bob_rx.insert(bob_rx.end(), s.begin(), s.end());

    DecodeOptions dopts;
    dopts.sync_threshold = cfg.sync_threshold;
    const DecodeReport rep =
        decode_frame(bob_rx, key, params, preamble_tpl, frame.segment_len, data, dopts);
    row.n_t = rep.n_t;
    row.p_e_bsc = rep.p_e_bsc;
    row.b_bsc = rep.b_bsc;

    // adversary: slot-aligned on and off segments
    std::vector<cvec> w_on_tx;
    w_on_tx.reserve(n_p);
    for (std::size_t i = 0; i < n_p; ++i)
        w_on_tx.emplace_back(frame.alice_on.begin() + static_cast<std::ptrdiff_t>(i * n_s),
                             frame.alice_on.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_s));
    const std::vector<cvec> w_on =
        channel_transmit(w_on_tx, cfg.willie, derive_seed(trial_seed, 0x3111eULL, 1));
    const std::vector<cvec> w_off = channel_transmit(
        std::vector<cvec>(n_p, cvec(n_s, 0.0)), cfg.willie, derive_seed(trial_seed, 0x3111eULL, 2));

    cvec on_seg, off_seg;
    on_seg.reserve(n_p * n_s);
    off_seg.reserve(n_p * n_s);
    for (const auto& s : w_on) on_seg.insert(on_seg.end(), s.begin(), s.end());
    for (const auto& s : w_off) off_seg.insert(off_seg.end(), s.begin(), s.end());

    const double llr_on = frame_llr(wmodel, on_seg);
    const double llr_off = frame_llr(wmodel, off_seg);
    const int wrong_on = llr_on > 0.0 ? 0 : 1;
    const int wrong_off = llr_off > 0.0 ? 1 : 0;
    row.pe_w_empirical = 0.5 * (wrong_on + wrong_off);

    // per-trial noise estimate from the off segment, calibrated gain
    const double sigma2_trial = radiometer_stat(off_seg) / (2.0 * static_cast<double>(off_seg.size()));
    row.snr_db = 10.0 * std::log10(a_hat_cal * a_hat_cal * params.c_q * params.c_q / sigma2_trial);
    return row;
}

inline SweepResult run_sweep(const ExperimentConfig& cfg, int workers = 1) {
    cfg.validate();
    SweepResult res;
    res.config = cfg;
    res.calibration = run_calibration(cfg);

    const PulseParams params = cfg.pulse_params();
    const cvec preamble_tpl = build_preamble(cfg.preamble_amplitude_factor * params.c_q);

    for (double T : cfg.T_values) {
        PerTBudget bt;
        bt.T = T;
        bt.n_p = pulses_per_segment(T, cfg.sample_rate, params.n_s());
        if (bt.n_p == 0) throw InvalidInput("run_sweep: T too short for one slot");
        bt.n = bt.n_p * static_cast<std::uint64_t>(params.n_s());
        bt.alpha = alpha_n(cfg.delta, bt.n_p, params, res.calibration.a_hat,
                           res.calibration.sigma2_hat, &bt.alpha_clamped);
        const DivergenceResult h = hellinger_oracle(params, bt.alpha, cfg.willie.a,
                                                    cfg.willie.sigma2, bt.n_p,
                                                    OracleMethod::quadrature);
        bt.h2_oracle = h.value;
        bt.pe_bound = pe_bound_hellinger(std::sqrt(std::clamp(h.value, 0.0, 1.0)));
        res.budgets.push_back(bt);
    }

    const std::size_t total =
        res.budgets.size() * static_cast<std::size_t>(cfg.trials_per_T);
    res.rows.assign(total, {});
    std::atomic<std::size_t> failures{0};

    detail::parallel_for(total, workers, [&](std::size_t item) {
        const std::size_t ti = item / static_cast<std::size_t>(cfg.trials_per_T);
        const std::size_t trial = item % static_cast<std::size_t>(cfg.trials_per_T);
        const PerTBudget& bt = res.budgets[ti];
        const std::uint64_t trial_seed = derive_seed(cfg.seed, 0x7215ULL, ti, trial);
        SlotModel wmodel = make_slot_model(params, bt.alpha, cfg.willie.a, cfg.willie.sigma2);
        try {
            res.rows[item] = run_trial(cfg, params, bt, preamble_tpl, wmodel,
                                       res.calibration.a_hat, trial_seed);
        } catch (const std::exception& e) {
            TrialRow row;
            row.T = bt.T;
            row.n = bt.n;
            row.alpha = bt.alpha;
            row.pe_w_bound = bt.pe_bound;
            row.seed = trial_seed;
            row.ok = false;
            row.error = e.what();
            res.rows[item] = row;
            failures.fetch_add(1);
        }
    });
    res.failed_trials = failures.load();
    return res;
}

struct SrlFit {
    double coeff_fixed = 0.0;   // log2 of the prefactor under slope 1/2
    double r2_fixed = 0.0;      // can be negative when the model misfits
    double slope_free = 0.0;
    double intercept_free = 0.0;
    double r2_free = 0.0;
    std::size_t points = 0;
    std::size_t excluded = 0;   // per-n means that were not positive
};

// Fit mean throughput against sqrt(n): regression of log2(mean B) on
// log2(n) with the slope pinned at 1/2, plus the free-slope reference fit.
inline SrlFit fit_srl(const std::vector<TrialRow>& rows) {
    std::map<std::uint64_t, std::pair<double, std::size_t>> groups;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        auto& g = groups[r.n];
        g.first += r.b_bsc;
        g.second += 1;
    }
    rvec xs, ys;
    SrlFit fit;
    for (const auto& [n, g] : groups) {
        const double mean_b = g.first / static_cast<double>(g.second);
        if (!(mean_b > 0.0)) {
            ++fit.excluded;
            continue;
        }
        xs.push_back(std::log2(static_cast<double>(n)));
        ys.push_back(std::log2(mean_b));
    }
    fit.points = xs.size();
    if (fit.points < 2)
        throw FitImpossible("fit_srl: need at least two n values with positive throughput");

    const auto npts = static_cast<double>(xs.size());
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= npts;
    ym /= npts;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
        syy += (ys[i] - ym) * (ys[i] - ym);
    }

    fit.coeff_fixed = ym - 0.5 * xm;
    double ss_fixed = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (0.5 * xs[i] + fit.coeff_fixed);
        ss_fixed += e * e;
    }
    fit.r2_fixed = syy > 0.0 ? 1.0 - ss_fixed / syy : (ss_fixed == 0.0 ? 1.0 : 0.0);

    fit.slope_free = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept_free = ym - fit.slope_free * xm;
    double ss_free = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.slope_free * xs[i] + fit.intercept_free);
        ss_free += e * e;
    }
    fit.r2_free = syy > 0.0 ? 1.0 - ss_free / syy : 1.0;
    return fit;
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct Aggregate {
    double mean = 0.0;
    double ci95 = 0.0;
    std::size_t count = 0;
};

inline Aggregate aggregate(const rvec& vals) {
    Aggregate a;
    a.count = vals.size();
    if (vals.empty()) return a;
    for (double v : vals) a.mean += v;
    a.mean /= static_cast<double>(vals.size());
    if (vals.size() > 1) {
        double ss = 0.0;
        for (double v : vals) ss += (v - a.mean) * (v - a.mean);
        const double sd = std::sqrt(ss / static_cast<double>(vals.size() - 1));
        a.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(vals.size()));
    }
    return a;
}

}  // namespace detail

inline const char* kResultsCsvHeader =
    "T,n,n_t,p_e_bsc,b_bsc,snr_db,pe_w_bound,pe_w_empirical,alpha,seed,ok";

inline void write_results_csv(const std::string& path, const std::vector<TrialRow>& rows) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw InvalidInput("write_results_csv: cannot open " + path);
    f << kResultsCsvHeader << "\n";
    for (const auto& r : rows) {
        f << detail::fmt_double(r.T) << ',' << r.n << ',' << r.n_t << ','
          << detail::fmt_double(r.p_e_bsc) << ',' << detail::fmt_double(r.b_bsc) << ','
          << detail::fmt_double(r.snr_db) << ',' << detail::fmt_double(r.pe_w_bound) << ','
          << detail::fmt_double(r.pe_w_empirical) << ',' << detail::fmt_double(r.alpha) << ','
          << r.seed << ',' << (r.ok ? 1 : 0) << "\n";
    }
}

inline std::vector<TrialRow> read_results_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("read_results_csv: cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw InvalidInput("read_results_csv: empty file");
    if (line != kResultsCsvHeader) throw InvalidInput("read_results_csv: unexpected header");
    std::vector<TrialRow> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        TrialRow r;
        std::size_t pos = 0;
        auto next = [&]() {
            const std::size_t c = line.find(',', pos);
            const std::string tok = line.substr(pos, c - pos);
            pos = (c == std::string::npos) ? line.size() : c + 1;
            return tok;
        };
        r.T = std::stod(next());
        r.n = std::stoull(next());
        r.n_t = std::stoull(next());
        r.p_e_bsc = std::stod(next());
        r.b_bsc = std::stod(next());
        r.snr_db = std::stod(next());
        r.pe_w_bound = std::stod(next());
        r.pe_w_empirical = std::stod(next());
        r.alpha = std::stod(next());
        r.seed = std::stoull(next());
        r.ok = next() == "1";
        rows.push_back(r);
    }
    return rows;
}

// Writes results.csv, summary.json and the two plot-data files
// (srl_scaling.csv, detection.csv) into out_dir.
inline json write_report(const std::string& out_dir, const std::vector<TrialRow>& rows,
                         const json& extra_summary = json::object()) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    write_results_csv((fs::path(out_dir) / "results.csv").string(), rows);

    std::map<std::uint64_t, std::vector<const TrialRow*>> by_n;
    for (const auto& r : rows)
        if (r.ok) by_n[r.n].push_back(&r);

    json summary;
    summary["rows"] = rows.size();
    std::size_t failed = 0;
    for (const auto& r : rows)
        if (!r.ok) ++failed;
    summary["failed_rows"] = failed;
    for (const auto& [k, v] : extra_summary.items()) summary[k] = v;

    json per_t = json::array();
    std::ofstream srl((fs::path(out_dir) / "srl_scaling.csv").string(), std::ios::trunc);
    std::ofstream det((fs::path(out_dir) / "detection.csv").string(), std::ios::trunc);
    srl << "T,n,b_mean,b_ci95,fit_fixed,fit_free\n";
    det << "T,pe_w_bound,pe_w_emp_mean,pe_w_emp_ci95,snr_db_mean\n";

    SrlFit fit;
    bool have_fit = false;
    if (!by_n.empty()) {
        try {
            fit = fit_srl(rows);
            have_fit = true;
        } catch (const FitImpossible&) {
        }
    }

    for (const auto& [n, group] : by_n) {
        rvec b, pe, pw, snr;
        for (const auto* r : group) {
            b.push_back(r->b_bsc);
            pe.push_back(r->p_e_bsc);
            pw.push_back(r->pe_w_empirical);
            snr.push_back(r->snr_db);
        }
        const auto ab = detail::aggregate(b);
        const auto ape = detail::aggregate(pe);
        const auto apw = detail::aggregate(pw);
        const auto asnr = detail::aggregate(snr);
        const double T = group.front()->T;
        const double bound = group.front()->pe_w_bound;
        const double x = std::log2(static_cast<double>(n));
        const double pred_fixed = have_fit ? std::exp2(0.5 * x + fit.coeff_fixed) : 0.0;
        const double pred_free =
            have_fit ? std::exp2(fit.slope_free * x + fit.intercept_free) : 0.0;

        srl << detail::fmt_double(T) << ',' << n << ',' << detail::fmt_double(ab.mean) << ','
            << detail::fmt_double(ab.ci95) << ',' << detail::fmt_double(pred_fixed) << ','
            << detail::fmt_double(pred_free) << "\n";
        det << detail::fmt_double(T) << ',' << detail::fmt_double(bound) << ','
            << detail::fmt_double(apw.mean) << ',' << detail::fmt_double(apw.ci95) << ','
            << detail::fmt_double(asnr.mean) << "\n";

        per_t.push_back(json{{"T", T},
                             {"n", n},
                             {"b_mean", ab.mean},
                             {"b_ci95", ab.ci95},
                             {"p_e_bsc_mean", ape.mean},
                             {"p_e_bsc_ci95", ape.ci95},
                             {"pe_w_bound", bound},
                             {"pe_w_emp_mean", apw.mean},
                             {"pe_w_emp_ci95", apw.ci95},
                             {"snr_db_mean", asnr.mean},
                             {"trials", ab.count}});
    }
    summary["per_T"] = per_t;
    if (have_fit) {
        summary["fit"] = json{{"coeff_fixed", fit.coeff_fixed},
                              {"r2_fixed", fit.r2_fixed},
                              {"slope_free", fit.slope_free},
                              {"intercept_free", fit.intercept_free},
                              {"r2_free", fit.r2_free},
                              {"points", fit.points},
                              {"excluded", fit.excluded}};
    }

    std::ofstream sf((fs::path(out_dir) / "summary.json").string(), std::ios::trunc);
    sf << summary.dump(2) << "\n";
    return summary;
}

}  // namespace covert
