#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covert/budget.hpp"
#include "covert/experiments.hpp"
#include "covert/iqfile.hpp"
#include "covert/optimizer.hpp"
#include "covert/receiver.hpp"
#include "covert/warden.hpp"

using covert::cvec;
using covert::rvec;
using json = nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw covert::InvalidInput("cannot open " + path);
    json j;
    f >> j;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw covert::InvalidInput("cannot open " + path);
    f << j.dump(2) << "\n";
}

std::string bits_to_hex(const std::vector<std::uint8_t>& bits) {
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned v = 0;
        for (std::size_t k = 0; k < 4 && i + k < bits.size(); ++k)
            v |= static_cast<unsigned>(bits[i + k] & 1u) << (3 - k);
        out.push_back("0123456789abcdef"[v]);
    }
    return out;
}

std::vector<std::uint8_t> hex_to_bits(const std::string& hex, std::size_t count) {
    std::vector<std::uint8_t> bits;
    bits.reserve(count);
    for (char c : hex) {
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
        else throw covert::InvalidInput("bad hex digit in sidecar");
        for (int k = 3; k >= 0; --k) {
            if (bits.size() == count) return bits;
            bits.push_back(static_cast<std::uint8_t>((v >> k) & 1u));
        }
    }
    if (bits.size() != count) throw covert::InvalidInput("hex string shorter than bit count");
    return bits;
}

// Slot-blocked channel pass over a full packet: preamble, payload slots,
// residual, off segment slots, residual, short tail.
cvec apply_channel_packet(const covert::Frame& frame, std::size_t n_s,
                          const covert::ChannelParams& ch, std::uint64_t seed) {
    std::vector<cvec> blocks;
    blocks.push_back(frame.preamble);
    auto push_segment = [&](const cvec& seg) {
        for (std::size_t i = 0; i + n_s <= seg.size(); i += n_s)
            blocks.emplace_back(seg.begin() + static_cast<std::ptrdiff_t>(i),
                                seg.begin() + static_cast<std::ptrdiff_t>(i + n_s));
        const std::size_t rem = seg.size() % n_s;
        if (rem) blocks.emplace_back(seg.end() - static_cast<std::ptrdiff_t>(rem), seg.end());
    };
    push_segment(frame.alice_on);
    push_segment(cvec(frame.segment_len, 0.0));
    blocks.emplace_back(256, 0.0);
    const std::vector<cvec> out = covert::channel_transmit(blocks, ch, seed);
    cvec rx;
    rx.reserve(frame.packet_len() + 256);
    for (const auto& b : out) rx.insert(rx.end(), b.begin(), b.end());
    return rx;
}

struct GenArtifacts {
    covert::ExperimentConfig cfg;
    covert::PulseParams params;
    covert::SecretKey key;
    std::vector<std::uint8_t> data;
    std::vector<int> symbols;
    rvec thetas;
    covert::Frame frame;
    double alpha = 0.0;
    bool alpha_clamped = false;
    double duration = 0.0;
    std::uint64_t seed = 0;
};

GenArtifacts generate(const covert::ExperimentConfig& cfg, double duration, std::uint64_t seed) {
    GenArtifacts g;
    g.cfg = cfg;
    g.params = cfg.pulse_params();
    g.duration = duration;
    g.seed = seed;
    const std::size_t n_p = covert::pulses_per_segment(duration, cfg.sample_rate, g.params.n_s());
    if (n_p == 0) throw covert::InvalidInput("gen: duration too short for one slot");
    g.alpha = covert::alpha_n(cfg.delta, n_p, g.params, cfg.willie.a, cfg.willie.sigma2,
                              &g.alpha_clamped);
    g.key = covert::gen_secret(n_p, g.alpha, covert::derive_seed(seed, 0x5ecULL));
    covert::SplitMix64 rng(covert::derive_seed(seed, 0xda7aULL));
    g.data.resize(2 * g.key.n_t);
    for (auto& b : g.data) b = static_cast<std::uint8_t>(rng() & 1u);
    g.thetas.resize(g.key.n_t);
    for (double& th : g.thetas) th = 2.0 * covert::kPi * covert::uniform01(rng);
    g.symbols = covert::encode_message(g.data, g.key.s);
    g.frame = covert::build_frame(g.params, g.key, g.symbols, g.thetas, duration, cfg.sample_rate,
                                  cfg.preamble_amplitude_factor * g.params.c_q);
    return g;
}

json sidecar_json(const GenArtifacts& g) {
    json t_idx = json::array();
    for (std::size_t i = 0; i < g.key.t.size(); ++i)
        if (g.key.t[i]) t_idx.push_back(i);
    return json{
        {"seed", g.seed},
        {"duration", g.duration},
        {"n_p", g.key.t.size()},
        {"n_t", g.key.n_t},
        {"alpha", g.alpha},
        {"alpha_clamped", g.alpha_clamped},
        {"segment_len", g.frame.segment_len},
        {"preamble_len", g.frame.preamble.size()},
        {"t_indices", t_idx},
        {"pad_hex", bits_to_hex(g.key.s)},
        {"data_hex", bits_to_hex(g.data)},
        {"symbols", g.symbols},
        {"thetas", g.thetas},
        {"config", g.cfg.to_json()},
    };
}

covert::SecretKey key_from_sidecar(const json& sc) {
    covert::SecretKey key;
    const std::size_t n_p = sc.at("n_p").get<std::size_t>();
    key.t.assign(n_p, 0);
    for (std::size_t i : sc.at("t_indices").get<std::vector<std::size_t>>()) {
        if (i >= n_p) throw covert::InvalidInput("sidecar: slot index out of range");
        key.t[i] = 1;
    }
    key.n_t = sc.at("n_t").get<std::size_t>();
    key.s = hex_to_bits(sc.at("pad_hex").get<std::string>(), 2 * key.n_t);
    return key;
}

int cmd_budget(const std::string& in_path, const std::string& out_path,
               const std::string& method) {
    const json in = read_json_file(in_path);
    covert::PulseParams params =
        covert::make_pulse_params(in.at("n_s_pilot").get<int>(), in.at("n_s_data").get<int>(),
                                  in.at("c_p").get<double>(), in.at("c_q").get<double>());
    const covert::OracleMethod m = method == "monte_carlo" ? covert::OracleMethod::monte_carlo
                                                           : covert::OracleMethod::quadrature;
    const covert::CovertBudget b = covert::compute_budget(
        in.at("delta").get<double>(), in.at("n_p").get<std::uint64_t>(), params,
        in.at("a_w").get<double>(), in.at("sigma_w2").get<double>(), m);
    json pe = json{{"pinsker", b.pe_pinsker}, {"hellinger", b.pe_hellinger}};
    if (b.pe_tv) pe["tv"] = *b.pe_tv;
    json out{
        {"alpha_n", b.alpha},       {"alpha_clamped", b.alpha_clamped},
        {"zeta", b.zeta},           {"n", b.n},
        {"h2_taylor", b.h2_taylor}, {"h2_oracle", b.h2_oracle},
        {"h2_oracle_se", b.h2_oracle_se}, {"d_bits", b.d_bits},
        {"pe_bounds", pe},
    };
    if (out_path.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_json_file(out_path, out);
    return 0;
}

int cmd_gen(const std::string& cfg_path, const std::string& out_iq, const std::string& sidecar,
            double duration, std::uint64_t seed, const std::string& rx_bob,
            const std::string& rx_willie) {
    const covert::ExperimentConfig cfg = covert::ExperimentConfig::from_json(read_json_file(cfg_path));
    const GenArtifacts g = generate(cfg, duration, seed);
    covert::write_iq(out_iq, cfg.sample_rate, g.frame.packet());
    write_json_file(sidecar, sidecar_json(g));
    const std::size_t n_s = static_cast<std::size_t>(g.params.n_s());
    if (!rx_bob.empty())
        covert::write_iq(rx_bob, cfg.sample_rate,
                         apply_channel_packet(g.frame, n_s, cfg.bob,
                                              covert::derive_seed(seed, 0xb0bULL)));
    if (!rx_willie.empty())
        covert::write_iq(rx_willie, cfg.sample_rate,
                         apply_channel_packet(g.frame, n_s, cfg.willie,
                                              covert::derive_seed(seed, 0x3111eULL)));
    std::cout << "wrote " << out_iq << " (" << g.frame.packet_len() << " samples), n_t=" << g.key.n_t
              << ", alpha=" << g.alpha << "\n";
    return 0;
}

int cmd_decode(const std::string& iq_path, const std::string& sidecar_path,
               const std::string& out_path, const std::string& csv_path,
               const std::string& convention, double threshold) {
    const covert::IqFile iq = covert::read_iq(iq_path);
    const json sc = read_json_file(sidecar_path);
    const covert::ExperimentConfig cfg = covert::ExperimentConfig::from_json(sc.at("config"));
    const covert::PulseParams params = cfg.pulse_params();
    const covert::SecretKey key = key_from_sidecar(sc);
    const std::vector<std::uint8_t> truth =
        hex_to_bits(sc.at("data_hex").get<std::string>(), 2 * key.n_t);
    const cvec tpl = covert::build_preamble(cfg.preamble_amplitude_factor * params.c_q);

    covert::DecodeOptions opts;
    opts.sync_threshold = threshold;
    opts.phase_convention = convention == "printed" ? covert::PhaseConvention::printed
                                                    : covert::PhaseConvention::standard;
    const covert::DecodeReport rep = covert::decode_frame(
        iq.samples, key, params, tpl, sc.at("segment_len").get<std::size_t>(), truth, opts);

    json out{
        {"n_t", rep.n_t},
        {"bit_errors", rep.bit_errors},
        {"p_e_bsc", rep.p_e_bsc},
        {"c_bsc", rep.c_bsc},
        {"b_bsc", rep.b_bsc},
        {"sync_offset", rep.sync_offset},
        {"pilot_unusable", rep.pilot_unusable},
        {"degenerate", rep.degenerate},
    };
    if (out_path.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_json_file(out_path, out);

    if (!csv_path.empty()) {
        const bool fresh = !std::ifstream(csv_path).good();
        std::ofstream csv(csv_path, std::ios::app);
        if (!csv) throw covert::InvalidInput("cannot open " + csv_path);
        if (fresh) csv << "T,n,n_t,p_e_bsc,B_bsc,seed\n";
        const double T = sc.at("duration").get<double>();
        const std::uint64_t n =
            sc.at("n_p").get<std::uint64_t>() * static_cast<std::uint64_t>(params.n_s());
        csv << T << ',' << n << ',' << rep.n_t << ',' << rep.p_e_bsc << ',' << rep.b_bsc << ','
            << sc.at("seed").get<std::uint64_t>() << "\n";
    }
    return 0;
}

int cmd_detect(const std::string& iq_path, const std::string& sidecar_path,
               const std::string& out_path) {
    const covert::IqFile iq = covert::read_iq(iq_path);
    const json sc = read_json_file(sidecar_path);
    const covert::ExperimentConfig cfg = covert::ExperimentConfig::from_json(sc.at("config"));
    const covert::PulseParams params = cfg.pulse_params();
    const std::size_t pre = sc.at("preamble_len").get<std::size_t>();
    const std::size_t seg = sc.at("segment_len").get<std::size_t>();
    const std::size_t n_s = static_cast<std::size_t>(params.n_s());
    const std::size_t usable = (seg / n_s) * n_s;
    if (iq.samples.size() < pre + 2 * seg)
        throw covert::InvalidInput("detect: capture shorter than packet layout");
    const cvec on(iq.samples.begin() + static_cast<std::ptrdiff_t>(pre),
                  iq.samples.begin() + static_cast<std::ptrdiff_t>(pre + usable));
    const cvec off(iq.samples.begin() + static_cast<std::ptrdiff_t>(pre + seg),
                   iq.samples.begin() + static_cast<std::ptrdiff_t>(pre + seg + usable));

    const covert::SlotModel m = covert::make_slot_model(params, sc.at("alpha").get<double>(),
                                                        cfg.willie.a, cfg.willie.sigma2);
    const double llr_on = covert::frame_llr(m, on);
    const double llr_off = covert::frame_llr(m, off);
    const double rad_on = covert::radiometer_stat(on);
    const double rad_off = covert::radiometer_stat(off);
    const double rad_thr = covert::radiometer_threshold(m, on.size() / n_s);
    const int wrong = (llr_on > 0.0 ? 0 : 1) + (llr_off > 0.0 ? 1 : 0);
    json out{
        {"llr_on", llr_on},
        {"llr_off", llr_off},
        {"llr_decisions", {{"on", llr_on > 0.0}, {"off", llr_off > 0.0}}},
        {"radiometer_on", rad_on},
        {"radiometer_off", rad_off},
        {"radiometer_threshold", rad_thr},
        {"radiometer_decisions", {{"on", rad_on > rad_thr}, {"off", rad_off > rad_thr}}},
        {"pe_empirical", 0.5 * wrong},
    };
    if (out_path.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_json_file(out_path, out);
    return 0;
}

int cmd_calibrate(const std::string& cfg_path, const std::string& out_path,
                  std::optional<std::uint64_t> seed) {
    covert::ExperimentConfig cfg = covert::ExperimentConfig::from_json(read_json_file(cfg_path));
    if (seed) cfg.seed = *seed;
    const covert::SnrEstimate est = covert::run_calibration(cfg);
    const double true_snr_db = 10.0 * std::log10(cfg.willie.a * cfg.willie.a * cfg.c_q * cfg.c_q /
                                                 cfg.willie.sigma2);
    json out{
        {"a_hat", est.a_hat},
        {"sigma2_hat", est.sigma2_hat},
        {"snr", est.snr},
        {"snr_db", est.snr_db},
        {"n_bearing", est.n_bearing},
        {"n_empty", est.n_empty},
        {"true_snr_db", true_snr_db},
    };
    if (out_path.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_json_file(out_path, out);
    return 0;
}

int cmd_optimize(const std::string& cfg_path, const std::string& history_path,
                 const std::string& out_path, std::optional<std::uint64_t> seed) {
    covert::OptimizeConfig cfg;
    if (!cfg_path.empty()) {
        const json j = read_json_file(cfg_path);
        if (j.contains("iterations")) cfg.iterations = j.at("iterations").get<int>();
        if (j.contains("cold_start")) cfg.cold_start = j.at("cold_start").get<int>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
        if (j.contains("trial_duration")) cfg.trial_duration = j.at("trial_duration").get<double>();
        if (j.contains("sample_rate")) cfg.sample_rate = j.at("sample_rate").get<double>();
        if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("bounds")) {
            const json& b = j.at("bounds");
            auto pair = [&](const char* k, double& lo, double& hi) {
                if (b.contains(k)) {
                    lo = b.at(k).at(0).get<double>();
                    hi = b.at(k).at(1).get<double>();
                }
            };
            double plo = cfg.bounds.n_s_pilot_min, phi = cfg.bounds.n_s_pilot_max;
            double dlo = cfg.bounds.n_s_data_min, dhi = cfg.bounds.n_s_data_max;
            pair("n_s_pilot", plo, phi);
            pair("n_s_data", dlo, dhi);
            cfg.bounds.n_s_pilot_min = static_cast<int>(plo);
            cfg.bounds.n_s_pilot_max = static_cast<int>(phi);
            cfg.bounds.n_s_data_min = static_cast<int>(dlo);
            cfg.bounds.n_s_data_max = static_cast<int>(dhi);
            pair("c_p", cfg.bounds.c_p_min, cfg.bounds.c_p_max);
            pair("c_q", cfg.bounds.c_q_min, cfg.bounds.c_q_max);
        }
        if (j.contains("bob")) {
            cfg.bob.a = j.at("bob").value("a", cfg.bob.a);
            cfg.bob.sigma2 = j.at("bob").value("sigma2", cfg.bob.sigma2);
        }
        if (j.contains("willie")) {
            cfg.willie_a = j.at("willie").value("a", cfg.willie_a);
            cfg.willie_sigma2 = j.at("willie").value("sigma2", cfg.willie_sigma2);
        }
    }
    if (seed) cfg.seed = *seed;
    const covert::OptimizeResult res = covert::optimize_design(cfg);

    auto design_json = [](const covert::DesignPoint& d) {
        return json{{"n_s_pilot", d.n_s_pilot},
                    {"n_s_data", d.n_s_data},
                    {"c_p", d.c_p},
                    {"c_q", d.c_q}};
    };
    if (!history_path.empty()) {
        std::ofstream h(history_path, std::ios::trunc);
        if (!h) throw covert::InvalidInput("cannot open " + history_path);
        for (const auto& e : res.history) {
            json line = design_json(e.eval.design);
            line["iteration"] = e.iteration;
            line["r_mean"] = e.eval.r_mean;
            line["r_se"] = e.eval.r_se;
            line["cold_start"] = e.from_cold_start;
            line["alpha_clamped"] = e.eval.alpha_clamped;
            h << line.dump() << "\n";
        }
    }
    json best = design_json(res.best);
    best["r_mean"] = res.best_r_mean;
    best["r_se"] = res.best_r_se;
    if (out_path.empty())
        std::cout << best.dump(2) << "\n";
    else
        write_json_file(out_path, best);
    return 0;
}

int cmd_sweep(const std::string& cfg_path, const std::string& out_dir, int workers,
              std::optional<std::uint64_t> seed) {
    covert::ExperimentConfig cfg = covert::ExperimentConfig::from_json(read_json_file(cfg_path));
    if (seed) cfg.seed = *seed;
    const covert::SweepResult res = covert::run_sweep(cfg, workers);

    json budgets = json::array();
    for (const auto& b : res.budgets)
        budgets.push_back(json{{"T", b.T},
                               {"n_p", b.n_p},
                               {"n", b.n},
                               {"alpha", b.alpha},
                               {"alpha_clamped", b.alpha_clamped},
                               {"h2_oracle", b.h2_oracle},
                               {"pe_bound", b.pe_bound}});
    json extra{
        {"config", cfg.to_json()},
        {"calibration",
         {{"a_hat", res.calibration.a_hat},
          {"sigma2_hat", res.calibration.sigma2_hat},
          {"snr_db", res.calibration.snr_db}}},
        {"budgets", budgets},
    };
    bool fit_ok = true;
    try {
        covert::write_report(out_dir, res.rows, extra);
    } catch (const covert::FitImpossible&) {
        fit_ok = false;
    }
    if (!fit_ok) {
        std::cerr << "sweep: throughput fit impossible (too few usable points)\n";
        return 3;
    }
    const json summary = read_json_file(out_dir + "/summary.json");
    if (!summary.contains("fit")) {
        std::cerr << "sweep: throughput fit impossible (too few usable points)\n";
        return 3;
    }
    std::cout << "sweep: " << res.rows.size() << " trials, " << res.failed_trials
              << " failed; fit slope (free) "
              << summary["fit"]["slope_free"].get<double>() << ", R2 (fixed 1/2) "
              << summary["fit"]["r2_fixed"].get<double>() << "\n";
    return res.failed_trials > 0 ? 2 : 0;
}

int cmd_report(const std::string& results_path, const std::string& out_dir) {
    const std::vector<covert::TrialRow> rows = covert::read_results_csv(results_path);
    if (rows.empty()) {
        std::cerr << "report: results file has no rows\n";
        return 4;
    }
    covert::write_report(out_dir, rows);
    std::cout << "report: regenerated summaries for " << rows.size() << " rows in " << out_dir
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"square-root-law covert link simulator and analysis toolkit"};
    app.require_subcommand(1);

    std::string in_path, out_path, cfg_path, iq_path, sidecar_path, csv_path;
    std::string rx_bob, rx_willie, history_path, results_path, out_dir;
    std::string method = "quadrature", convention = "standard";
    double duration = 1.0, threshold = 5.0;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> seed_opt;
    int workers = 1;

    auto* budget = app.add_subcommand("budget", "covertness budget from a parameter file");
    budget->add_option("--in", in_path, "input JSON")->required();
    budget->add_option("--out", out_path, "output JSON (stdout if omitted)");
    budget->add_option("--method", method, "oracle method: quadrature|monte_carlo");

    auto* gen = app.add_subcommand("gen", "generate a packet as IQ plus sidecar JSON");
    gen->add_option("--config", cfg_path, "experiment config JSON")->required();
    gen->add_option("--out", iq_path, "output IQ file")->required();
    gen->add_option("--sidecar", sidecar_path, "output sidecar JSON")->required();
    gen->add_option("--duration", duration, "on-segment duration in seconds");
    gen->add_option("--seed", seed, "generation seed");
    gen->add_option("--rx-bob", rx_bob, "also write the intended receiver's noisy capture");
    gen->add_option("--rx-willie", rx_willie, "also write the adversary's noisy capture");

    auto* decode = app.add_subcommand("decode", "decode a capture against its sidecar");
    decode->add_option("--iq", iq_path, "capture IQ file")->required();
    decode->add_option("--sidecar", sidecar_path, "sidecar JSON from gen")->required();
    decode->add_option("--out", out_path, "report JSON (stdout if omitted)");
    decode->add_option("--csv", csv_path, "append a result row to this CSV");
    decode->add_option("--phase-convention", convention, "standard|printed");
    decode->add_option("--sync-threshold", threshold, "peak-to-median sync threshold");

    auto* detect = app.add_subcommand("detect", "run the adversary detectors on a capture");
    detect->add_option("--iq", iq_path, "capture IQ file")->required();
    detect->add_option("--sidecar", sidecar_path, "sidecar JSON from gen")->required();
    detect->add_option("--out", out_path, "report JSON (stdout if omitted)");

    auto* calibrate = app.add_subcommand("calibrate", "estimate the adversary channel SNR");
    calibrate->add_option("--config", cfg_path, "experiment config JSON")->required();
    calibrate->add_option("--out", out_path, "estimate JSON (stdout if omitted)");
    calibrate->add_option("--seed", seed_opt, "override config seed");

    auto* optimize = app.add_subcommand("optimize", "Bayesian search over pulse designs");
    optimize->add_option("--config", cfg_path, "optimizer config JSON");
    optimize->add_option("--history", history_path, "JSONL evaluation history");
    optimize->add_option("--out", out_path, "best design JSON (stdout if omitted)");
    optimize->add_option("--seed", seed_opt, "override config seed");

    auto* sweep = app.add_subcommand("sweep", "run the duration sweep experiment");
    sweep->add_option("--config", cfg_path, "experiment config JSON")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--workers", workers, "worker threads (output is worker-independent)");
    sweep->add_option("--seed", seed_opt, "override config seed");

    auto* report = app.add_subcommand("report", "regenerate summaries from results.csv");
    report->add_option("--results", results_path, "results.csv path")->required();
    report->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (budget->parsed()) return cmd_budget(in_path, out_path, method);
        if (gen->parsed())
            return cmd_gen(cfg_path, iq_path, sidecar_path, duration, seed, rx_bob, rx_willie);
        if (decode->parsed())
            return cmd_decode(iq_path, sidecar_path, out_path, csv_path, convention, threshold);
        if (detect->parsed()) return cmd_detect(iq_path, sidecar_path, out_path);
        if (calibrate->parsed()) return cmd_calibrate(cfg_path, out_path, seed_opt);
        if (optimize->parsed()) return cmd_optimize(cfg_path, history_path, out_path, seed_opt);
        if (sweep->parsed()) return cmd_sweep(cfg_path, out_dir, workers, seed_opt);
        if (report->parsed()) return cmd_report(results_path, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
