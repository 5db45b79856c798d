#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <covert/channel.hpp>
#include <covert/warden.hpp>

using namespace covert;

namespace {

struct LabeledSlots {
    std::vector<cvec> slots;
    std::vector<std::uint8_t> t;
    std::vector<int> symbols;
    rvec thetas;
};

LabeledSlots make_calibration(const PulseParams& params, std::size_t n_slots, double a,
                              double sigma2, double theta_c, std::uint64_t seed) {
    const PulsePair pp = make_pulse_pair(params);
    ChannelParams ch;
    ch.a = a;
    ch.sigma2 = sigma2;
    ch.phase_mode = PhaseMode::fixed;
    ch.theta_fixed = theta_c;

    LabeledSlots out;
    SplitMix64 g(seed);
    for (std::size_t i = 0; i < n_slots; ++i) {
        const bool bearing = (i % 2) == 0;
        out.t.push_back(bearing ? 1 : 0);
        cvec x(static_cast<std::size_t>(params.n_s()), 0.0);
        if (bearing) {
            const int sym = static_cast<int>(g() % 4) + 1;
            const double th = 2.0 * kPi * uniform01(g);
            out.symbols.push_back(sym);
            out.thetas.push_back(th);
            x = assemble_pulse(pp, sym, th);
        }
        out.slots.push_back(channel_slot(x, ch, derive_seed(seed, 0xc4ULL), i));
    }
    return out;
}

}  // namespace

TEST_CASE("estimate_snr is exact on a noiseless fixed channel") {
    const PulseParams params = make_pulse_params(6, 6, 1.0, 1.0);
    const LabeledSlots cal = make_calibration(params, 40, 0.5, 0.0, 0.4, 21);
    const SnrEstimate e = estimate_snr(cal.slots, cal.t, cal.symbols, cal.thetas, params);
    CHECK(e.n_bearing == 20);
    CHECK(e.n_empty == 20);
    CHECK(e.a_hat == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(e.sigma2_hat == 0.0);
}

TEST_CASE("estimate_snr converges at low SNR with enough slots") {
    const PulseParams params = make_pulse_params(6, 6, 1.0, 1.0);
    const LabeledSlots cal = make_calibration(params, 40000, 0.1, 1.0, 1.1, 22);
    const SnrEstimate e = estimate_snr(cal.slots, cal.t, cal.symbols, cal.thetas, params);
    // a_hat per-quadrature sd is sqrt(sigma2 / (c^2 n_bearing)) ~ 0.005.
    CHECK(std::abs(e.a_hat - 0.1) < 0.015);
    CHECK(e.sigma2_hat == Catch::Approx(1.0).epsilon(0.01));
    CHECK(e.snr == Catch::Approx(e.a_hat * e.a_hat / e.sigma2_hat).epsilon(1e-12));
    CHECK(e.snr_db == Catch::Approx(10.0 * std::log10(e.snr)).epsilon(1e-12));

    const SnrEstimate e2 = estimate_snr(cal.slots, cal.t, cal.symbols, cal.thetas, params);
    CHECK(e2.a_hat == e.a_hat);
}

TEST_CASE("estimate_snr requires both slot populations and consistent sizes") {
    const PulseParams params = make_pulse_params(6, 6, 1.0, 1.0);
    LabeledSlots cal = make_calibration(params, 10, 0.5, 0.1, 0.0, 23);

    std::vector<std::uint8_t> all_off(cal.t.size(), 0);
    CHECK_THROWS_AS(estimate_snr(cal.slots, all_off, {}, {}, params),
                    InsufficientCalibration);

    std::vector<std::uint8_t> all_on(cal.t.size(), 1);
    std::vector<int> syms(cal.t.size(), 1);
    rvec ths(cal.t.size(), 0.0);
    CHECK_THROWS_AS(estimate_snr(cal.slots, all_on, syms, ths, params),
                    InsufficientCalibration);

    std::vector<std::uint8_t> short_t(cal.t.begin(), cal.t.end() - 1);
    CHECK_THROWS_AS(estimate_snr(cal.slots, short_t, cal.symbols, cal.thetas, params),
                    InvalidInput);

    std::vector<int> missing(cal.symbols.begin(), cal.symbols.end() - 1);
    CHECK_THROWS_AS(estimate_snr(cal.slots, cal.t, missing, cal.thetas, params),
                    InvalidInput);

    LabeledSlots bad = cal;
    bad.slots[0].pop_back();
    CHECK_THROWS_AS(estimate_snr(bad.slots, bad.t, bad.symbols, bad.thetas, params),
                    InvalidInput);
}

namespace {

cvec make_segment(const SlotModel& m, const PulseParams& params, std::size_t n_slots,
                  bool bearing, std::uint64_t seed) {
    const PulsePair pp = make_pulse_pair(params);
    ChannelParams ch;
    ch.a = m.a;
    ch.sigma2 = m.sigma2;
    ch.phase_mode = PhaseMode::uniform_per_slot;

    SplitMix64 g(derive_seed(seed, 0x5109ULL));
    cvec seg;
    seg.reserve(n_slots * static_cast<std::size_t>(m.n_s()));
    for (std::size_t i = 0; i < n_slots; ++i) {
        cvec x(static_cast<std::size_t>(m.n_s()), 0.0);
        if (bearing && uniform01(g) < m.alpha)
            x = assemble_pulse(pp, static_cast<int>(g() % 4) + 1, 0.0);
        const cvec y = channel_slot(x, ch, derive_seed(seed, 0xcbULL), i);
        seg.insert(seg.end(), y.begin(), y.end());
    }
    return seg;
}

}  // namespace

TEST_CASE("frame_llr separates the hypotheses in the mean") {
    const PulseParams params = make_pulse_params(6, 6, 1.0, 1.0);
    const SlotModel m = make_slot_model(params, 0.3, 1.0, 1.0);
    const std::size_t n_slots = 50, n_frames = 300;

    double mean0 = 0.0, sq0 = 0.0, mean1 = 0.0, sq1 = 0.0;
    for (std::size_t f = 0; f < n_frames; ++f) {
        const double l0 = frame_llr(m, make_segment(m, params, n_slots, false, 1000 + f));
        const double l1 = frame_llr(m, make_segment(m, params, n_slots, true, 2000 + f));
        mean0 += l0;
        sq0 += l0 * l0;
        mean1 += l1;
        sq1 += l1 * l1;
    }
    const double n = static_cast<double>(n_frames);
    mean0 /= n;
    mean1 /= n;
    const double se0 = std::sqrt((sq0 / n - mean0 * mean0) / n);
    const double se1 = std::sqrt((sq1 / n - mean1 * mean1) / n);
    CHECK(mean0 + 3.0 * se0 < 0.0);
    CHECK(mean1 - 3.0 * se1 > 0.0);

    cvec misaligned(13, 0.0);
    CHECK_THROWS_AS(frame_llr(m, misaligned), InvalidInput);
}

TEST_CASE("radiometer statistic and threshold follow their definitions") {
    const cvec seg = {{3.0, 4.0}, {0.0, 2.0}};
    CHECK(radiometer_stat(seg) == Catch::Approx(29.0).epsilon(1e-15));

    const PulseParams params = make_pulse_params(6, 6, 1.0, 1.0);
    const SlotModel m = make_slot_model(params, 0.3, 1.0, 0.7);
    const std::size_t n_slots = 40;
    const double noise = 2.0 * 40.0 * 12.0 * 0.7;
    const double signal = 0.3 * 40.0 * 1.0 * 2.0;
    CHECK(radiometer_threshold(m, n_slots) ==
          Catch::Approx(noise + 0.5 * signal).epsilon(1e-15));
}

TEST_CASE("likelihood-ratio detector dominates the radiometer") {
    const PulseParams params = make_pulse_params(6, 6, 1.0, 1.0);
    const SlotModel m = make_slot_model(params, 0.3, 1.0, 1.0);
    const std::size_t n_slots = 50;

    std::vector<cvec> segments;
    std::vector<int> labels;
    for (std::size_t i = 0; i < 200; ++i) {
        segments.push_back(make_segment(m, params, n_slots, false, 5000 + i));
        labels.push_back(0);
        segments.push_back(make_segment(m, params, n_slots, true, 6000 + i));
        labels.push_back(1);
    }
    const DetectionReport rep = empirical_pe(m, segments, labels);
    CHECK(rep.trials == 400);
    CHECK(rep.pe_llr ==
          Catch::Approx(static_cast<double>(rep.llr_errors) / 400.0).epsilon(1e-15));
    CHECK(rep.pe_radiometer ==
          Catch::Approx(static_cast<double>(rep.radiometer_errors) / 400.0).epsilon(1e-15));
    CHECK(rep.se_llr > 0.0);
    CHECK(rep.llr_mean_h0 < 0.0);
    CHECK(rep.llr_mean_h1 > 0.0);
    CHECK(rep.pe_llr <= rep.pe_radiometer + 3.0 * (rep.se_llr + rep.se_radiometer));

    CHECK_THROWS_AS(empirical_pe(m, segments, std::vector<int>(10, 0)), InvalidInput);
    CHECK_THROWS_AS(empirical_pe(m, {}, {}), InvalidInput);
}
