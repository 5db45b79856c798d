#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "covert/density.hpp"
#include "covert/rng.hpp"

using namespace covert;

namespace {

SlotModel example_model(double alpha = 0.3, double a = 1.0, double sigma2 = 1.0) {
    return make_slot_model(make_pulse_params(6, 6, 1.0, 1.0), alpha, a, sigma2);
}

cvec random_slot(std::uint64_t seed, std::size_t n, double sd) {
    SplitMix64 g(seed);
    cvec w(n);
    for (auto& z : w) z = complex_normal(g, sd);
    return w;
}

}  // namespace

TEST_CASE("slot model derived scales") {
    const SlotModel m = example_model(0.2, 0.5, 2.0);
    CHECK(m.n_s() == 12);
    CHECK(m.c2() == Catch::Approx(2.0).epsilon(1e-12));
    CHECK(m.kappa() == Catch::Approx(0.25 * 2.0 / 4.0).epsilon(1e-12));
    CHECK(m.bessel_scale() == Catch::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(make_slot_model(make_pulse_params(6, 6, 1.0, 1.0), -0.1, 1.0, 1.0),
                    InvalidInput);
    CHECK_THROWS_AS(make_slot_model(make_pulse_params(6, 6, 1.0, 1.0), 1.1, 1.0, 1.0),
                    InvalidInput);
    CHECK_THROWS_AS(make_slot_model(make_pulse_params(6, 6, 1.0, 1.0), 0.5, 1.0, 0.0),
                    InvalidInput);
}

TEST_CASE("sufficient statistics match direct inner products") {
    const SlotModel m = example_model();
    const cvec w = random_slot(5, 12, 1.3);
    const SlotStats s = slot_stats(m, w);

    double ap = 0.0, bp = 0.0, aq = 0.0, bq = 0.0, e = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        ap += m.cp[i] * w[i].real();
        bp += m.cp[i] * w[i].imag();
        aq += m.cq[i] * w[6 + i].real();
        bq += m.cq[i] * w[6 + i].imag();
    }
    for (const auto& z : w) e += std::norm(z);
    CHECK(s.Ap == Catch::Approx(ap).epsilon(1e-14));
    CHECK(s.Bp == Catch::Approx(bp).epsilon(1e-14));
    CHECK(s.Aq == Catch::Approx(aq).epsilon(1e-14));
    CHECK(s.Bq == Catch::Approx(bq).epsilon(1e-14));
    CHECK(s.w2 == Catch::Approx(e).epsilon(1e-14));

    cvec bad(5, 0.0);
    CHECK_THROWS_AS(slot_stats(m, bad), InvalidInput);
}

TEST_CASE("sign flips of the projections permute the fold amplitudes") {
    SlotStats s{0.7, -0.4, 1.1, 0.9, 0.0};
    auto base = f_k(s);
    std::sort(base.begin(), base.end());
    for (int mask = 1; mask < 16; ++mask) {
        SlotStats t = s;
        if (mask & 1) t.Ap = -t.Ap;
        if (mask & 2) t.Bp = -t.Bp;
        if (mask & 4) t.Aq = -t.Aq;
        if (mask & 8) t.Bq = -t.Bq;
        auto flipped = f_k(t);
        std::sort(flipped.begin(), flipped.end());
        for (int k = 0; k < 4; ++k)
            CHECK(flipped[static_cast<std::size_t>(k)] ==
                  Catch::Approx(base[static_cast<std::size_t>(k)]).epsilon(1e-14));
    }
}

TEST_CASE("empty-slot log density is the circular Gaussian") {
    const SlotModel m = example_model(0.3, 1.0, 0.7);
    const cvec w = random_slot(8, 12, 0.9);
    double direct = 0.0;
    for (const auto& z : w)
        direct += -std::log(2.0 * kPi * 0.7) - std::norm(z) / (2.0 * 0.7);
    const SlotStats s = slot_stats(m, w);
    CHECK(log_density_h0(m, s.w2) == Catch::Approx(direct).epsilon(1e-12));
}

TEST_CASE("slot likelihood ratio limits") {
    const cvec w = random_slot(9, 12, 1.0);
    CHECK(slot_llr(example_model(0.0), w) == 0.0);

    // alpha = 1: pure pulse hypothesis, ratio can be negative or positive
    const SlotModel m1 = example_model(1.0);
    CHECK(std::isfinite(slot_llr(m1, w)));

    // a = 0: pulse indistinguishable from noise, ratio exactly 0
    const SlotModel m0 = example_model(0.5, 0.0);
    CHECK(slot_llr(m0, w) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("likelihood ratio is computable at extreme signal energies") {
    // large projections push the Bessel argument far into the asymptotic
    // branch; the log-domain evaluation must stay finite
    SlotModel m = example_model(0.5, 50.0, 0.01);
    cvec w(12, {30.0, -20.0});
    const double llr = slot_llr(m, w);
    CHECK(std::isfinite(llr));
    CHECK(llr > 0.0);
}

TEST_CASE("mixture log density equals the explicit two-term mixture") {
    const SlotModel m = example_model(0.25, 0.8, 1.1);
    const cvec w = random_slot(10, 12, 1.0);
    const SlotStats s = slot_stats(m, w);

    // direct: log( (1-alpha) p0 + (alpha/4) sum_k p0 e^{-kappa} I0(u f_k) )
    const double lp0 = log_density_h0(m, s.w2);
    const auto f = f_k(s);
    double acc = (1.0 - m.alpha);
    for (int k = 0; k < 4; ++k)
        acc += (m.alpha / 4.0) *
               std::exp(-m.kappa() + log_i0(m.bessel_scale() * f[static_cast<std::size_t>(k)]));
    const double direct = lp0 + std::log(acc);
    CHECK(log_density_h1(m, w) == Catch::Approx(direct).epsilon(1e-12));
}
