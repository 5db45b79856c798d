#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "covert/pulse.hpp"

using namespace covert;

TEST_CASE("Gaussian envelope is centered at half the slot length") {
    // 40-digit reference for n = 6, sigma = 1.2
    const double ref[] = {0.043936933623407417327, 0.24935220877729619882,
                          0.70664827785771626436,  1.0,
                          0.70664827785771626436,  0.24935220877729619882};
    const rvec g = gaussian_envelope(6, 1.2);
    REQUIRE(g.size() == 6);
    for (std::size_t m = 0; m < 6; ++m) CHECK(g[m] == Catch::Approx(ref[m]).epsilon(1e-14));

    const rvec g1 = gaussian_envelope(1, 1.0);
    REQUIRE(g1.size() == 1);
    CHECK(g1[0] == Catch::Approx(0.88249690258459540286).epsilon(1e-14));
}

TEST_CASE("envelope normalization hits the requested Euclidean norm") {
    rvec g = gaussian_envelope(6, 1.2);
    double n0 = 0.0;
    for (double v : g) n0 += v * v;
    CHECK(std::sqrt(n0) == Catch::Approx(1.4577335419681515558).epsilon(1e-14));

    const rvec u = normalize_pulse(g, 2.5);
    double n1 = 0.0;
    for (double v : u) n1 += v * v;
    CHECK(std::sqrt(n1) == Catch::Approx(2.5).epsilon(1e-13));

    const rvec z = normalize_pulse(g, 0.0);
    for (double v : z) CHECK(v == 0.0);

    rvec flat(4, 0.0);
    CHECK_THROWS_AS(normalize_pulse(flat, 1.0), InvalidInput);
}

TEST_CASE("in-slot amplitude fraction decreases as the envelope widens") {
    // at very narrow envelopes the ratio saturates at 1 in floating point
    double prev = 1.0;
    for (double s : {0.3, 0.6, 1.0, 1.5, 2.5, 4.0}) {
        const double r = confinement_ratio(6, s);
        CHECK(r <= prev);
        CHECK(r > 0.0);
        CHECK(r <= 1.0);
        prev = r;
    }
    CHECK(prev < 0.95);
}

TEST_CASE("widest envelope meeting the confinement target") {
    struct Ref {
        int n;
        double sigma;
    };
    // roots of the 0.999 in-slot amplitude fraction, 40-digit solver
    const Ref refs[] = {{2, 0.269078794316906}, {6, 0.854531612951459}, {12, 1.78310132051524}};
    for (const auto& r : refs) {
        const double s = select_sigma(r.n);
        INFO("n = " << r.n);
        CHECK(s == Catch::Approx(r.sigma).epsilon(2e-6));
        CHECK(confinement_ratio(r.n, s) >= 0.999 - 1e-9);
        CHECK(confinement_ratio(r.n, 1.01 * s) < 0.999);
    }
    // n = 1: a single sample sits half a sample off center, so no width can
    // concentrate 99.9% of the mass in the slot; the search floor is returned
    CHECK(select_sigma(1) == Catch::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("pulse parameter validation") {
    CHECK_NOTHROW(make_pulse_params(6, 6, 1.0, 1.0).validate());
    CHECK_NOTHROW(make_pulse_params(6, 6, 0.0, 1.0).validate());  // pilotless
    CHECK_THROWS_AS(make_pulse_params(6, 6, 1.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(make_pulse_params(0, 6, 1.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(make_pulse_params(6, 0, 1.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(make_pulse_params(6, 6, -0.5, 1.0), InvalidInput);

    const PulseParams p = make_pulse_params(4, 8, 0.5, 2.0);
    CHECK(p.n_s() == 12);
    CHECK(p.c() == Catch::Approx(std::sqrt(0.25 + 4.0)).epsilon(1e-15));
    CHECK(p.r_pq() == Catch::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("assembled slot waveform carries the keyed phase structure") {
    const PulseParams params = make_pulse_params(6, 6, 1.0, 1.0);
    const PulsePair pp = make_pulse_pair(params);

    CHECK(symbol_phase(1) == Catch::Approx(kPi / 4).epsilon(1e-15));
    CHECK(symbol_phase(2) == Catch::Approx(3 * kPi / 4).epsilon(1e-15));
    CHECK(symbol_phase(3) == Catch::Approx(5 * kPi / 4).epsilon(1e-15));
    CHECK(symbol_phase(4) == Catch::Approx(7 * kPi / 4).epsilon(1e-15));
    CHECK_THROWS_AS(symbol_phase(0), InvalidInput);
    CHECK_THROWS_AS(symbol_phase(5), InvalidInput);

    for (int x = 1; x <= 4; ++x) {
        for (double theta : {0.0, 0.9, 4.1}) {
            const cvec u = assemble_pulse(pp, x, theta);
            REQUIRE(u.size() == 12);
            double e = 0.0;
            for (const auto& v : u) e += std::norm(v);
            CHECK(std::sqrt(e) == Catch::Approx(params.c()).epsilon(1e-12));
            // pilot half: common rotation of a strictly positive real pulse
            for (std::size_t i = 0; i < 6; ++i) {
                const auto expected = std::polar(1.0, theta) * pp.pilot[i];
                CHECK(std::abs(u[i] - expected) < 1e-12);
                CHECK(pp.pilot[i] > 0.0);
            }
            // data half: additional keyed offset
            for (std::size_t i = 0; i < 6; ++i) {
                const auto expected = std::polar(1.0, theta + symbol_phase(x)) * pp.data[i];
                CHECK(std::abs(u[6 + i] - expected) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(assemble_pulse(pp, 0, 0.0), InvalidInput);
}

TEST_CASE("pilotless pulse pair has an identically zero pilot half") {
    const PulseParams params = make_pulse_params(6, 6, 0.0, 1.0);
    const PulsePair pp = make_pulse_pair(params);
    for (double v : pp.pilot) CHECK(v == 0.0);
    const cvec u = assemble_pulse(pp, 2, 0.4);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(u[i]) == 0.0);
}
