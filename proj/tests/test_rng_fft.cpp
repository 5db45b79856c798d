#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "covert/fft.hpp"
#include "covert/rng.hpp"

using namespace covert;

TEST_CASE("generator matches the published splitmix64 sequence") {
    SplitMix64 g(1234567);
    CHECK(g() == 0x599ed017fb08fc85ULL);
    CHECK(g() == 0x2c73f08458540fa5ULL);
    CHECK(g() == 0x883ebce5a3f27c77ULL);
    CHECK(g() == 0x3fbef740e9177b3fULL);
}

TEST_CASE("seed derivation is deterministic and separates substreams") {
    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
    SplitMix64 a(derive_seed(9, 0));
    SplitMix64 b(derive_seed(9, 1));
    CHECK(a() != b());
}

TEST_CASE("uniform doubles live in the half-open unit interval") {
    SplitMix64 g(5);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform01(g);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("complex normal samples have the per-quadrature scale") {
    SplitMix64 g(17);
    const double sd = 0.7;
    const int n = 200000;
    double mr = 0.0, mi = 0.0, vr = 0.0, vi = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = complex_normal(g, sd);
        mr += z.real();
        mi += z.imag();
        vr += z.real() * z.real();
        vi += z.imag() * z.imag();
    }
    mr /= n;
    mi /= n;
    vr = vr / n - mr * mr;
    vi = vi / n - mi * mi;
    const double se_mean = sd / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mr) < 4.0 * se_mean);
    CHECK(std::abs(mi) < 4.0 * se_mean);
    CHECK(vr == Catch::Approx(sd * sd).epsilon(0.03));
    CHECK(vi == Catch::Approx(sd * sd).epsilon(0.03));
}

TEST_CASE("fft inverts itself and matches the direct transform") {
    SplitMix64 g(3);
    cvec x(16);
    for (auto& v : x) v = {2.0 * uniform01(g) - 1.0, 2.0 * uniform01(g) - 1.0};

    cvec y = x;
    fft_inplace(y, false);
    for (std::size_t k = 0; k < x.size(); ++k) {
        std::complex<double> direct = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            direct += x[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k * j) /
                                                 static_cast<double>(x.size()));
        CHECK(std::abs(y[k] - direct) < 1e-12);
    }

    fft_inplace(y, true);
    for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(y[j] - x[j]) < 1e-12);
}

TEST_CASE("fft requires a power-of-two length") {
    cvec x(12, 0.0);
    CHECK_THROWS_AS(fft_inplace(x, false), InvalidInput);
    CHECK(next_pow2(12) == 16);
    CHECK(next_pow2(16) == 16);
    CHECK(next_pow2(1) == 1);
}

TEST_CASE("fft cross-correlation matches the direct sliding product") {
    SplitMix64 g(11);
    cvec rx(60), tpl(13);
    for (auto& v : rx) v = {2.0 * uniform01(g) - 1.0, 2.0 * uniform01(g) - 1.0};
    for (auto& v : tpl) v = {2.0 * uniform01(g) - 1.0, 2.0 * uniform01(g) - 1.0};

    const cvec c = xcorr_valid(rx, tpl);
    REQUIRE(c.size() == rx.size() - tpl.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        std::complex<double> direct = 0.0;
        for (std::size_t j = 0; j < tpl.size(); ++j) direct += rx[k + j] * std::conj(tpl[j]);
        CHECK(std::abs(c[k] - direct) < 1e-10);
    }
}
