#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "covert/channel.hpp"

using namespace covert;

TEST_CASE("noise variance is per quadrature") {
    ChannelParams p{0.0, 0.8, PhaseMode::fixed, 0.0};
    const std::vector<cvec> out = channel_transmit({cvec(500000, 0.0)}, p, 21);
    double vr = 0.0, vi = 0.0;
    for (const auto& z : out[0]) {
        vr += z.real() * z.real();
        vi += z.imag() * z.imag();
    }
    vr /= static_cast<double>(out[0].size());
    vi /= static_cast<double>(out[0].size());
    CHECK(vr == Catch::Approx(0.8).epsilon(0.01));
    CHECK(vi == Catch::Approx(0.8).epsilon(0.01));
}

TEST_CASE("fixed phase mode applies an exact complex gain") {
    ChannelParams p{2.0, 0.0, PhaseMode::fixed, 0.7};
    cvec x = {{1.0, 0.0}, {0.0, -1.0}, {0.3, 0.4}};
    const std::vector<cvec> out = channel_transmit({x}, p, 4);
    const auto gain = 2.0 * std::polar(1.0, 0.7);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(out[0][i] - gain * x[i]) < 1e-15);
}

TEST_CASE("per-slot phases are uniform on the circle") {
    ChannelParams p{1.0, 0.0, PhaseMode::uniform_per_slot, 0.0};
    const std::size_t n = 4096;
    std::vector<cvec> slots(n, cvec{{1.0, 0.0}});
    const std::vector<cvec> out = channel_transmit(slots, p, 99);
    rvec u(n);
    for (std::size_t i = 0; i < n; ++i) {
        double th = std::arg(out[i][0]);
        if (th < 0.0) th += 2.0 * kPi;
        u[i] = th / (2.0 * kPi);
    }
    std::sort(u.begin(), u.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fe_hi = static_cast<double>(i + 1) / static_cast<double>(n);
        const double fe_lo = static_cast<double>(i) / static_cast<double>(n);
        d = std::max({d, std::abs(fe_hi - u[i]), std::abs(u[i] - fe_lo)});
    }
    // Kolmogorov-Smirnov, 1% critical value
    CHECK(d < 1.6276 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("phase is constant within a slot and varies across slots") {
    ChannelParams p{1.0, 0.0, PhaseMode::uniform_per_slot, 0.0};
    std::vector<cvec> slots(8, cvec(5, {1.0, 0.0}));
    const std::vector<cvec> out = channel_transmit(slots, p, 7);
    for (const auto& s : out)
        for (const auto& z : s) CHECK(std::abs(z - s[0]) < 1e-15);
    bool differs = false;
    for (std::size_t i = 1; i < out.size(); ++i)
        if (std::abs(out[i][0] - out[0][0]) > 1e-9) differs = true;
    CHECK(differs);
}

TEST_CASE("slot substreams make chunked processing bit-exact") {
    ChannelParams p{0.6, 0.4, PhaseMode::uniform_per_slot, 0.0};
    std::vector<cvec> slots(10);
    SplitMix64 g(13);
    for (auto& s : slots) {
        s.resize(6);
        for (auto& z : s) z = {2.0 * uniform01(g) - 1.0, 2.0 * uniform01(g) - 1.0};
    }
    const std::vector<cvec> whole = channel_transmit(slots, p, 555);

    const std::vector<cvec> first(slots.begin(), slots.begin() + 4);
    const std::vector<cvec> rest(slots.begin() + 4, slots.end());
    const std::vector<cvec> out_a = channel_transmit(first, p, 555, 0);
    const std::vector<cvec> out_b = channel_transmit(rest, p, 555, 4);

    REQUIRE(out_a.size() + out_b.size() == whole.size());
    for (std::size_t i = 0; i < out_a.size(); ++i)
        for (std::size_t j = 0; j < out_a[i].size(); ++j) CHECK(out_a[i][j] == whole[i][j]);
    for (std::size_t i = 0; i < out_b.size(); ++i)
        for (std::size_t j = 0; j < out_b[i].size(); ++j) CHECK(out_b[i][j] == whole[4 + i][j]);
}

TEST_CASE("identical seeds reproduce identical channels") {
    ChannelParams p{1.0, 1.0, PhaseMode::uniform_per_slot, 0.0};
    std::vector<cvec> slots(3, cvec(4, {0.5, 0.5}));
    const auto a = channel_transmit(slots, p, 42);
    const auto b = channel_transmit(slots, p, 42);
    const auto c = channel_transmit(slots, p, 43);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) CHECK(a[i][j] == b[i][j]);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != c[i][j]) differs = true;
    CHECK(differs);
}

TEST_CASE("channel parameter validation") {
    CHECK_NOTHROW(ChannelParams{1.0, 0.0, PhaseMode::fixed, 0.0}.validate());
    CHECK_THROWS_AS((ChannelParams{-1.0, 0.1, PhaseMode::fixed, 0.0}.validate()), InvalidInput);
    CHECK_THROWS_AS((ChannelParams{1.0, -0.1, PhaseMode::fixed, 0.0}.validate()), InvalidInput);
}
