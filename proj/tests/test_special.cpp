#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "covert/special.hpp"

using namespace covert;

TEST_CASE("log-domain Bessel I0 matches high-precision references") {
    struct Ref {
        double x;
        double log_i0_x;
    };
    // values computed with 40-digit arithmetic
    const Ref refs[] = {
        {0.1, 0.0024984392338762433813},
        {1.0, 0.23591435850717864869},
        {5.0, 3.3046817758225334338},
        {14.9, 12.639073730400433245},
        {15.1, 12.832287538686563419},
        {30.0, 27.38470143317193585},
        {100.0, 96.779732689942583717},
        {700.0, 695.80569999844344908},
        {5000.0, 4994.8224898735877295},
    };
    for (const auto& r : refs) {
        INFO("x = " << r.x);
        CHECK(log_i0(r.x) == Catch::Approx(r.log_i0_x).epsilon(5e-14));
    }
    CHECK(log_i0(0.0) == 0.0);
    CHECK(log_i0(-3.0) == log_i0(3.0));
}

TEST_CASE("exponentially scaled I0 is consistent with the log form") {
    for (double x : {0.3, 2.0, 12.0, 40.0, 300.0}) {
        CHECK(i0e(x) == Catch::Approx(std::exp(log_i0(x) - x)).epsilon(1e-12));
    }
    CHECK(i0e(0.0) == 1.0);
    CHECK(i0e(1000.0) > 0.0);
}

TEST_CASE("binary entropy in bits with boundary conventions") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.25) == Catch::Approx(0.81127812445913286391).epsilon(1e-14));
    CHECK(binary_entropy(0.11) == Catch::Approx(0.49991595816452799564).epsilon(1e-14));
    CHECK(binary_entropy(0.3) == Catch::Approx(binary_entropy(0.7)).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), InvalidInput);
    CHECK_THROWS_AS(binary_entropy(1.01), InvalidInput);
}

TEST_CASE("Gaussian tail function against references") {
    CHECK(q_func(0.0) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(q_func(1.0) == Catch::Approx(0.15865525393145705141).epsilon(1e-13));
    CHECK(q_func(3.0) == Catch::Approx(0.0013498980316300945267).epsilon(1e-12));
    CHECK(q_func(-1.0) == Catch::Approx(1.0 - 0.15865525393145705141).epsilon(1e-13));
    double prev = 1.0;
    for (double x = -4.0; x <= 4.0; x += 0.25) {
        const double v = q_func(x);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("log-sum-exp is exact on small inputs and stable on huge ones") {
    const double v1[] = {std::log(1.0), std::log(2.0), std::log(3.0)};
    CHECK(log_sum_exp(v1, 3) == Catch::Approx(std::log(6.0)).epsilon(1e-14));
    const double v2[] = {1000.0, 1000.0};
    CHECK(log_sum_exp(v2, 2) == Catch::Approx(1000.0 + std::log(2.0)).epsilon(1e-14));
    const double v3[] = {-1.0e308, 0.0};
    CHECK(log_sum_exp(v3, 2) == Catch::Approx(0.0).margin(1e-14));
}
