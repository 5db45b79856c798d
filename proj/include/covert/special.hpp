#pragma once

#include <cmath>
#include <cstddef>

#include "covert/common.hpp"

namespace covert {

namespace detail {

// Horner evaluation, coefficients in ascending order.
template <std::size_t N>
inline double poly_eval(const double (&c)[N], double x) {
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) r = r * x + c[i];
    return r;
}

// Minimax rational approximations for I0 on [0,15] and (15,inf),
// Blair and Edwards, Chalk River report AECL-4928 (1974).
inline double i0_small(double x) {
    static const double P1[] = {
        -2.2335582639474375249e+15, -5.5050369673018427753e+14,
        -3.2940087627407749166e+13, -8.4925101247114157499e+11,
        -1.1912746104985237192e+10, -1.0313066708737980747e+08,
        -5.9545626019847898221e+05, -2.4125195876041896775e+03,
        -7.0935347449210549190e+00, -1.5453977791786851041e-02,
        -2.5172644670688975051e-05, -3.0517226450451067446e-08,
        -2.6843448573468483278e-11, -1.5982226675653184646e-14,
        -5.2487866627945699800e-18,
    };
    static const double Q1[] = {
        -2.2335582639474375245e+15, 7.8858692566751002988e+12,
        -1.2207067397808979846e+10, 1.0377081058062166144e+07,
        -4.8527560179962773045e+03, 1.0,
    };
    const double y = x * x;
    return poly_eval(P1, y) / poly_eval(Q1, y);
}

// r(y) with y = 1/x - 1/15, such that I0(x) = exp(x)/sqrt(x) * r(y).
inline double i0_large_ratio(double x) {
    static const double P2[] = {
        -2.2210262233306573296e-04, 1.3067392038106924055e-02,
        -4.4700805721174453923e-01, 5.5674518371240761397e+00,
        -2.3517945679239481621e+01, 3.1611322818701131207e+01,
        -9.6090021968656180000e+00,
    };
    static const double Q2[] = {
        -5.5194330231005480228e-04, 3.2547697594819615062e-02,
        -1.1151759188741312645e+00, 1.3982595353892851542e+01,
        -6.0228002066743340583e+01, 8.5539563258012929600e+01,
        -3.1446690275135491500e+01, 1.0,
    };
    const double y = 1.0 / x - 1.0 / 15.0;
    return poly_eval(P2, y) / poly_eval(Q2, y);
}

}  // namespace detail

// log(I0(x)). Log-domain on purpose: arguments in likelihood ratios reach
// far past the overflow point of I0 itself (~713), and the density math
// only ever needs the logarithm.
inline double log_i0(double x) {
    x = std::abs(x);
    if (x == 0.0) return 0.0;
    if (x <= 15.0) return std::log(detail::i0_small(x));
    return x - 0.5 * std::log(x) + std::log(detail::i0_large_ratio(x));
}

// exp(-|x|) * I0(x), the exponentially scaled variant.
inline double i0e(double x) {
    x = std::abs(x);
    if (x <= 15.0) return detail::i0_small(x) * std::exp(-x);
    return detail::i0_large_ratio(x) / std::sqrt(x);
}

// Binary entropy in bits with the 0 log 0 = 0 convention.
inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw InvalidInput("binary_entropy: p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double q_func(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// log(sum(exp(v))) over a small fixed-size buffer.
inline double log_sum_exp(const double* v, std::size_t n) {
    double m = v[0];
    for (std::size_t i = 1; i < n; ++i)
        if (v[i] > m) m = v[i];
    if (std::isinf(m) && m < 0) return m;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(v[i] - m);
    return m + std::log(s);
}

}  // namespace covert
