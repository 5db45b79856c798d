#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "covert/common.hpp"
#include "covert/density.hpp"
#include "covert/pulse.hpp"
#include "covert/rng.hpp"
#include "covert/special.hpp"

namespace covert {

// Gauss-Hermite nodes/weights mapped to a standard normal: E[h(S)] is
// approximated by sum_i w[i] h(x[i]) with sum w = 1. Computed by the
// Golub-Welsch tridiagonal eigendecomposition.
struct GaussHermite {
    rvec x;
    rvec w;
};

inline GaussHermite gauss_hermite_normal(int degree) {
    if (degree < 2) throw InvalidInput("gauss_hermite_normal: degree must be >= 2");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(degree, degree);
    for (int k = 1; k < degree; ++k) {
        const double b = std::sqrt(k / 2.0);
        J(k - 1, k) = b;
        J(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw NumericFailure("gauss_hermite_normal: eigensolver failed");
    GaussHermite gh;
    gh.x.resize(static_cast<std::size_t>(degree));
    gh.w.resize(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
        // physicists' nodes scaled by sqrt(2) give standard-normal nodes
        gh.x[static_cast<std::size_t>(i)] = std::sqrt(2.0) * es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        gh.w[static_cast<std::size_t>(i)] = v0 * v0;
    }
    return gh;
}

enum class OracleMethod { quadrature, monte_carlo };

struct OracleOptions {
    double quad_rel_tol = 1e-8;    // agreement between successive degrees
    double mc_rel_se = 3e-3;       // target relative SE of the per-slot value
    std::uint64_t mc_max_samples = std::uint64_t{1} << 26;
    std::uint64_t seed = 0x5eedULL;
};

struct DivergenceResult {
    double value = 0.0;     // frame-level H^2 or D (bits)
    double se = 0.0;
    double per_slot = 0.0;  // per-slot 1 - Bhattacharyya, or D_slot (bits)
    double per_slot_se = 0.0;
};

namespace detail {

// g = p1/p0 - 1 evaluated at standardized projections s in R^4; exact up to
// floating point, conditioned so small values survive: each mixture term
// goes through expm1 of (log I0(u f_k) - kappa).
struct SlotIntegrand {
    double alpha, u, kappa, scp, scq;

    explicit SlotIntegrand(const SlotModel& m)
        : alpha(m.alpha),
          u(m.bessel_scale()),
          kappa(m.kappa()),
          scp(std::sqrt(m.sigma2) * m.c_p),
          scq(std::sqrt(m.sigma2) * m.c_q) {}

    double g(double s1, double s2, double s3, double s4) const {
        const double ap = scp * s1, bp = scp * s2, aq = scq * s3, bq = scq * s4;
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double e1 = (k / 2 == 0) ? 1.0 : -1.0;
            const double e2 = (k % 2 == 0) ? 1.0 : -1.0;
            const double f = std::hypot(ap + e1 * aq, bp + e2 * bq);
            acc += std::expm1(log_i0(u * f) - kappa);
        }
        return alpha * (0.25 * acc);
    }

    // phi(g) = 1 + g/2 - sqrt(1+g) >= 0, written as a cancellation-free
    // rational; E0[phi(g)] = 1 - B because E0[g] = 0.
    static double phi_hellinger(double g) {
        if (g > 1e100) return 0.5 * g;
        return (0.25 * g * g) / ((1.0 + 0.5 * g) + std::sqrt(1.0 + g));
    }

    // E0[g - log(1+g)] = D(P0 || P1) in nats, again using E0[g] = 0.
    static double phi_kl(double g) {
        return g - std::log1p(g);
    }
};

template <typename Phi>
inline double quad_slot(const SlotIntegrand& in, const GaussHermite& gh, Phi&& phi) {
    // The integrand is even in each coordinate (sign flips permute the f_k),
    // so only nonnegative nodes are evaluated, weights folded 2x per axis.
    std::vector<double> xs, ws;
    const std::size_t n = gh.x.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (gh.x[i] > 0.0) {
            xs.push_back(gh.x[i]);
            ws.push_back(2.0 * gh.w[i]);
        } else if (gh.x[i] == 0.0) {
            xs.push_back(0.0);
            ws.push_back(gh.w[i]);
        }
    }
    const std::size_t m = xs.size();
    double total = 0.0;
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = 0; i2 < m; ++i2) {
            const double w12 = ws[i1] * ws[i2];
            for (std::size_t i3 = 0; i3 < m; ++i3) {
                const double w123 = w12 * ws[i3];
                double row = 0.0;
                for (std::size_t i4 = 0; i4 < m; ++i4)
                    row += ws[i4] * phi(in.g(xs[i1], xs[i2], xs[i3], xs[i4]));
                total += w123 * row;
            }
        }
    return total;
}

inline double frame_from_slot_h2(double per_slot, std::uint64_t n_p) {
    // 1 - (1 - per_slot)^{n_p} without cancellation
    return -std::expm1(static_cast<double>(n_p) * std::log1p(-per_slot));
}

inline double frame_h2_derivative(double per_slot, std::uint64_t n_p) {
    // d/dh [1 - (1-h)^n] = n (1-h)^{n-1}
    const double n = static_cast<double>(n_p);
    return n * std::exp((n - 1.0) * std::log1p(-per_slot));
}

template <typename Phi>
inline std::pair<double, double> quad_escalate(const SlotIntegrand& in, Phi&& phi,
                                               double rel_tol) {
    static const int degrees[] = {8, 12, 16, 24, 32, 48, 64};
    double prev = 0.0;
    bool have_prev = false;
    double diff = 0.0;
    for (int d : degrees) {
        const GaussHermite gh = gauss_hermite_normal(d);
        const double v = quad_slot(in, gh, phi);
        if (have_prev) {
            diff = std::abs(v - prev);
            if (diff <= rel_tol * std::max(std::abs(v), 1e-300))
                return {v, diff};
        }
        prev = v;
        have_prev = true;
    }
    throw PrecisionNotReached("quadrature did not converge at max degree", prev, diff);
}

template <typename Phi>
inline std::pair<double, double> mc_slot(const SlotIntegrand& in, Phi&& phi,
                                         const OracleOptions& opts) {
    SplitMix64 g(derive_seed(opts.seed, 0x0a11ceULL));
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> batch_means;
    const std::uint64_t batch = 1 << 13;
    std::uint64_t total = 0;
    double mean = 0.0, se = 0.0;
    // Total sample count doubles each round; batches stay equal-sized so the
    // jackknife over batch means is straightforward.
    std::size_t add = 2;
    while (true) {
        for (std::size_t j = 0; j < add; ++j) {
            double s = 0.0;
            for (std::uint64_t i = 0; i < batch; ++i) s += phi(in.g(nd(g), nd(g), nd(g), nd(g)));
            batch_means.push_back(s / static_cast<double>(batch));
            total += batch;
        }
        add = batch_means.size();
        const std::size_t b = batch_means.size();
        double m = 0.0;
        for (double v : batch_means) m += v;
        m /= static_cast<double>(b);
        mean = m;
        double ss = 0.0;
        for (double v : batch_means) {
            const double loo = (m * static_cast<double>(b) - v) / static_cast<double>(b - 1);
            ss += (loo - m) * (loo - m);
        }
        se = std::sqrt(ss * static_cast<double>(b - 1) / static_cast<double>(b));
        if (se <= opts.mc_rel_se * std::max(std::abs(mean), 1e-300)) break;
        if (total >= opts.mc_max_samples) break;  // caller decides whether to throw
    }
    return {mean, se};
}

template <typename Phi>
inline std::pair<double, double> slot_expectation(const SlotModel& m, OracleMethod method,
                                                  const OracleOptions& opts, Phi&& phi,
                                                  bool* converged) {
    const SlotIntegrand in(m);
    *converged = true;
    if (method == OracleMethod::quadrature) {
        return quad_escalate(in, phi, opts.quad_rel_tol);
    }
    auto [mean, se] = mc_slot(in, phi, opts);
    if (se > opts.mc_rel_se * std::max(std::abs(mean), 1e-300)) *converged = false;
    return {mean, se};
}

}  // namespace detail

// Squared Hellinger distance between the n_p-fold product distributions of
// an empty frame and a pulse-bearing frame, H^2 = 1 - B_slot^{n_p}, where
// the per-slot Bhattacharyya coefficient is evaluated through the
// variance-reduced identity E0[1 + g/2 - sqrt(1+g)] = 1 - B.
inline DivergenceResult hellinger_oracle(const PulseParams& params, double alpha, double a_w,
                                         double sigma_w2, std::uint64_t n_p,
                                         OracleMethod method, const OracleOptions& opts = {}) {
    const SlotModel m = make_slot_model(params, alpha, a_w, sigma_w2);
    DivergenceResult r;
    if (alpha == 0.0 || a_w == 0.0) return r;
    bool converged = true;
    auto [h, se] =
        detail::slot_expectation(m, method, opts, detail::SlotIntegrand::phi_hellinger,
                                 &converged);
    h = std::clamp(h, 0.0, 1.0);
    r.per_slot = h;
    r.per_slot_se = se;
    r.value = detail::frame_from_slot_h2(h, n_p);
    r.se = se * detail::frame_h2_derivative(h, n_p);
    if (!converged)
        throw PrecisionNotReached("hellinger_oracle: MC sample budget exhausted", r.value,
                                  r.se);
    return r;
}

// Relative entropy D(P0^n || P1^n) in bits (slots are independent, so the
// frame value is n_p times the per-slot integral).
inline DivergenceResult relative_entropy_oracle(const PulseParams& params, double alpha,
                                                double a_w, double sigma_w2,
                                                std::uint64_t n_p, OracleMethod method,
                                                const OracleOptions& opts = {}) {
    const SlotModel m = make_slot_model(params, alpha, a_w, sigma_w2);
    DivergenceResult r;
    if (alpha == 0.0 || a_w == 0.0) return r;
    bool converged = true;
    auto [d, se] =
        detail::slot_expectation(m, method, opts, detail::SlotIntegrand::phi_kl, &converged);
    d = std::max(d, 0.0);
    const double to_bits = 1.0 / std::log(2.0);
    r.per_slot = d * to_bits;
    r.per_slot_se = se * to_bits;
    r.value = static_cast<double>(n_p) * r.per_slot;
    r.se = static_cast<double>(n_p) * r.per_slot_se;
    if (!converged)
        throw PrecisionNotReached("relative_entropy_oracle: MC sample budget exhausted",
                                  r.value, r.se);
    return r;
}

}  // namespace covert
