#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "covert/common.hpp"
#include "covert/rng.hpp"

namespace covert {

// Zero-mean Gaussian process with a Matern-5/2 kernel and per-dimension
// length scales, fit on standardized targets with fixed per-point
// observation noise. Inputs are expected in the unit box.
class GaussianProcess {
  public:
    // X: rows are points; y: observed means; noise_var: per-point variance
    // of the observation noise (heteroscedastic, fixed, in y units).
    void fit(const std::vector<rvec>& X, const rvec& y, const rvec& noise_var,
             std::uint64_t seed) {
        if (X.empty() || X.size() != y.size() || y.size() != noise_var.size())
            throw InvalidInput("GaussianProcess::fit: inconsistent training data");
        dim_ = X[0].size();
        for (const auto& row : X)
            if (row.size() != dim_) throw InvalidInput("GaussianProcess::fit: ragged inputs");
        X_ = X;

        // standardize targets; the GP itself is zero-mean
        const std::size_t n = y.size();
        y_mean_ = 0.0;
        for (double v : y) y_mean_ += v;
        y_mean_ /= static_cast<double>(n);
        double ss = 0.0;
        for (double v : y) ss += (v - y_mean_) * (v - y_mean_);
        y_sd_ = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        if (!(y_sd_ > 1e-12)) y_sd_ = 1.0;
        yz_.resize(n);
        for (std::size_t i = 0; i < n; ++i) yz_[i] = (y[i] - y_mean_) / y_sd_;
        noise_z_.resize(n);
        for (std::size_t i = 0; i < n; ++i) noise_z_[i] = noise_var[i] / (y_sd_ * y_sd_);

        fit_hyperparams(seed);
        factorize();
    }

    struct Posterior {
        double mean = 0.0;
        double var = 0.0;  // latent variance, observation noise excluded
    };

    Posterior predict(const rvec& x) const {
        if (x.size() != dim_) throw InvalidInput("GaussianProcess::predict: dimension mismatch");
        const std::size_t n = X_.size();
        Eigen::VectorXd k(n);
        for (std::size_t i = 0; i < n; ++i) k(static_cast<Eigen::Index>(i)) = kernel(X_[i], x);
        const double mz = k.dot(alpha_);
        Eigen::VectorXd v = llt_.matrixL().solve(k);
        double var = kernel(x, x) - v.squaredNorm();
        var = std::max(var, 0.0);
        return {y_mean_ + y_sd_ * mz, y_sd_ * y_sd_ * var};
    }

    const rvec& length_scales() const { return ell_; }
    double signal_sd() const { return sf_; }

  private:
    double kernel(const rvec& a, const rvec& b) const {
        double d2 = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            const double d = (a[j] - b[j]) / ell_[j];
            d2 += d * d;
        }
        const double d = std::sqrt(d2);
        const double s5d = std::sqrt(5.0) * d;
        return sf_ * sf_ * (1.0 + s5d + 5.0 * d2 / 3.0) * std::exp(-s5d);
    }

    // Cholesky of K + diag(noise) + jitter, escalating jitter on breakdown.
    void factorize() {
        const std::size_t n = X_.size();
        Eigen::MatrixXd K(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = kernel(X_[i], X_[j]);
                K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
                K(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            }
        for (std::size_t i = 0; i < n; ++i)
            K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += noise_z_[i];
        double jitter = 1e-10;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Eigen::MatrixXd Kj = K;
            Kj.diagonal().array() += jitter;
            llt_.compute(Kj);
            if (llt_.info() == Eigen::Success) {
                Eigen::Map<const Eigen::VectorXd> yv(yz_.data(),
                                                     static_cast<Eigen::Index>(yz_.size()));
                alpha_ = llt_.solve(yv);
                return;
            }
            jitter *= 10.0;
        }
        throw NumericFailure("GaussianProcess: kernel matrix not positive definite");
    }

    double log_marginal(const rvec& log_ell, double log_sf) {
        ell_.assign(log_ell.size(), 0.0);
        for (std::size_t j = 0; j < log_ell.size(); ++j) ell_[j] = std::exp(log_ell[j]);
        sf_ = std::exp(log_sf);
        try {
            factorize();
        } catch (const NumericFailure&) {
            return -1e300;
        }
        Eigen::Map<const Eigen::VectorXd> yv(yz_.data(), static_cast<Eigen::Index>(yz_.size()));
        double logdet = 0.0;
        const auto& L = llt_.matrixLLT();
        for (Eigen::Index i = 0; i < L.rows(); ++i) logdet += std::log(L(i, i));
        return -0.5 * yv.dot(alpha_) - logdet -
               0.5 * static_cast<double>(yz_.size()) * std::log(2.0 * kPi);
    }

    // Marginal-likelihood maximization: Nelder-Mead restarted from 5 seeded
    // draws over log length scales and log signal sd.
    void fit_hyperparams(std::uint64_t seed) {
        const std::size_t p = dim_ + 1;
        auto objective = [this](const rvec& th) {
            rvec le(th.begin(), th.begin() + static_cast<std::ptrdiff_t>(dim_));
            for (double& v : le) v = std::clamp(v, -4.0, 3.0);
            const double ls = std::clamp(th[dim_], -4.0, 4.0);
            return -log_marginal(le, ls);
        };

        SplitMix64 g(derive_seed(seed, 0x9a55ULL));
        rvec best_th;
        double best_f = 1e300;
        for (int restart = 0; restart < 5; ++restart) {
            rvec th(p);
            for (std::size_t j = 0; j < dim_; ++j) th[j] = -1.5 + 2.5 * uniform01(g);
            th[dim_] = -0.5 + 1.5 * uniform01(g);
            const auto [xr, fr] = nelder_mead(objective, th, 0.35, 160);
            if (fr < best_f) {
                best_f = fr;
                best_th = xr;
            }
        }
        rvec le(best_th.begin(), best_th.begin() + static_cast<std::ptrdiff_t>(dim_));
        for (double& v : le) v = std::clamp(v, -4.0, 3.0);
        ell_.assign(dim_, 0.0);
        for (std::size_t j = 0; j < dim_; ++j) ell_[j] = std::exp(le[j]);
        sf_ = std::exp(std::clamp(best_th[dim_], -4.0, 4.0));
    }

    static std::pair<rvec, double> nelder_mead(const std::function<double(const rvec&)>& f,
                                               const rvec& x0, double step, int iters) {
        const std::size_t p = x0.size();
        std::vector<rvec> simplex(p + 1, x0);
        rvec fv(p + 1);
        for (std::size_t j = 0; j < p; ++j) simplex[j + 1][j] += step;
        for (std::size_t i = 0; i <= p; ++i) fv[i] = f(simplex[i]);
        for (int it = 0; it < iters; ++it) {
            std::vector<std::size_t> order(p + 1);
            for (std::size_t i = 0; i <= p; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            std::vector<rvec> s2(p + 1);
            rvec f2(p + 1);
            for (std::size_t i = 0; i <= p; ++i) {
                s2[i] = simplex[order[i]];
                f2[i] = fv[order[i]];
            }
            simplex = s2;
            fv = f2;
            rvec centroid(p, 0.0);
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j) centroid[j] += simplex[i][j];
            for (double& v : centroid) v /= static_cast<double>(p);

            auto blend = [&](double t) {
                rvec x(p);
                for (std::size_t j = 0; j < p; ++j)
                    x[j] = centroid[j] + t * (simplex[p][j] - centroid[j]);
                return x;
            };
            const rvec xr = blend(-1.0);
            const double fr = f(xr);
            if (fr < fv[0]) {
                const rvec xe = blend(-2.0);
                const double fe = f(xe);
                if (fe < fr) {
                    simplex[p] = xe;
                    fv[p] = fe;
                } else {
                    simplex[p] = xr;
                    fv[p] = fr;
                }
            } else if (fr < fv[p - 1]) {
                simplex[p] = xr;
                fv[p] = fr;
            } else {
                const rvec xc = blend(0.5);
                const double fc = f(xc);
                if (fc < fv[p]) {
                    simplex[p] = xc;
                    fv[p] = fc;
                } else {
                    for (std::size_t i = 1; i <= p; ++i) {
                        for (std::size_t j = 0; j < p; ++j)
                            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                        fv[i] = f(simplex[i]);
                    }
                }
            }
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i <= p; ++i)
            if (fv[i] < fv[best]) best = i;
        return {simplex[best], fv[best]};
    }

    std::size_t dim_ = 0;
    std::vector<rvec> X_;
    rvec yz_;
    rvec noise_z_;
    double y_mean_ = 0.0;
    double y_sd_ = 1.0;
    rvec ell_;
    double sf_ = 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
};

// Expected improvement over the incumbent best mean, for maximization.
inline double expected_improvement(double mean, double var, double incumbent) {
    const double imp = mean - incumbent;
    if (!(var > 0.0)) return std::max(imp, 0.0);
    const double sd = std::sqrt(var);
    const double z = imp / sd;
    const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
    const double ei = imp * cdf + sd * pdf;
    return std::max(ei, 0.0);
}

}  // namespace covert
