#pragma once

#include <array>
#include <vector>

#include "linalg.hpp"

namespace acmpc::gpr {

// Raw wet-bulb features, in this order:
//   rh_out (fraction), t_out (degC), hour of day (0..24), i_solar (kW/m2),
//   wind (m/s)
using Features = std::array<double, 5>;
constexpr std::size_t kRawFeatures = 5;

struct KernelConfig {
    double signal_var = 1.0;            // sigma_f^2
    std::vector<double> length_scales;  // per encoded dimension (standardized units)
    double noise_var = 1e-2;            // sigma_n^2
};

struct FitConfig {
    bool periodic_hour = true;  // encode hour as (sin, cos) over 24 h
    bool standardize = true;
    bool grid_search = true;    // coarse log-grid over scale multiplier and noise
    KernelConfig kernel;        // starting point (length_scales empty = all 1)
};

struct Prediction {
    double mean = 0;      // degC
    double variance = 0;  // degC^2, latent-function variance
};

class GprModel {
public:
    // Squared-exponential GP with white noise on standardized encoded
    // features. Throws a numeric error if the kernel stays non-positive-
    // definite after jitter escalation.
    static GprModel fit(const std::vector<Features>& inputs, const std::vector<double>& targets,
                        const FitConfig& config = {});

    Prediction predict(const Features& raw) const;

    double log_marginal_likelihood() const { return lml_; }
    const KernelConfig& kernel() const { return kernel_; }
    double jitter() const { return jitter_; }
    std::size_t training_size() const { return encoded_.size(); }

private:
    std::vector<std::vector<double>> encoded_;  // standardized encoded inputs
    std::vector<double> alpha_;                 // (K + sn^2 I)^-1 (y - mean)
    linalg::Matrix chol_;                       // Cholesky factor of K + sn^2 I
    KernelConfig kernel_;
    std::vector<double> feat_mean_, feat_std_;
    double target_mean_ = 0;
    double lml_ = 0;
    double jitter_ = 0;
    bool periodic_hour_ = true;

    std::vector<double> encode(const Features& raw) const;
    double kernel_value(const std::vector<double>& a, const std::vector<double>& b) const;
};

}  // namespace acmpc::gpr
