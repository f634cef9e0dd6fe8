#include "gpr.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "error.hpp"

namespace acmpc::gpr {

namespace {

std::vector<double> encode_raw(const Features& raw, bool periodic_hour) {
    if (periodic_hour) {
        const double angle = raw[2] * 2.0 * std::numbers::pi / 24.0;
        return {raw[0], raw[1], std::sin(angle), std::cos(angle), raw[3], raw[4]};
    }
    return {raw[0], raw[1], raw[2], raw[3], raw[4]};
}

struct CholFit {
    linalg::Matrix l;
    std::vector<double> alpha;
    double lml = 0;
    double jitter = 0;
};

// Factorize K + (noise + jitter) I, escalating jitter if needed.
CholFit factorize(const std::vector<std::vector<double>>& x, const std::vector<double>& y0,
                  const KernelConfig& k,
                  const std::function<double(const std::vector<double>&,
                                             const std::vector<double>&)>& kf) {
    const std::size_t n = x.size();
    linalg::Matrix base(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = kf(x[i], x[j]);
            base.at(i, j) = v;
            base.at(j, i) = v;
        }

    double jitter = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        linalg::Matrix m = base;
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) += k.noise_var + jitter;
        if (linalg::cholesky(m)) {
            CholFit out;
            out.l = std::move(m);
            out.alpha = linalg::cholesky_solve(out.l, y0);
            double logdet = 0.0;
            for (std::size_t i = 0; i < n; ++i) logdet += std::log(out.l.at(i, i));
            double quad = 0.0;
            for (std::size_t i = 0; i < n; ++i) quad += y0[i] * out.alpha[i];
            out.lml = -0.5 * quad - logdet -
                      0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
            out.jitter = jitter;
            return out;
        }
        jitter = jitter == 0.0 ? 1e-10 * std::max(1.0, k.signal_var) : jitter * 10.0;
        if (jitter > 1e-3 * std::max(1.0, k.signal_var)) break;
    }
    throw_numeric("gpr: kernel matrix is not positive definite even after jitter escalation");
}

}  // namespace

std::vector<double> GprModel::encode(const Features& raw) const {
    auto e = encode_raw(raw, periodic_hour_);
    for (std::size_t d = 0; d < e.size(); ++d) e[d] = (e[d] - feat_mean_[d]) / feat_std_[d];
    return e;
}

double GprModel::kernel_value(const std::vector<double>& a, const std::vector<double>& b) const {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double dd = (a[d] - b[d]) / kernel_.length_scales[d];
        s += dd * dd;
    }
    return kernel_.signal_var * std::exp(-0.5 * s);
}

GprModel GprModel::fit(const std::vector<Features>& inputs, const std::vector<double>& targets,
                       const FitConfig& config) {
    if (inputs.size() != targets.size())
        throw_invalid("gpr: feature and target counts differ");
    if (inputs.size() < 2) throw_data("gpr: need at least 2 training rows");
    for (const auto& f : inputs)
        for (double v : f)
            if (!std::isfinite(v)) throw_data("gpr: non-finite feature value");

    GprModel m;
    m.periodic_hour_ = config.periodic_hour;
    const std::size_t dim = config.periodic_hour ? kRawFeatures + 1 : kRawFeatures;

    // Encode and standardize features.
    std::vector<std::vector<double>> enc(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) enc[i] = encode_raw(inputs[i], m.periodic_hour_);
    m.feat_mean_.assign(dim, 0.0);
    m.feat_std_.assign(dim, 1.0);
    if (config.standardize) {
        for (std::size_t d = 0; d < dim; ++d) {
            double mean = 0;
            for (const auto& e : enc) mean += e[d];
            mean /= static_cast<double>(enc.size());
            double var = 0;
            for (const auto& e : enc) var += (e[d] - mean) * (e[d] - mean);
            var /= static_cast<double>(enc.size());
            m.feat_mean_[d] = mean;
            m.feat_std_[d] = var > 1e-12 ? std::sqrt(var) : 1.0;
        }
    }
    for (auto& e : enc)
        for (std::size_t d = 0; d < dim; ++d) e[d] = (e[d] - m.feat_mean_[d]) / m.feat_std_[d];
    m.encoded_ = std::move(enc);

    // Center targets so predictions far from data revert to the mean.
    m.target_mean_ = 0;
    for (double y : targets) m.target_mean_ += y;
    m.target_mean_ /= static_cast<double>(targets.size());
    std::vector<double> y0(targets.size());
    double yvar = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        y0[i] = targets[i] - m.target_mean_;
        yvar += y0[i] * y0[i];
    }
    yvar /= static_cast<double>(targets.size());
    if (yvar <= 0) yvar = 1e-12;

    KernelConfig base = config.kernel;
    if (base.length_scales.empty()) base.length_scales.assign(dim, 1.0);
    if (base.length_scales.size() != dim)
        throw_invalid("gpr: kernel length_scales size does not match encoded dimension " +
                      std::to_string(dim));
    if (config.grid_search) base.signal_var = yvar;

    auto kf = [&m](const std::vector<double>& a, const std::vector<double>& b) {
        return m.kernel_value(a, b);
    };

    if (!config.grid_search) {
        m.kernel_ = base;
        auto f = factorize(m.encoded_, y0, m.kernel_, kf);
        m.chol_ = std::move(f.l);
        m.alpha_ = std::move(f.alpha);
        m.lml_ = f.lml;
        m.jitter_ = f.jitter;
        return m;
    }

    // Coarse deterministic grid: three global length-scale multipliers times
    // three noise levels, scored by log marginal likelihood.
    const double ls_mult[3] = {0.5, 1.0, 2.0};
    const double noise_frac[3] = {0.01, 0.05, 0.25};
    double best_lml = -std::numeric_limits<double>::infinity();
    KernelConfig best = base;
    CholFit best_fit;
    for (double lm : ls_mult) {
        for (double nf : noise_frac) {
            KernelConfig k = base;
            for (auto& l : k.length_scales) l *= lm;
            k.noise_var = nf * yvar;
            m.kernel_ = k;
            CholFit f;
            try {
                f = factorize(m.encoded_, y0, k, kf);
            } catch (const Error&) {
                continue;
            }
            if (f.lml > best_lml) {
                best_lml = f.lml;
                best = k;
                best_fit = std::move(f);
            }
        }
    }
    if (!std::isfinite(best_lml))
        throw_numeric("gpr: no kernel candidate produced a positive definite matrix");
    m.kernel_ = best;
    m.chol_ = std::move(best_fit.l);
    m.alpha_ = std::move(best_fit.alpha);
    m.lml_ = best_lml;
    m.jitter_ = best_fit.jitter;
    return m;
}

Prediction GprModel::predict(const Features& raw) const {
    if (encoded_.empty()) throw_invalid("gpr: model not fitted");
    const auto x = encode(raw);
    const std::size_t n = encoded_.size();
    std::vector<double> ks(n);
    for (std::size_t i = 0; i < n; ++i) ks[i] = kernel_value(x, encoded_[i]);

    Prediction p;
    p.mean = target_mean_;
    for (std::size_t i = 0; i < n; ++i) p.mean += ks[i] * alpha_[i];

    const auto v = linalg::cholesky_solve(chol_, ks);
    double reduction = 0.0;
    for (std::size_t i = 0; i < n; ++i) reduction += ks[i] * v[i];
    p.variance = std::max(0.0, kernel_.signal_var - reduction);
    return p;
}

}  // namespace acmpc::gpr
