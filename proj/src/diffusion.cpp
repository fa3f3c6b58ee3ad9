#include "hairweave/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

#include "hairweave/rng.hpp"

namespace hairweave {

namespace {

Tensor standard_normal(Rng& rng, Eigen::Index dim) {
    Tensor v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.normal();
    return v;
}

void require_finite(const Tensor& v, int t) {
    if (!v.allFinite()) throw NumericError("denoiser returned non-finite values at timestep " + std::to_string(t));
}

Tensor guided_noise(const Denoiser& denoiser, const Tensor& x, int t, std::span<const double> condition,
                    double guidance_scale) {
    const bool has_condition = !condition.empty();
    if (has_condition && guidance_scale != 1.0) {
        Tensor cond = denoiser.predict_noise({x, t, condition, true});
        require_finite(cond, t);
        Tensor uncond = denoiser.predict_noise({x, t, condition, false});
        require_finite(uncond, t);
        return cfg_combine(cond, uncond, guidance_scale);
    }
    Tensor eps = denoiser.predict_noise({x, t, condition, has_condition});
    require_finite(eps, t);
    return eps;
}

using StepHook = std::function<void(Tensor& x, int t_prev, int step)>;

Tensor reverse_process(const Denoiser& denoiser, const NoiseSchedule& schedule, const SamplerConfig& config,
                       std::span<const double> condition, Eigen::Index dim, const StepHook& after_step) {
    config.validate(schedule);
    Rng rng(config.seed);
    Tensor x = standard_normal(rng, dim);
    const auto ts = ddim_timesteps(schedule.timesteps(), config.steps);
    const Tensor zeros = Tensor::Zero(dim);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const int t = ts[i];
        const int t_prev = ts[i + 1];
        const Tensor eps = guided_noise(denoiser, x, t, condition, config.guidance_scale);
        if (eps.size() != dim) throw DataError("denoiser output has the wrong size");
        if (config.eta > 0.0 && t_prev > 0) {
            x = ddim_step(x, eps, t, t_prev, schedule, config.eta, standard_normal(rng, dim));
        } else {
            x = ddim_step(x, eps, t, t_prev, schedule, config.eta, zeros);
        }
        if (after_step) after_step(x, t_prev, static_cast<int>(i));
        if (!x.allFinite()) throw NumericError("sampler produced non-finite values at timestep " + std::to_string(t));
    }
    return x;
}

}  // namespace

NoiseSchedule::NoiseSchedule(int timesteps, double offset) : timesteps_(timesteps) {
    if (timesteps < 1) throw DataError("schedule needs at least one timestep");
    if (!(offset > 0.0)) throw DataError("cosine schedule offset must be positive");
    const auto f = [&](int t) {
        const double phase = ((static_cast<double>(t) / timesteps + offset) / (1.0 + offset)) * kPi / 2.0;
        return std::cos(phase) * std::cos(phase);
    };
    const double f0 = f(0);
    alpha_bar_.resize(static_cast<std::size_t>(timesteps) + 1);
    alpha_bar_[0] = 1.0;
    for (int t = 1; t <= timesteps; ++t) {
        const double closed = f(t) / f0;
        alpha_bar_[t] = std::max(closed, (1.0 - kMaxBeta) * alpha_bar_[t - 1]);
    }
}

void SamplerConfig::validate(const NoiseSchedule& schedule) const {
    if (steps < 1 || steps > schedule.timesteps()) {
        throw DataError("sampler steps must lie in [1, " + std::to_string(schedule.timesteps()) + "]");
    }
    if (!(guidance_scale >= 0.0)) throw DataError("guidance scale must be non-negative");
    if (!(eta >= 0.0 && eta <= 1.0)) throw DataError("eta must lie in [0, 1]");
}

NoisedSample forward_noise(const Tensor& x0, int t, const NoiseSchedule& schedule, std::uint64_t seed) {
    if (t < 0 || t > schedule.timesteps()) throw DataError("timestep out of range");
    Rng rng(seed);
    NoisedSample out;
    out.eps = standard_normal(rng, x0.size());
    const double a = schedule.alpha_bar(t);
    out.x_t = std::sqrt(a) * x0 + std::sqrt(1.0 - a) * out.eps;
    return out;
}

Tensor ddim_step(const Tensor& x_t, const Tensor& eps_hat, int t, int t_prev, const NoiseSchedule& schedule,
                 double eta, const Tensor& noise) {
    if (!(t_prev < t)) throw DataError("DDIM step needs t_prev < t");
    if (eps_hat.size() != x_t.size() || noise.size() != x_t.size()) throw DataError("DDIM step operands differ in size");
    const double a = schedule.alpha_bar(t);
    const double a_prev = schedule.alpha_bar(t_prev);
    const Tensor x0_hat = (x_t - std::sqrt(1.0 - a) * eps_hat) / std::sqrt(a);
    const double sigma = eta * std::sqrt((1.0 - a_prev) / (1.0 - a)) * std::sqrt(1.0 - a / a_prev);
    const double direction = std::sqrt(std::max(0.0, 1.0 - a_prev - sigma * sigma));
    Tensor out = std::sqrt(a_prev) * x0_hat + direction * eps_hat;
    if (sigma > 0.0) out += sigma * noise;
    return out;
}

Tensor cfg_combine(const Tensor& eps_cond, const Tensor& eps_uncond, double guidance_scale) {
    if (eps_cond.size() != eps_uncond.size()) throw DataError("guidance operands differ in size");
    if (guidance_scale == 1.0) return eps_cond;
    if (guidance_scale == 0.0) return eps_uncond;
    return eps_uncond + guidance_scale * (eps_cond - eps_uncond);
}

std::vector<int> ddim_timesteps(int timesteps, int steps) {
    if (steps < 1 || steps > timesteps) throw DataError("step count must lie in [1, T]");
    std::vector<int> ts;
    ts.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = steps; i >= 1; --i) {
        ts.push_back(static_cast<int>((static_cast<long long>(i) * timesteps + steps / 2) / steps));
    }
    ts.push_back(0);
    return ts;
}

Tensor sample(const Denoiser& denoiser, const NoiseSchedule& schedule, const SamplerConfig& config,
              std::span<const double> condition, Eigen::Index dim) {
    return reverse_process(denoiser, schedule, config, condition, dim, nullptr);
}

Tensor repaint_inpaint(const Denoiser& denoiser, const NoiseSchedule& schedule, const SamplerConfig& config,
                       const Tensor& known, std::span<const std::uint8_t> mask, std::span<const double> condition) {
    if (mask.size() != static_cast<std::size_t>(known.size())) throw DataError("inpainting mask does not match the latent shape");
    const auto replace = [&](Tensor& x, int t_prev, int step) {
        Tensor noised;
        if (schedule.alpha_bar(t_prev) == 1.0) {
            noised = known;
        } else {
            noised = forward_noise(known, t_prev, schedule, Rng::derive(config.seed, 1000003ULL + step)).x_t;
        }
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (mask[static_cast<std::size_t>(i)]) x[i] = noised[i];
        }
    };
    return reverse_process(denoiser, schedule, config, condition, known.size(), replace);
}

AnalyticGaussianDenoiser::AnalyticGaussianDenoiser(Tensor mu, double sigma2, NoiseSchedule schedule)
    : AnalyticGaussianDenoiser(mu, Tensor::Constant(mu.size(), sigma2), std::move(schedule)) {}

AnalyticGaussianDenoiser::AnalyticGaussianDenoiser(Tensor mu, Tensor sigma2, NoiseSchedule schedule)
    : mu_(std::move(mu)), sigma2_(std::move(sigma2)), schedule_(std::move(schedule)) {
    if (sigma2_.size() != mu_.size()) throw DataError("prior variance must match the mean size");
    if (!(sigma2_.array() > 0.0).all()) throw DataError("prior variance must be positive");
}

Tensor AnalyticGaussianDenoiser::posterior_mean(const Tensor& x_t, int t) const {
    if (t < 1 || t > schedule_.timesteps()) throw DataError("timestep out of range");
    if (x_t.size() != mu_.size()) throw DataError("denoiser input size does not match its prior");
    const double a = schedule_.alpha_bar(t);
    const double snr = a / (1.0 - a);
    const auto precision = snr + sigma2_.array().inverse();
    return ((std::sqrt(a) / (1.0 - a)) * x_t.array() + mu_.array() / sigma2_.array()) / precision;
}

Tensor AnalyticGaussianDenoiser::predict_noise(const DenoiserInput& input) const {
    const double a = schedule_.alpha_bar(input.t);
    return (input.x_t - std::sqrt(a) * posterior_mean(input.x_t, input.t)) / std::sqrt(1.0 - a);
}

Tensor make_condition(std::span<const Tensor> view_features, int feature_dim) {
    if (feature_dim < 1) throw DataError("feature dimension must be positive");
    if (view_features.size() > static_cast<std::size_t>(kMaxConditionViews)) {
        throw DataError("at most " + std::to_string(kMaxConditionViews) + " condition views are supported");
    }
    Tensor out = Tensor::Zero(kMaxConditionViews * (feature_dim + 1));
    for (std::size_t v = 0; v < view_features.size(); ++v) {
        if (view_features[v].size() != feature_dim) throw DataError("view feature has the wrong dimension");
        out.segment(static_cast<Eigen::Index>(v) * feature_dim, feature_dim) = view_features[v];
        out[kMaxConditionViews * feature_dim + static_cast<Eigen::Index>(v)] = 1.0;
    }
    return out;
}

std::vector<int> select_condition_views(std::uint64_t seed, int available) {
    if (available < 1) throw DataError("no views available");
    Rng rng(seed);
    const int count = std::min(available, 1 + static_cast<int>(rng.uniform() * kMaxConditionViews));
    std::vector<int> pool(static_cast<std::size_t>(available));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < count; ++i) {
        const int j = i + static_cast<int>(rng.uniform() * (available - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(count));
    return pool;
}

}  // namespace hairweave
