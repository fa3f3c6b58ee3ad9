#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hairweave/common.hpp"

namespace hairweave {

inline constexpr int kDefaultTimesteps = 1000;
inline constexpr double kCosineOffset = 0.008;
inline constexpr double kMaxBeta = 0.999;
inline constexpr int kMaxConditionViews = 8;

// Cosine alpha-bar schedule:
//   abar(t) = cos^2(((t/T + s)/(1 + s)) * pi/2) / cos^2((s/(1 + s)) * pi/2),
// with abar(0) = 1 and each per-step beta = 1 - abar(t)/abar(t-1) capped at 0.999.
// The cap only binds at t = T, where the closed form underflows towards 1e-33.
class NoiseSchedule {
public:
    explicit NoiseSchedule(int timesteps = kDefaultTimesteps, double offset = kCosineOffset);

    int timesteps() const { return timesteps_; }
    double alpha_bar(int t) const { return alpha_bar_.at(static_cast<std::size_t>(t)); }
    std::span<const double> alpha_bars() const { return alpha_bar_; }

private:
    int timesteps_;
    std::vector<double> alpha_bar_;
};

struct DenoiserInput {
    const Tensor& x_t;
    int t;
    std::span<const double> condition;  // empty when no conditioning vector exists
    bool condition_present;             // false for the unconditional branch
};

// Predicts the noise component of x_t.
class Denoiser {
public:
    virtual ~Denoiser() = default;
    virtual Tensor predict_noise(const DenoiserInput& input) const = 0;
};

struct SamplerConfig {
    int steps = 50;
    double guidance_scale = 3.0;
    double eta = 0.0;
    std::uint64_t seed = 0;

    void validate(const NoiseSchedule& schedule) const;
};

struct NoisedSample {
    Tensor x_t;
    Tensor eps;
};

// x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps with eps drawn from `seed`.
NoisedSample forward_noise(const Tensor& x0, int t, const NoiseSchedule& schedule, std::uint64_t seed);

Tensor ddim_step(const Tensor& x_t, const Tensor& eps_hat, int t, int t_prev, const NoiseSchedule& schedule,
                 double eta, const Tensor& noise);

// eps_uncond + scale * (eps_cond - eps_uncond)
Tensor cfg_combine(const Tensor& eps_cond, const Tensor& eps_uncond, double guidance_scale);

// Uniformly spaced decreasing timesteps T, ..., T/steps, followed by 0.
std::vector<int> ddim_timesteps(int timesteps, int steps);

// Reverse process from seeded x_T ~ N(0, I) of length `dim`.
Tensor sample(const Denoiser& denoiser, const NoiseSchedule& schedule, const SamplerConfig& config,
              std::span<const double> condition, Eigen::Index dim);

// Reverse process in which entries with mask = 1 are overwritten by forward-noised
// `known` after every step. At t = 0 those entries equal `known` exactly.
Tensor repaint_inpaint(const Denoiser& denoiser, const NoiseSchedule& schedule, const SamplerConfig& config,
                       const Tensor& known, std::span<const std::uint8_t> mask, std::span<const double> condition);

// Exact noise predictor for data x0 ~ N(mu, diag(sigma2)); ignores conditioning.
class AnalyticGaussianDenoiser : public Denoiser {
public:
    AnalyticGaussianDenoiser(Tensor mu, double sigma2, NoiseSchedule schedule);
    AnalyticGaussianDenoiser(Tensor mu, Tensor sigma2, NoiseSchedule schedule);

    // E[x0 | x_t] under the Gaussian prior.
    Tensor posterior_mean(const Tensor& x_t, int t) const;
    Tensor predict_noise(const DenoiserInput& input) const override;

    const Tensor& mu() const { return mu_; }
    const Tensor& sigma2() const { return sigma2_; }

private:
    Tensor mu_;
    Tensor sigma2_;
    NoiseSchedule schedule_;
};

// Packs up to 8 per-view feature vectors into fixed slots followed by one presence flag per slot.
Tensor make_condition(std::span<const Tensor> view_features, int feature_dim);

// Draws between 1 and 8 distinct view indices from [0, available).
std::vector<int> select_condition_views(std::uint64_t seed, int available = 72);

}  // namespace hairweave
