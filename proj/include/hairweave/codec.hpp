#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hairweave/common.hpp"
#include "hairweave/strand.hpp"

namespace hairweave {

inline constexpr int kDefaultLatentDim = 64;
inline constexpr int kNativeMapSize = 256;
inline constexpr int kWorkingMapSize = 32;
inline constexpr int kSparseSearchRadius = 4;

// Linear strand codec: mean strand plus K orthonormal principal directions.
class PcaBasis {
public:
    PcaBasis(Tensor mean, Eigen::MatrixXd components, Tensor eigenvalues);

    const Tensor& mean() const { return mean_; }
    // 3L x K, one component per column.
    const Eigen::MatrixXd& components() const { return components_; }
    const Tensor& eigenvalues() const { return eigenvalues_; }

    std::size_t strand_length() const { return static_cast<std::size_t>(mean_.size() / 3); }
    int latent_dim() const { return static_cast<int>(components_.cols()); }

private:
    Tensor mean_;
    Eigen::MatrixXd components_;
    Tensor eigenvalues_;
};

Tensor flatten(const Strand& strand);
Strand unflatten(const Tensor& flat);

// Principal components of the strand set. N = 1 requires K = 0; otherwise
// 1 <= K <= min(3L, N-1). Component signs make the first nonzero entry positive.
PcaBasis fit_basis(std::span<const Strand> strands, int components);

Tensor encode_strand(const PcaBasis& basis, const Strand& strand);
Strand decode_strand(const PcaBasis& basis, const Tensor& latent);

// Root-mean-square point error of decode(encode(s)) over the set, in meters.
double reconstruction_rmse(const PcaBasis& basis, std::span<const Strand> strands);

// Texel grid of per-strand latents over scalp UV space. Texel (x, y) covers
// u in [x/W, (x+1)/W), v in [y/H, (y+1)/H).
class LatentMap {
public:
    LatentMap(int width, int height, int channels);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t texel_count() const { return static_cast<std::size_t>(width_) * height_; }

    bool occupied(int x, int y) const { return occupancy_[index(x, y)] != 0; }
    std::size_t occupied_count() const;

    std::span<const double> texel(int x, int y) const;
    Tensor texel_vector(int x, int y) const;

    // Writes a latent and marks the texel occupied.
    void set(int x, int y, std::span<const double> latent);
    void clear(int x, int y);

    // Row-major texel data (y outer, x inner, channels innermost).
    std::span<const double> data() const { return data_; }
    std::span<const std::uint8_t> occupancy() const { return occupancy_; }

    Tensor to_tensor() const;
    // Replaces all values; unoccupied texels are forced to zero.
    void assign(const Tensor& values);

private:
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

    int width_;
    int height_;
    int channels_;
    std::vector<double> data_;
    std::vector<std::uint8_t> occupancy_;
};

std::array<int, 2> texel_of(const Vec2& uv, int width, int height);

// Writes each strand latent at its root texel; collisions are averaged.
LatentMap build_latent_map(const Hairstyle& hairstyle, const PcaBasis& basis, int width, int height,
                           double root_tolerance = kDefaultRootTolerance);

// Bilinear lookup over texel centers renormalized over occupied neighbours, falling
// back to the nearest occupied texel within `search_radius` texels.
Tensor sample_latent_map(const LatentMap& map, const Vec2& uv, int search_radius = kSparseSearchRadius);

// Occupancy-weighted area filter when shrinking, bilinear when growing.
LatentMap resize_latent_map(const LatentMap& map, int width, int height);

struct FidelityWeights {
    double position = 1.0;
    double direction = 1.0;
    double curvature = 1.0;
};

struct FidelityReport {
    double pos_l2 = 0.0;        // meters
    double dir_cos_loss = 0.0;  // in [0, 2]
    double curv_l2 = 0.0;       // meters^2

    double total() const { return pos_l2 + dir_cos_loss + curv_l2; }
};

// Point, direction and curvature-proxy discrepancies between index-aligned strand sets.
FidelityReport fidelity_metrics(std::span<const Strand> predicted, std::span<const Strand> truth,
                                const FidelityWeights& weights = {});

}  // namespace hairweave
