#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hairweave/braid.hpp"
#include "hairweave/codec.hpp"
#include "hairweave/diffusion.hpp"
#include "hairweave/io.hpp"
#include "hairweave/metrics.hpp"
#include "hairweave/view_rig.hpp"

namespace hairweave {

struct RigSettings {
    int width = 512;
    int height = 512;
    double distance = kDefaultCameraDistance;
    double yaw = 0.0;  // camera used to score strands against a 2D mask
    double pitch = 0.0;
    double focal = 50.0;
    int line_width = 1;
    int stride = 1;

    CameraView view() const { return {yaw, pitch, focal, distance, width, height}; }
};

struct SelectionSettings {
    double threshold = 0.5;
    SelectionScore score = SelectionScore::Coverage;
    int dilation = 1;  // texels, applied to the braid root mask
};

struct CodecSettings {
    int latent_dim = kDefaultLatentDim;
    int native_size = kNativeMapSize;
    int working_size = kWorkingMapSize;
};

struct MetricSettings {
    double voxel_size = kDefaultVoxelSize;
};

// Settings keyed as `section.field`, e.g. `braid.width` or `sampler.steps`.
struct PipelineConfig {
    RigSettings rig;
    SelectionSettings selection;
    BraidParams braid;
    std::uint64_t braid_seed = 0;
    SamplerConfig sampler;
    CodecSettings codec;
    MetricSettings metric;

    void apply(const std::string& key, const std::string& value);
    void validate() const;

    static std::vector<std::string> keys();
    static PipelineConfig load(const std::filesystem::path& path);
};

// Decodes the latent sampled at each UV.
std::vector<Strand> decode_at_roots(const LatentMap& map, const PcaBasis& basis, std::span<const Vec2> uvs);

// native map -> working resolution -> native resolution -> strands at the hairstyle's roots.
std::vector<Strand> latent_round_trip(const Hairstyle& hairstyle, const PcaBasis& basis, const CodecSettings& codec);

struct BraidResult {
    std::vector<Strand> strands;     // kept strands first, then braid members
    std::vector<std::size_t> kept;   // input indices of the kept strands
    std::size_t braid_count = 0;
    BraidUvMask mask;                // working-resolution inpainting region
    Hairstyle braid;                 // attached braid fragment before encoding
};

// Synthesizes a braid along the selected strands and inpaints it into the
// hairstyle's working latent map. With no denoiser supplied, a Gaussian prior
// centered on the working map with per-channel residual variance is used.
BraidResult run_braid_pipeline(const Hairstyle& hairstyle, const PcaBasis& basis,
                               std::span<const std::size_t> selected, const PipelineConfig& config,
                               const Denoiser* denoiser = nullptr);

}  // namespace hairweave
