#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "hairweave/codec.hpp"
#include "hairweave/image.hpp"
#include "hairweave/strand.hpp"
#include "hairweave/view_rig.hpp"

namespace hairweave {

struct BraidParams {
    int num_groups = 3;
    double width = 0.012;               // lateral (normal) amplitude, m
    double thickness = 0.006;           // binormal amplitude, m
    double oscillation_period = 0.08;   // guide arc length per phase cycle, m
    int strands_per_group = 16;
    double group_radius = 0.004;        // member scatter radius, m
    std::vector<double> phase_offsets;  // radians; empty means 2*pi*k/num_groups
    double smooth_lambda = 0.5;
    int smooth_iterations = 2;

    std::vector<double> phases() const;
    void validate() const;
};

struct GuideCurve {
    Strand curve;
    std::vector<FrenetFrame> frames;
};

struct BraidUvMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;  // row-major

    bool at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x] != 0; }
    std::size_t count() const;
};

struct BraidFragment {
    std::vector<Strand> centers;  // one unsmoothed center curve per group
    std::vector<Strand> members;  // smoothed member strands
    std::vector<int> member_group;
};

enum class SelectionScore {
    Coverage,  // |footprint & mask| / |footprint|
    Iou,       // |footprint & mask| / |footprint | mask|
};

// Strands whose rasterized 1-pixel footprint scores at least `threshold` against the mask.
// Strands with an empty footprint and empty masks never select anything.
std::vector<std::size_t> select_strands_by_mask(std::span<const Strand> strands, const BinaryImage& mask,
                                                const CameraView& view, double threshold,
                                                SelectionScore score = SelectionScore::Coverage);

// Root texels of the selected strands, dilated by a (2d+1)^2 square.
BraidUvMask braid_root_mask(const Hairstyle& hairstyle, std::span<const std::size_t> selected, int width, int height,
                            int dilation = 1);

// Pointwise mean of the selected strands with its Frenet frames.
GuideCurve average_guide(const Hairstyle& hairstyle, std::span<const std::size_t> selected);

GuideCurve make_guide(Strand curve);

// Group centers c_k(s) = g(s) + width cos(phi_k) N(s) + thickness sin(2 phi_k) B(s),
// phi_k = 2 pi s / period + offset_k, each fleshed out with seeded members
// scattered uniformly over a disk in the (N, B) cross-section.
BraidFragment synth_braid(const GuideCurve& guide, const BraidParams& params, std::uint64_t seed);

// Translates every member so its root lands on the nearest scalp point.
Hairstyle attach_to_scalp(const BraidFragment& fragment, std::shared_ptr<const ScalpSurface> scalp,
                          double root_tolerance = kDefaultRootTolerance);

std::pair<LatentMap, BraidUvMask> braid_to_latent(const Hairstyle& fragment, const PcaBasis& basis, int width,
                                                  int height, int dilation = 1);

}  // namespace hairweave
