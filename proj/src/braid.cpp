#include "hairweave/braid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hairweave/rng.hpp"

namespace hairweave {

std::vector<double> BraidParams::phases() const {
    if (!phase_offsets.empty()) return phase_offsets;
    std::vector<double> out(static_cast<std::size_t>(num_groups));
    for (int k = 0; k < num_groups; ++k) out[k] = 2.0 * kPi * k / num_groups;
    return out;
}

void BraidParams::validate() const {
    if (num_groups < 2) throw DataError("braid needs at least 2 groups");
    if (!(width >= 0.0) || !(thickness >= 0.0) || !(group_radius >= 0.0)) {
        throw DataError("braid width, thickness and group_radius must be non-negative");
    }
    if (!(oscillation_period > 0.0)) throw DataError("braid oscillation_period must be positive");
    if (strands_per_group < 1) throw DataError("braid strands_per_group must be at least 1");
    if (!phase_offsets.empty() && static_cast<int>(phase_offsets.size()) != num_groups) {
        throw DataError("braid phase_offsets must list one angle per group");
    }
    if (!(smooth_lambda > 0.0 && smooth_lambda <= 1.0)) throw DataError("braid smooth_lambda must lie in (0, 1]");
    if (smooth_iterations < 0) throw DataError("braid smooth_iterations must be non-negative");
}

std::size_t BraidUvMask::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

std::vector<std::size_t> select_strands_by_mask(std::span<const Strand> strands, const BinaryImage& mask,
                                                const CameraView& view, double threshold, SelectionScore score) {
    if (mask.width() != view.width || mask.height() != view.height) {
        throw DataError("mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                        " but the camera renders " + std::to_string(view.width) + "x" + std::to_string(view.height));
    }
    std::vector<std::size_t> selected;
    const std::size_t mask_count = mask.count();
    if (mask_count == 0) return selected;
    for (std::size_t i = 0; i < strands.size(); ++i) {
        const auto footprint = strand_footprint(strands[i], view);
        if (footprint.empty()) continue;
        std::size_t hit = 0;
        for (const Pixel& p : footprint) hit += mask.get(p.x, p.y) ? 1 : 0;
        const double denom = score == SelectionScore::Coverage
                                 ? static_cast<double>(footprint.size())
                                 : static_cast<double>(footprint.size() + mask_count - hit);
        if (static_cast<double>(hit) / denom >= threshold) selected.push_back(i);
    }
    return selected;
}

BraidUvMask braid_root_mask(const Hairstyle& hairstyle, std::span<const std::size_t> selected, int width, int height,
                            int dilation) {
    if (width <= 0 || height <= 0) throw DataError("mask dimensions must be positive");
    if (dilation < 0) throw DataError("mask dilation must be non-negative");
    BraidUvMask out{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
    for (std::size_t index : selected) {
        if (index >= hairstyle.size()) throw DataError("strand index " + std::to_string(index) + " out of range");
        const auto [cx, cy] = texel_of(hairstyle.root_uv(index), width, height);
        for (int y = std::max(0, cy - dilation); y <= std::min(height - 1, cy + dilation); ++y) {
            for (int x = std::max(0, cx - dilation); x <= std::min(width - 1, cx + dilation); ++x) {
                out.mask[static_cast<std::size_t>(y) * width + x] = 1;
            }
        }
    }
    return out;
}

GuideCurve make_guide(Strand curve) {
    auto frames = frenet_frames(curve);
    return {std::move(curve), std::move(frames)};
}

GuideCurve average_guide(const Hairstyle& hairstyle, std::span<const std::size_t> selected) {
    if (selected.empty()) throw DataError("guide averaging needs a non-empty strand selection");
    const std::size_t length = hairstyle.strand_length();
    std::vector<Vec3> sum(length, Vec3::Zero());
    for (std::size_t index : selected) {
        if (index >= hairstyle.size()) throw DataError("strand index " + std::to_string(index) + " out of range");
        const Strand& s = hairstyle.strand(index);
        const Strand common = s.size() == length ? s : resample(s, length);
        for (std::size_t j = 0; j < length; ++j) sum[j] += common[j];
    }
    for (Vec3& p : sum) p /= static_cast<double>(selected.size());
    return make_guide(Strand(std::move(sum)));
}

BraidFragment synth_braid(const GuideCurve& guide, const BraidParams& params, std::uint64_t seed) {
    params.validate();
    const Strand& curve = guide.curve;
    const std::size_t n = curve.size();
    if (guide.frames.size() != n) throw DataError("guide frames do not match the guide curve");

    std::vector<double> arc(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) arc[j] = arc[j - 1] + (curve[j] - curve[j - 1]).norm();
    const double spacing = arc.back() / static_cast<double>(n - 1);
    if (params.oscillation_period < 2.0 * spacing) {
        throw DataError("undersampled braid: oscillation_period " + std::to_string(params.oscillation_period) +
                        " m is below twice the guide spacing " + std::to_string(spacing) + " m");
    }

    const auto phases = params.phases();
    BraidFragment out;
    for (int k = 0; k < params.num_groups; ++k) {
        std::vector<Vec3> center(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double phi = 2.0 * kPi * arc[j] / params.oscillation_period + phases[k];
            const FrenetFrame& f = guide.frames[j];
            center[j] = curve[j] + params.width * std::cos(phi) * f.normal +
                        params.thickness * std::sin(2.0 * phi) * f.binormal;
        }

        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(k)));
        for (int m = 0; m < params.strands_per_group; ++m) {
            const double r = params.group_radius * std::sqrt(rng.uniform());
            const double theta = 2.0 * kPi * rng.uniform();
            const double a = r * std::cos(theta);
            const double b = r * std::sin(theta);
            std::vector<Vec3> member(n);
            for (std::size_t j = 0; j < n; ++j) {
                member[j] = center[j] + a * guide.frames[j].normal + b * guide.frames[j].binormal;
            }
            Strand strand(std::move(member));
            if (params.smooth_iterations > 0 && n >= 3) {
                strand = laplacian_smooth(strand, params.smooth_lambda, params.smooth_iterations);
            }
            out.members.push_back(std::move(strand));
            out.member_group.push_back(k);
        }
        out.centers.emplace_back(std::move(center));
    }
    return out;
}

Hairstyle attach_to_scalp(const BraidFragment& fragment, std::shared_ptr<const ScalpSurface> scalp,
                          double root_tolerance) {
    if (!scalp) throw DataError("attaching a braid needs a scalp surface");
    std::vector<Strand> strands;
    strands.reserve(fragment.members.size());
    for (const Strand& s : fragment.members) {
        const SurfacePoint anchor = scalp->closest_point(s.root());
        strands.push_back(s.translated(anchor.position - s.root()));
    }
    return Hairstyle(std::move(strands), std::move(scalp), root_tolerance);
}

std::pair<LatentMap, BraidUvMask> braid_to_latent(const Hairstyle& fragment, const PcaBasis& basis, int width,
                                                  int height, int dilation) {
    std::vector<std::size_t> all(fragment.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return {build_latent_map(fragment, basis, width, height, fragment.root_tolerance()),
            braid_root_mask(fragment, all, width, height, dilation)};
}

}  // namespace hairweave
