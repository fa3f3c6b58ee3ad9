#include "hairweave/pipeline.hpp"

#include <algorithm>

namespace hairweave {

namespace {

int to_int(const std::string& value, const std::string& key) {
    const long long v = parse_integer(value, key);
    if (v < -(1LL << 30) || v > (1LL << 30)) throw DataError("value out of range for " + key);
    return static_cast<int>(v);
}

const std::vector<std::string>& braid_keys() {
    static const std::vector<std::string> keys{"num_groups",        "width",         "thickness",
                                               "oscillation_period", "strands_per_group", "group_radius",
                                               "phase_offsets",     "smooth_lambda", "smooth_iterations"};
    return keys;
}

Vec2 texel_center(int x, int y, int width, int height) {
    return {(x + 0.5) / width, (y + 0.5) / height};
}

}  // namespace

void PipelineConfig::apply(const std::string& key, const std::string& value) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw DataError("unknown config key '" + key + "' (expected section.field)");
    const std::string section = key.substr(0, dot);
    const std::string field = key.substr(dot + 1);
    if (section == "rig") {
        if (field == "width") rig.width = to_int(value, key);
        else if (field == "height") rig.height = to_int(value, key);
        else if (field == "distance") rig.distance = parse_double(value, key);
        else if (field == "yaw") rig.yaw = parse_double(value, key);
        else if (field == "pitch") rig.pitch = parse_double(value, key);
        else if (field == "focal") rig.focal = parse_double(value, key);
        else if (field == "line_width") rig.line_width = to_int(value, key);
        else if (field == "stride") rig.stride = to_int(value, key);
        else throw DataError("unknown config key '" + key + "'");
    } else if (section == "selection") {
        if (field == "threshold") {
            selection.threshold = parse_double(value, key);
        } else if (field == "score") {
            if (value == "coverage") selection.score = SelectionScore::Coverage;
            else if (value == "iou") selection.score = SelectionScore::Iou;
            else throw DataError("selection.score must be coverage or iou");
        } else if (field == "dilation") {
            selection.dilation = to_int(value, key);
        } else {
            throw DataError("unknown config key '" + key + "'");
        }
    } else if (section == "braid") {
        if (field == "seed") braid_seed = parse_u64(value, key);
        else apply_braid_param(braid, field, value);
    } else if (section == "sampler") {
        apply_sampler_param(sampler, field, value);
    } else if (section == "codec") {
        if (field == "latent_dim") codec.latent_dim = to_int(value, key);
        else if (field == "native_size") codec.native_size = to_int(value, key);
        else if (field == "working_size") codec.working_size = to_int(value, key);
        else throw DataError("unknown config key '" + key + "'");
    } else if (section == "metric") {
        if (field == "voxel_size") metric.voxel_size = parse_double(value, key);
        else throw DataError("unknown config key '" + key + "'");
    } else {
        throw DataError("unknown config section '" + section + "'");
    }
}

void PipelineConfig::validate() const {
    if (rig.width < 1 || rig.height < 1) throw DataError("rig image size must be positive");
    if (!(rig.distance > 0.0)) throw DataError("rig.distance must be positive");
    if (!(rig.focal > 0.0)) throw DataError("rig.focal must be positive");
    if (rig.line_width < 1) throw DataError("rig.line_width must be at least 1");
    if (rig.stride < 1) throw DataError("rig.stride must be at least 1");
    if (!(selection.threshold >= 0.0 && selection.threshold <= 1.0)) {
        throw DataError("selection.threshold must lie in [0, 1]");
    }
    if (selection.dilation < 0) throw DataError("selection.dilation must be non-negative");
    braid.validate();
    sampler.validate(NoiseSchedule());
    if (codec.latent_dim < 1) throw DataError("codec.latent_dim must be positive");
    if (codec.native_size < 1 || codec.working_size < 1) throw DataError("codec map sizes must be positive");
    if (codec.working_size > codec.native_size) throw DataError("codec.working_size must not exceed native_size");
    if (!(metric.voxel_size > 0.0)) throw DataError("metric.voxel_size must be positive");
}

std::vector<std::string> PipelineConfig::keys() {
    std::vector<std::string> out{"rig.width",        "rig.height",         "rig.distance",        "rig.yaw",
                                 "rig.pitch",        "rig.focal",          "rig.line_width",      "rig.stride",
                                 "selection.threshold", "selection.score", "selection.dilation", "braid.seed"};
    for (const std::string& k : braid_keys()) out.push_back("braid." + k);
    for (const char* k : {"sampler.steps", "sampler.guidance_scale", "sampler.eta", "sampler.seed",
                          "codec.latent_dim", "codec.native_size", "codec.working_size", "metric.voxel_size"}) {
        out.emplace_back(k);
    }
    return out;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    PipelineConfig config;
    for (const KeyValue& kv : read_key_value_file(path)) {
        try {
            config.apply(kv.key, kv.value);
        } catch (const DataError& e) {
            throw DataError(path.string() + ":" + std::to_string(kv.line) + ": " + e.what());
        }
    }
    try {
        config.validate();
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return config;
}

std::vector<Strand> decode_at_roots(const LatentMap& map, const PcaBasis& basis, std::span<const Vec2> uvs) {
    std::vector<Strand> out;
    out.reserve(uvs.size());
    for (const Vec2& uv : uvs) out.push_back(decode_strand(basis, sample_latent_map(map, uv)));
    return out;
}

std::vector<Strand> latent_round_trip(const Hairstyle& hairstyle, const PcaBasis& basis, const CodecSettings& codec) {
    const LatentMap native = build_latent_map(hairstyle, basis, codec.native_size, codec.native_size,
                                              hairstyle.root_tolerance());
    const LatentMap working = resize_latent_map(native, codec.working_size, codec.working_size);
    const LatentMap restored = resize_latent_map(working, codec.native_size, codec.native_size);
    std::vector<Vec2> uvs(hairstyle.size());
    for (std::size_t i = 0; i < uvs.size(); ++i) uvs[i] = hairstyle.root_uv(i);
    return decode_at_roots(restored, basis, uvs);
}

BraidResult run_braid_pipeline(const Hairstyle& hairstyle, const PcaBasis& basis,
                               std::span<const std::size_t> selected, const PipelineConfig& config,
                               const Denoiser* denoiser) {
    config.validate();
    if (selected.empty()) throw DataError("empty strand selection: no strands to braid");
    if (basis.strand_length() != hairstyle.strand_length()) {
        throw DataError("basis expects " + std::to_string(basis.strand_length()) + "-point strands, hairstyle has " +
                        std::to_string(hairstyle.strand_length()));
    }
    const int native_size = config.codec.native_size;
    const int size = config.codec.working_size;
    const int channels = basis.latent_dim();

    const LatentMap native = build_latent_map(hairstyle, basis, native_size, native_size, hairstyle.root_tolerance());
    const LatentMap working = resize_latent_map(native, size, size);

    const GuideCurve guide = average_guide(hairstyle, selected);
    const BraidFragment fragment = synth_braid(guide, config.braid, config.braid_seed);
    Hairstyle braid = attach_to_scalp(fragment, hairstyle.scalp_ptr(), hairstyle.root_tolerance());

    const LatentMap braid_native =
        braid_to_latent(braid, basis, native_size, native_size, config.selection.dilation).first;
    const LatentMap braid_working = resize_latent_map(braid_native, size, size);

    std::vector<std::size_t> braid_all(braid.size());
    for (std::size_t i = 0; i < braid_all.size(); ++i) braid_all[i] = i;
    BraidUvMask mask = braid_root_mask(braid, braid_all, size, size, config.selection.dilation);
    const BraidUvMask source_mask = braid_root_mask(hairstyle, selected, size, size, config.selection.dilation);
    for (std::size_t i = 0; i < mask.mask.size(); ++i) mask.mask[i] |= source_mask.mask[i];

    // Known content inside the mask comes from the braid map; texels beyond its reach stay empty.
    const auto texels = static_cast<std::size_t>(size) * size;
    const auto k = static_cast<std::size_t>(channels);
    Tensor known = Tensor::Zero(static_cast<Eigen::Index>(texels * k));
    std::vector<std::uint8_t> element_mask(texels * k, 0);
    std::vector<std::uint8_t> has_content(texels, 0);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const std::size_t t = static_cast<std::size_t>(y) * size + x;
            if (!mask.at(x, y)) {
                has_content[t] = working.occupied(x, y) ? 1 : 0;
                continue;
            }
            std::fill_n(element_mask.begin() + static_cast<std::ptrdiff_t>(t * k), k, std::uint8_t{1});
            Tensor value;
            if (braid_working.occupied(x, y)) {
                value = braid_working.texel_vector(x, y);
            } else {
                try {
                    value = sample_latent_map(braid_working, texel_center(x, y, size, size));
                } catch (const DataError&) {
                    continue;
                }
            }
            known.segment(static_cast<Eigen::Index>(t * k), channels) = value;
            has_content[t] = 1;
        }
    }

    const NoiseSchedule schedule;
    std::unique_ptr<AnalyticGaussianDenoiser> fitted;
    if (denoiser == nullptr) {
        // Per-channel mean square of what the working resolution loses.
        const LatentMap restored = resize_latent_map(working, native_size, native_size);
        Tensor channel_var = Tensor::Zero(channels);
        std::size_t count = 0;
        for (int y = 0; y < native_size; ++y) {
            for (int x = 0; x < native_size; ++x) {
                if (!native.occupied(x, y)) continue;
                const auto a = native.texel(x, y);
                const auto b = restored.texel(x, y);
                for (int c = 0; c < channels; ++c) channel_var[c] += (a[c] - b[c]) * (a[c] - b[c]);
                ++count;
            }
        }
        channel_var /= static_cast<double>(std::max<std::size_t>(count, 1));
        channel_var = channel_var.cwiseMax(1e-12);
        Tensor sigma2(static_cast<Eigen::Index>(texels * k));
        for (std::size_t t = 0; t < texels; ++t) sigma2.segment(static_cast<Eigen::Index>(t * k), channels) = channel_var;
        fitted = std::make_unique<AnalyticGaussianDenoiser>(working.to_tensor(), std::move(sigma2), schedule);
        denoiser = fitted.get();
    }

    const Tensor result = repaint_inpaint(*denoiser, schedule, config.sampler, known, element_mask, {});

    LatentMap inpainted(size, size, channels);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const std::size_t t = static_cast<std::size_t>(y) * size + x;
            if (!has_content[t]) continue;
            const Tensor v = result.segment(static_cast<Eigen::Index>(t * k), channels);
            inpainted.set(x, y, std::span<const double>(v.data(), k));
        }
    }
    const LatentMap restored = resize_latent_map(inpainted, native_size, native_size);

    BraidResult out{{}, {}, braid.size(), mask, std::move(braid)};
    std::vector<Vec2> uvs;
    for (std::size_t i = 0; i < hairstyle.size(); ++i) {
        const auto [x, y] = texel_of(hairstyle.root_uv(i), size, size);
        if (mask.at(x, y)) continue;
        out.kept.push_back(i);
        uvs.push_back(hairstyle.root_uv(i));
    }
    for (std::size_t i = 0; i < out.braid.size(); ++i) uvs.push_back(out.braid.root_uv(i));
    out.strands = decode_at_roots(restored, basis, uvs);
    return out;
}

}  // namespace hairweave
