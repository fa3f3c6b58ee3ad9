#include "hairweave/commands.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace hairweave::cli {

namespace {

std::string format_angle(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) return 1;
    if (dynamic_cast<const NumericError*>(&e)) return 3;
    return 2;
}

Hairstyle load_hairstyle(const Path& path) {
    auto strands = read_strand_file(path);
    if (strands.empty()) throw DataError(path.string() + ": strand file holds no strands");
    try {
        return Hairstyle(std::move(strands), builtin_scalp());
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void synth_hairstyle(StyleKind style, std::size_t strand_count, std::uint64_t seed, std::size_t points,
                     const Path& out) {
    const Hairstyle h = synth_hairstyle(style, strand_count, seed, points);
    write_strand_file(out, h.strands());
}

void fit_basis(const Path& strands, int components, const Path& out) {
    const auto data = read_strand_file(strands);
    if (data.empty()) throw DataError(strands.string() + ": strand file holds no strands");
    write_basis_file(out, hairweave::fit_basis(data, components));
}

void encode(const Path& strands, const Path& basis, const Path& out, int native_size, std::optional<int> resize) {
    if (native_size < 1) throw UsageError("map size must be positive");
    if (resize && *resize < 1) throw UsageError("resize target must be positive");
    const Hairstyle h = load_hairstyle(strands);
    const PcaBasis b = read_basis_file(basis);
    LatentMap map = build_latent_map(h, b, native_size, native_size, h.root_tolerance());
    if (resize) map = resize_latent_map(map, *resize, *resize);
    write_latent_file(out, map);
}

void decode(const Path& latent, const Path& basis, const Path& out, const std::optional<Path>& roots) {
    const LatentMap map = read_latent_file(latent);
    const PcaBasis b = read_basis_file(basis);
    if (map.channels() != b.latent_dim()) {
        throw DataError(latent.string() + ": latent map has " + std::to_string(map.channels()) +
                        " channels, basis has " + std::to_string(b.latent_dim()));
    }
    std::vector<Strand> decoded;
    if (roots) {
        const Hairstyle h = load_hairstyle(*roots);
        std::vector<Vec2> uvs(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) uvs[i] = h.root_uv(i);
        decoded = decode_at_roots(map, b, uvs);
    } else {
        for (int y = 0; y < map.height(); ++y) {
            for (int x = 0; x < map.width(); ++x) {
                if (map.occupied(x, y)) decoded.push_back(decode_strand(b, map.texel_vector(x, y)));
            }
        }
        if (decoded.empty()) throw DataError(latent.string() + ": latent map has no occupied texels");
    }
    write_strand_file(out, decoded);
}

std::string view_filename(const CameraView& view) {
    return "view_" + format_angle(view.yaw_deg) + "_" + format_angle(view.pitch_deg) + "_" +
           format_angle(view.focal_mm) + ".pbm";
}

std::vector<Path> render_views(const Path& strands, const PipelineConfig& config, const Path& out_dir) {
    config.validate();
    const auto data = read_strand_file(strands);
    const auto rig = build_rig(config.rig.width, config.rig.height, config.rig.distance);
    std::vector<std::string> images;
    images.reserve(rig.size());
    for (const CameraView& view : rig) {
        images.push_back(encode_pbm(rasterize_lineart(data, view, config.rig.line_width, config.rig.stride)));
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) throw DataError("cannot create output directory " + out_dir.string());
    std::vector<Path> written;
    for (std::size_t i = 0; i < rig.size(); ++i) {
        written.push_back(out_dir / view_filename(rig[i]));
        write_file_atomically(written.back(), images[i]);
    }
    return written;
}

BraidResult braid(const Path& strands, const Path& basis, const BraidSelection& selection,
                  const PipelineConfig& config, const Path& out) {
    config.validate();
    const Hairstyle h = load_hairstyle(strands);
    const PcaBasis b = read_basis_file(basis);
    std::vector<std::size_t> selected;
    if (selection.mask) {
        const BinaryImage mask = read_bitmap_file(*selection.mask);
        selected = select_strands_by_mask(h.strands(), mask, config.rig.view(), config.selection.threshold,
                                          config.selection.score);
    } else {
        selected = selection.indices;
    }
    const BraidResult result = run_braid_pipeline(h, b, selected, config);
    write_strand_file(out, result.strands);
    return result;
}

MetricsReport metrics(const Path& a, const Path& b, double voxel_size) {
    if (!(voxel_size > 0.0)) throw UsageError("voxel size must be positive");
    const auto sa = read_strand_file(a);
    const auto sb = read_strand_file(b);
    if (sa.empty()) throw DataError(a.string() + ": strand file holds no strands");
    if (sb.empty()) throw DataError(b.string() + ": strand file holds no strands");
    const PointCloud ca = strand_cloud(sa);
    const PointCloud cb = strand_cloud(sb);
    return {chamfer(ca, cb), point_cloud_iou(ca, cb, voxel_size)};
}

void print_metrics(std::ostream& out, const MetricsReport& report) {
    std::ostringstream s;
    s.precision(17);
    s << "name=chamfer value=" << report.chamfer_m << " units=m\n";
    s << "name=chamfer value=" << report.chamfer_m * 100.0 << " units=1e-2m\n";
    s << "name=iou value=" << report.iou * 100.0 << " units=percent\n";
    out << s.str();
}

void export_obj(const Path& strands, const Path& out) {
    const auto data = read_strand_file(strands);
    std::ostringstream s;
    write_obj(s, data);
    write_file_atomically(out, s.str());
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        const long long v = parse_integer(item.substr(first, last - first + 1), "strand index");
        if (v < 0) throw UsageError("strand indices must be non-negative");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

}  // namespace hairweave::cli
