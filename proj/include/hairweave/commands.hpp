#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hairweave/pipeline.hpp"
#include "hairweave/synth.hpp"

// Command implementations behind the hairweave executable. Each command reads and
// validates everything, computes in memory, then writes its outputs.
namespace hairweave::cli {

using Path = std::filesystem::path;

void synth_hairstyle(StyleKind style, std::size_t strand_count, std::uint64_t seed, std::size_t points,
                     const Path& out);

void fit_basis(const Path& strands, int components, const Path& out);

// Latent map at native_size; with `resize`, the stored map is resized to that square size.
void encode(const Path& strands, const Path& basis, const Path& out, int native_size, std::optional<int> resize);

// Decodes at the roots of `roots` when given, otherwise one strand per occupied texel in row-major order.
void decode(const Path& latent, const Path& basis, const Path& out, const std::optional<Path>& roots);

// Writes view_{yaw}_{pitch}_{focal}.pbm for every rig view.
std::vector<Path> render_views(const Path& strands, const PipelineConfig& config, const Path& out_dir);

std::string view_filename(const CameraView& view);

struct BraidSelection {
    std::optional<Path> mask;            // PBM/PGM scored from the configured rig view
    std::vector<std::size_t> indices;    // used when no mask is given
};

BraidResult braid(const Path& strands, const Path& basis, const BraidSelection& selection,
                  const PipelineConfig& config, const Path& out);

struct MetricsReport {
    double chamfer_m = 0.0;
    double iou = 0.0;  // fraction
};

MetricsReport metrics(const Path& a, const Path& b, double voxel_size);
void print_metrics(std::ostream& out, const MetricsReport& report);

void export_obj(const Path& strands, const Path& out);

std::vector<std::size_t> parse_index_list(const std::string& text);

// 0 success, 1 usage, 2 data, 3 numeric.
int exit_code_for(const std::exception& e);

// Attaches strands read from a file to the built-in scalp.
Hairstyle load_hairstyle(const Path& path);

}  // namespace hairweave::cli
