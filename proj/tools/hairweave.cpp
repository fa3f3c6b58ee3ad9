// hairweave command-line tool.
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hairweave/commands.hpp"

namespace hw = hairweave;
namespace cli = hairweave::cli;

namespace {

constexpr const char* kConfigEnv = "HAIRWEAVE_CONFIG";

struct ConfigOptions {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

// Registers --config plus one flag per PipelineConfig key.
void add_config_flags(CLI::App* cmd, ConfigOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Pipeline config file (default: $HAIRWEAVE_CONFIG)");
    for (const std::string& key : hw::PipelineConfig::keys()) {
        cmd->add_option_function<std::string>(
            "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; }, "Overrides " + key);
    }
}

hw::PipelineConfig resolve_config(const ConfigOptions& opts) {
    hw::PipelineConfig config;
    std::string path = opts.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(kConfigEnv)) path = env;
    }
    if (!path.empty()) config = hw::PipelineConfig::load(path);
    for (const auto& [key, value] : opts.overrides) config.apply(key, value);
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strand hair toolkit: codec, braids, inpainting, rendering and metrics"};
    app.require_subcommand(1);

    std::string style = "straight", out, in, in_b, basis, dir, mask, indices, roots;
    std::size_t count = 100, points = hw::kDefaultStrandLength;
    std::uint64_t seed = 0;
    int components = hw::kDefaultLatentDim, map_size = hw::kNativeMapSize, resize = 0;
    double voxel_size = hw::kDefaultVoxelSize;
    ConfigOptions render_opts, braid_opts, metrics_opts;

    auto* synth = app.add_subcommand("synth-hairstyle", "Procedural hairstyle on the built-in scalp");
    synth->add_option("--style", style, "straight, wavy or curly")->capture_default_str();
    synth->add_option("--count", count, "Strand count")->capture_default_str();
    synth->add_option("--seed", seed)->capture_default_str();
    synth->add_option("--points", points, "Points per strand")->capture_default_str();
    synth->add_option("-o,--out", out)->required();

    auto* fit = app.add_subcommand("fit-basis", "Fit the linear strand codec");
    fit->add_option("strands", in)->required();
    fit->add_option("-k,--components", components)->capture_default_str();
    fit->add_option("-o,--out", out)->required();

    auto* enc = app.add_subcommand("encode", "Encode strands into a scalp latent map");
    enc->add_option("strands", in)->required();
    enc->add_option("--basis", basis)->required();
    enc->add_option("--size", map_size, "Native map size")->capture_default_str();
    enc->add_option("--resize", resize, "Resize the stored map to this size");
    enc->add_option("-o,--out", out)->required();

    auto* dec = app.add_subcommand("decode", "Decode a latent map into strands");
    dec->add_option("latent", in)->required();
    dec->add_option("--basis", basis)->required();
    dec->add_option("--roots", roots, "Strand file whose roots are sampled");
    dec->add_option("-o,--out", out)->required();

    auto* render = app.add_subcommand("render-views", "Render lineart for the 72-view rig");
    render->add_option("strands", in)->required();
    render->add_option("-o,--out-dir", dir)->required();
    add_config_flags(render, render_opts);

    auto* braid = app.add_subcommand("braid", "Synthesize a braid and inpaint it into a hairstyle");
    braid->add_option("strands", in)->required();
    braid->add_option("--basis", basis)->required();
    auto* mask_opt = braid->add_option("--mask", mask, "PBM/PGM mask scored from the rig.* view");
    braid->add_option("--indices", indices, "Comma-separated strand indices")->excludes(mask_opt);
    braid->add_option("-o,--out", out)->required();
    add_config_flags(braid, braid_opts);

    auto* met = app.add_subcommand("metrics", "Chamfer distance and voxel IoU between two strand files");
    met->add_option("a", in)->required();
    met->add_option("b", in_b)->required();
    met->add_option("--voxel-size", voxel_size, "Voxel edge in meters");
    add_config_flags(met, metrics_opts);

    auto* obj = app.add_subcommand("export-obj", "Write strands as OBJ polylines");
    obj->add_option("strands", in)->required();
    obj->add_option("-o,--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) {
            if (count < 1) throw hw::UsageError("--count must be at least 1");
            cli::synth_hairstyle(hw::parse_style(style), count, seed, points, out);
        } else if (fit->parsed()) {
            cli::fit_basis(in, components, out);
        } else if (enc->parsed()) {
            cli::encode(in, basis, out, map_size, resize > 0 ? std::optional<int>(resize) : std::nullopt);
        } else if (dec->parsed()) {
            cli::decode(in, basis, out, roots.empty() ? std::nullopt : std::optional<cli::Path>(roots));
        } else if (render->parsed()) {
            const auto written = cli::render_views(in, resolve_config(render_opts), dir);
            std::cout << "wrote " << written.size() << " views to " << dir << "\n";
        } else if (braid->parsed()) {
            cli::BraidSelection selection;
            if (!mask.empty()) selection.mask = mask;
            else if (!indices.empty()) selection.indices = cli::parse_index_list(indices);
            else throw hw::UsageError("braid needs --mask or --indices");
            const auto result = cli::braid(in, basis, selection, resolve_config(braid_opts), out);
            std::cout << "kept=" << result.kept.size() << " braid=" << result.braid_count
                      << " mask_texels=" << result.mask.count() << "\n";
        } else if (met->parsed()) {
            hw::PipelineConfig config = resolve_config(metrics_opts);
            if (met->count("--voxel-size") > 0) config.metric.voxel_size = voxel_size;
            cli::print_metrics(std::cout, cli::metrics(in, in_b, config.metric.voxel_size));
        } else if (obj->parsed()) {
            cli::export_obj(in, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code_for(e);
    }
    return 0;
}
