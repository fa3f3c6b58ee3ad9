#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hairweave/braid.hpp"
#include "hairweave/commands.hpp"
#include "hairweave/metrics.hpp"
#include "hairweave/view_rig.hpp"

namespace py = pybind11;
using namespace hairweave;

namespace {

using StrandArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Strand> to_strands(const StrandArray& array) {
    if (array.ndim() != 3 || array.shape(2) != 3) throw DataError("strands must have shape (count, points, 3)");
    const auto view = array.unchecked<3>();
    std::vector<Strand> out;
    out.reserve(static_cast<std::size_t>(view.shape(0)));
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        std::vector<Vec3> points;
        for (py::ssize_t j = 0; j < view.shape(1); ++j) points.emplace_back(view(i, j, 0), view(i, j, 1), view(i, j, 2));
        out.emplace_back(std::move(points));
    }
    return out;
}

py::array_t<double> from_strands(std::span<const Strand> strands) {
    const py::ssize_t n = static_cast<py::ssize_t>(strands.size());
    const py::ssize_t p = n == 0 ? 0 : static_cast<py::ssize_t>(strands.front().size());
    py::array_t<double> out({n, p, py::ssize_t{3}});
    auto view = out.mutable_unchecked<3>();
    for (py::ssize_t i = 0; i < n; ++i) {
        const Strand& s = strands[static_cast<std::size_t>(i)];
        if (static_cast<py::ssize_t>(s.size()) != p) throw DataError("strands have unequal point counts");
        for (py::ssize_t j = 0; j < p; ++j)
            for (int c = 0; c < 3; ++c) view(i, j, c) = s[static_cast<std::size_t>(j)][c];
    }
    return out;
}

PointCloud to_cloud(const py::array_t<double, py::array::c_style | py::array::forcecast>& array) {
    if (array.ndim() != 2 || array.shape(1) != 3) throw DataError("points must have shape (count, 3)");
    const auto view = array.unchecked<2>();
    PointCloud cloud;
    for (py::ssize_t i = 0; i < view.shape(0); ++i) cloud.points.emplace_back(view(i, 0), view(i, 1), view(i, 2));
    return cloud;
}

py::array_t<std::uint8_t> from_image(const BinaryImage& image) {
    py::array_t<std::uint8_t> out({image.height(), image.width()});
    std::copy(image.pixels().begin(), image.pixels().end(), out.mutable_data());
    return out;
}

BraidParams braid_params(const py::dict& overrides) {
    BraidParams params;
    for (const auto& [key, value] : overrides) apply_braid_param(params, py::str(key), py::str(value));
    params.validate();
    return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Strand codec, braid synthesis, diffusion sampling and metrics.";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DataError>(m, "DataError", error.ptr());
    py::register_exception<NumericError>(m, "NumericError", error.ptr());
    py::register_exception<UsageError>(m, "UsageError", error.ptr());

    m.def(
        "synth_hairstyle",
        [](const std::string& style, std::size_t count, std::uint64_t seed, std::size_t points) {
            const Hairstyle h = synth_hairstyle(parse_style(style), count, seed, points);
            py::array_t<double> uvs({static_cast<py::ssize_t>(h.size()), py::ssize_t{2}});
            auto view = uvs.mutable_unchecked<2>();
            for (std::size_t i = 0; i < h.size(); ++i) {
                view(static_cast<py::ssize_t>(i), 0) = h.root_uv(i).x();
                view(static_cast<py::ssize_t>(i), 1) = h.root_uv(i).y();
            }
            return py::make_tuple(from_strands(h.strands()), uvs);
        },
        py::arg("style") = "straight", py::arg("count") = 1000, py::arg("seed") = 0,
        py::arg("points") = kDefaultStrandLength, "Procedural hairstyle as (strands, root_uvs).");

    py::class_<PcaBasis>(m, "PcaBasis")
        .def_property_readonly("mean", &PcaBasis::mean)
        .def_property_readonly("components", &PcaBasis::components)
        .def_property_readonly("eigenvalues", &PcaBasis::eigenvalues)
        .def_property_readonly("latent_dim", &PcaBasis::latent_dim)
        .def_property_readonly("strand_length", &PcaBasis::strand_length)
        .def("encode",
             [](const PcaBasis& b, const StrandArray& strands) {
                 const auto list = to_strands(strands);
                 Eigen::MatrixXd out(static_cast<Eigen::Index>(list.size()), b.latent_dim());
                 for (std::size_t i = 0; i < list.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = encode_strand(b, list[i]);
                 return out;
             })
        .def("decode",
             [](const PcaBasis& b, const Eigen::MatrixXd& latents) {
                 std::vector<Strand> out;
                 for (Eigen::Index i = 0; i < latents.rows(); ++i) out.push_back(decode_strand(b, latents.row(i).transpose()));
                 return from_strands(out);
             })
        .def("save", [](const PcaBasis& b, const std::filesystem::path& path) { write_basis_file(path, b); });
    m.def("fit_basis", [](const StrandArray& strands, int components) { return fit_basis(to_strands(strands), components); },
          py::arg("strands"), py::arg("components") = kDefaultLatentDim);
    m.def("load_basis", &read_basis_file);

    m.def("chamfer", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                        const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
        return chamfer(to_cloud(a), to_cloud(b));
    });
    m.def(
        "iou",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& b,
           double voxel_size) { return point_cloud_iou(to_cloud(a), to_cloud(b), voxel_size); },
        py::arg("a"), py::arg("b"), py::arg("voxel_size") = kDefaultVoxelSize);

    m.def("alpha_bars", [](int timesteps) {
        const NoiseSchedule s(timesteps);
        return std::vector<double>(s.alpha_bars().begin(), s.alpha_bars().end());
    }, py::arg("timesteps") = kDefaultTimesteps);
    m.def("ddim_timesteps", &ddim_timesteps, py::arg("timesteps") = kDefaultTimesteps, py::arg("steps") = 50);
    m.def(
        "sample_gaussian",
        [](const Tensor& mu, double sigma2, int steps, double eta, std::uint64_t seed) {
            const NoiseSchedule schedule;
            const AnalyticGaussianDenoiser denoiser(mu, sigma2, schedule);
            SamplerConfig config;
            config.steps = steps;
            config.eta = eta;
            config.seed = seed;
            return sample(denoiser, schedule, config, {}, mu.size());
        },
        py::arg("mu"), py::arg("sigma2"), py::arg("steps") = 50, py::arg("eta") = 0.0, py::arg("seed") = 0,
        "DDIM sample from the exact denoiser of N(mu, sigma2 I).");
    m.def(
        "inpaint_gaussian",
        [](const Tensor& mu, double sigma2, const Tensor& known, const std::vector<std::uint8_t>& mask, int steps,
           double eta, std::uint64_t seed) {
            const NoiseSchedule schedule;
            const AnalyticGaussianDenoiser denoiser(mu, sigma2, schedule);
            SamplerConfig config;
            config.steps = steps;
            config.eta = eta;
            config.seed = seed;
            return repaint_inpaint(denoiser, schedule, config, known, mask, {});
        },
        py::arg("mu"), py::arg("sigma2"), py::arg("known"), py::arg("mask"), py::arg("steps") = 50,
        py::arg("eta") = 0.0, py::arg("seed") = 0);

    m.def(
        "synth_braid",
        [](StrandArray guide, std::uint64_t seed, const py::dict& params) {
            const auto curves = to_strands(guide.reshape({py::ssize_t{1}, guide.shape(0), py::ssize_t{3}}));
            const BraidFragment f = synth_braid(make_guide(curves.front()), braid_params(params), seed);
            return py::make_tuple(from_strands(f.centers), from_strands(f.members), f.member_group);
        },
        py::arg("guide"), py::arg("seed") = 0, py::arg("params") = py::dict(),
        "Braid around a (points, 3) guide; returns (centers, members, member_group).");
    m.def(
        "laplacian_smooth",
        [](const StrandArray& strands, double lambda, int iterations) {
            std::vector<Strand> out;
            for (const Strand& s : to_strands(strands)) out.push_back(laplacian_smooth(s, lambda, iterations));
            return from_strands(out);
        },
        py::arg("strands"), py::arg("lambda_") = 0.5, py::arg("iterations") = 1);

    m.def(
        "render_lineart",
        [](const StrandArray& strands, double yaw, double pitch, double focal, int width, int height) {
            const CameraView view{yaw, pitch, focal, kDefaultCameraDistance, width, height};
            return from_image(rasterize_lineart(to_strands(strands), view));
        },
        py::arg("strands"), py::arg("yaw") = 0.0, py::arg("pitch") = 0.0, py::arg("focal") = 50.0,
        py::arg("width") = 512, py::arg("height") = 512);

    auto cli = m.def_submodule("cli", "File-based commands mirroring the hairweave executable.");
    cli.def("synth_hairstyle", [](const std::string& style, std::size_t count, std::uint64_t seed, std::size_t points,
                                  const std::filesystem::path& out) {
        cli::synth_hairstyle(parse_style(style), count, seed, points, out);
    }, py::arg("style"), py::arg("count"), py::arg("seed"), py::arg("points"), py::arg("out"));
    cli.def("fit_basis", &cli::fit_basis, py::arg("strands"), py::arg("components"), py::arg("out"));
    cli.def("encode", &cli::encode, py::arg("strands"), py::arg("basis"), py::arg("out"),
            py::arg("native_size") = kNativeMapSize, py::arg("resize") = std::nullopt);
    cli.def("decode", &cli::decode, py::arg("latent"), py::arg("basis"), py::arg("out"), py::arg("roots") = std::nullopt);
    cli.def(
        "braid",
        [](const std::filesystem::path& strands, const std::filesystem::path& basis, std::vector<std::size_t> indices,
           const std::filesystem::path& out, const std::map<std::string, std::string>& settings) {
            PipelineConfig config;
            for (const auto& [key, value] : settings) config.apply(key, value);
            config.validate();
            cli::BraidSelection selection;
            selection.indices = std::move(indices);
            const BraidResult r = cli::braid(strands, basis, selection, config, out);
            return py::make_tuple(r.kept, r.braid_count);
        },
        py::arg("strands"), py::arg("basis"), py::arg("indices"), py::arg("out"),
        py::arg("settings") = std::map<std::string, std::string>{},
        "Returns (kept input indices, braid strand count).");
    cli.def(
        "metrics",
        [](const std::filesystem::path& a, const std::filesystem::path& b, double voxel_size) {
            const cli::MetricsReport r = cli::metrics(a, b, voxel_size);
            return py::dict(py::arg("chamfer_m") = r.chamfer_m, py::arg("iou") = r.iou);
        },
        py::arg("a"), py::arg("b"), py::arg("voxel_size") = kDefaultVoxelSize);
    cli.def("read_strands", [](const std::filesystem::path& path) { return from_strands(read_strand_file(path)); });
}
