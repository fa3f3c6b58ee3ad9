// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fidelity_reference.hpp"
#include "gaussian_oracle.hpp"
#include "hairweave/commands.hpp"
#include "support.hpp"

using namespace hairweave;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.pass = false;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += what;
    }
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

struct MomentCheck {
    double worst_mean = 0.0;  // |mean - mu| / sigma
    double worst_var = 0.0;   // |var / sigma2 - 1|
};

MomentCheck moments(const std::vector<Tensor>& samples, const std::vector<int>& coords, const Tensor& mu, double sigma2) {
    MomentCheck out;
    const double n = static_cast<double>(samples.size());
    for (int c : coords) {
        double m = 0.0;
        for (const Tensor& s : samples) m += s[c];
        m /= n;
        double v = 0.0;
        for (const Tensor& s : samples) v += (s[c] - m) * (s[c] - m);
        v /= n - 1.0;
        out.worst_mean = std::max(out.worst_mean, std::abs(m - mu[c]) / std::sqrt(sigma2));
        out.worst_var = std::max(out.worst_var, std::abs(v / sigma2 - 1.0));
    }
    return out;
}

Outcome metric_oracles() {
    Outcome o;
    Rng rng(1001);
    double worst_cd = 0.0;
    int iou_mismatch = 0;
    for (int pair = 0; pair < 100; ++pair) {
        const auto a = testing::random_points(rng, 200, 0.1);
        const auto b = testing::random_points(rng, 200, 0.1);
        worst_cd = std::max(worst_cd, std::abs(chamfer({a}, {b}) - testing::brute_force_chamfer(a, b)));
        if (point_cloud_iou({a}, {b}, 0.02) != testing::brute_force_iou(a, b, 0.02)) ++iou_mismatch;
    }
    require(o, worst_cd <= 1e-12, fmt("chamfer deviates by %.3g", worst_cd));
    require(o, iou_mismatch == 0, fmt("%g IoU mismatches", iou_mismatch));
    if (o.pass) o.detail = fmt("max |chamfer - brute force| = %.3g, IoU exact on 100 pairs", worst_cd);
    return o;
}

Outcome codec_identity() {
    Outcome o;
    const Hairstyle h = synth_hairstyle(StyleKind::Curly, 50, 2002, 16);
    const std::vector<Strand> strands(h.strands().begin(), h.strands().end());
    const int full = 48;
    const PcaBasis basis = fit_basis(strands, full);
    double worst = 0.0;
    for (const Strand& s : strands) {
        const Strand r = decode_strand(basis, encode_strand(basis, s));
        double sq = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) sq += (r[j] - s[j]).squaredNorm();
        worst = std::max(worst, std::sqrt(sq / static_cast<double>(s.size())));
    }
    require(o, worst <= 1e-6, fmt("full-rank per-strand RMSE %.3g m", worst));
    double previous = std::numeric_limits<double>::infinity();
    std::string series;
    for (int k : {1, 2, 4, 8, 16, 32, full}) {
        const PcaBasis b = fit_basis(strands, k);
        double sq = 0.0;
        std::size_t n = 0;
        for (const Strand& s : strands) {
            const Strand r = decode_strand(b, encode_strand(b, s));
            for (std::size_t j = 0; j < s.size(); ++j, ++n) sq += (r[j] - s[j]).squaredNorm();
        }
        const double rmse = std::sqrt(sq / static_cast<double>(n));
        require(o, rmse <= previous, fmt("RMSE rises at K=%g", k));
        previous = rmse;
        series += fmt(series.empty() ? "%.2g" : ",%.2g", rmse);
    }
    if (o.pass) o.detail = fmt("full-rank max RMSE %.3g m; ", worst) + "RMSE over K: " + series;
    return o;
}

Outcome latent_round_trip_exact() {
    Outcome o;
    const Hairstyle h = synth_hairstyle(StyleKind::Wavy, 2000, 3003, 40);
    const PcaBasis basis = fit_basis(h.strands(), 32);
    const int size = 256;
    const LatentMap map = build_latent_map(h, basis, size, size);
    std::map<std::pair<int, int>, int> occupants;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto t = texel_of(h.root_uv(i), size, size);
        ++occupants[{t[0], t[1]}];
    }
    double worst_center = 0.0;
    double worst_root = 0.0;
    std::size_t single = 0;
    std::size_t isolated = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto t = texel_of(h.root_uv(i), size, size);
        if (occupants[{t[0], t[1]}] != 1) continue;
        ++single;
        const Tensor latent = encode_strand(basis, h.strand(i));
        const Vec2 center((t[0] + 0.5) / size, (t[1] + 0.5) / size);
        worst_center = std::max(worst_center, (sample_latent_map(map, center) - latent).cwiseAbs().maxCoeff());
        // At the raw root UV the bilinear stencil may reach occupied neighbours; count the
        // strands whose stencil holds no other occupied texel.
        const double fx = h.root_uv(i).x() * size - 0.5;
        const double fy = h.root_uv(i).y() * size - 0.5;
        const int x0 = static_cast<int>(std::floor(fx));
        const int y0 = static_cast<int>(std::floor(fy));
        bool alone = true;
        for (int y = y0; y <= y0 + 1; ++y)
            for (int x = x0; x <= x0 + 1; ++x)
                if (x >= 0 && y >= 0 && x < size && y < size && !(x == t[0] && y == t[1]) && map.occupied(x, y)) alone = false;
        if (!alone) continue;
        ++isolated;
        worst_root = std::max(worst_root, (sample_latent_map(map, h.root_uv(i)) - latent).cwiseAbs().maxCoeff());
    }
    require(o, single > 1000, fmt("only %g single-occupant strands", static_cast<double>(single)));
    require(o, worst_center <= 1e-9, fmt("texel-center deviation %.3g", worst_center));
    require(o, worst_root <= 1e-9, fmt("root-UV deviation %.3g", worst_root));
    if (o.pass) {
        o.detail = fmt("%g single-occupant strands, max dev %.3g at texel centers; %g with a clear stencil, max dev %.3g at root UV",
                       static_cast<double>(single), worst_center, static_cast<double>(isolated), worst_root);
    }
    return o;
}

constexpr int kSamplerDim = 16;
constexpr int kSamplerRuns = 10000;
constexpr double kTargetVariance = 0.5;

Tensor sampler_mean() { return Tensor::LinSpaced(kSamplerDim, -0.75, 0.75); }

Outcome sampler_statistics() {
    Outcome o;
    double worst_quad = 0.0;
    for (double mu : {-1.0, 0.0, 0.4})
        for (double s2 : {0.1, 0.5, 1.0, 3.0})
            for (double a : {0.01, 0.3, 0.5, 0.9, 0.999})
                for (double x : {-2.0, 0.0, 1.0}) {
                    const double closed = ((std::sqrt(a) / (1 - a)) * x + mu / s2) / (a / (1 - a) + 1 / s2);
                    worst_quad = std::max(worst_quad, std::abs(closed - oracle::quadrature_posterior_mean(mu, s2, a, x)));
                }
    require(o, worst_quad <= 1e-6, fmt("posterior mean vs quadrature %.3g", worst_quad));

    const NoiseSchedule schedule;
    const Tensor mu = sampler_mean();
    const AnalyticGaussianDenoiser denoiser(mu, kTargetVariance, schedule);
    const std::vector<double> abar(schedule.alpha_bars().begin(), schedule.alpha_bars().end());
    std::vector<int> coords(kSamplerDim);
    std::iota(coords.begin(), coords.end(), 0);
    std::string summary = fmt("quadrature dev %.2g", worst_quad);
    for (double eta : {0.0, 1.0}) {
        std::vector<Tensor> samples;
        samples.reserve(kSamplerRuns);
        SamplerConfig config;
        config.eta = eta;
        for (int r = 0; r < kSamplerRuns; ++r) {
            config.seed = 40000 + static_cast<std::uint64_t>(r);
            samples.push_back(sample(denoiser, schedule, config, {}, kSamplerDim));
        }
        const MomentCheck m = moments(samples, coords, mu, kTargetVariance);
        const oracle::Moments exact = oracle::ddim_moments(abar, ddim_timesteps(1000, 50), 0.0, kTargetVariance, eta);
        summary += fmt("; eta %g: mean dev %.3g sigma, var dev %.3g (closed-form var ratio %.4f)", eta, m.worst_mean,
                       m.worst_var, exact.variance / kTargetVariance);
        require(o, m.worst_mean <= 0.05, fmt("eta %g mean off by %.3g sigma", eta, m.worst_mean));
        require(o, m.worst_var <= 0.05, fmt("eta %g variance off by %.3g", eta, m.worst_var));
    }
    o.detail = o.pass ? summary : o.detail + " | " + summary;
    return o;
}

Outcome inpainting_contract() {
    Outcome o;
    const NoiseSchedule schedule;
    const Tensor mu = sampler_mean();
    const AnalyticGaussianDenoiser denoiser(mu, kTargetVariance, schedule);
    const Tensor known = Tensor::LinSpaced(kSamplerDim, 2.0, -2.0);
    const std::vector<double> abar(schedule.alpha_bars().begin(), schedule.alpha_bars().end());
    std::vector<std::uint8_t> all(kSamplerDim, 1);
    std::vector<std::uint8_t> none(kSamplerDim, 0);
    std::vector<std::uint8_t> half(kSamplerDim, 0);
    std::vector<int> free;
    for (int i = 0; i < kSamplerDim; ++i) {
        if (i % 2 == 0) half[i] = 1;
        else free.push_back(i);
    }
    std::string summary;
    for (double eta : {0.0, 1.0}) {
        SamplerConfig config;
        config.eta = eta;
        bool identity = true;
        bool matches = true;
        bool pinned = true;
        std::vector<Tensor> samples;
        for (int r = 0; r < kSamplerRuns; ++r) {
            config.seed = 90000 + static_cast<std::uint64_t>(r);
            if (r < 50) {
                identity = identity && repaint_inpaint(denoiser, schedule, config, known, all, {}) == known;
                matches = matches && repaint_inpaint(denoiser, schedule, config, known, none, {}) ==
                                         sample(denoiser, schedule, config, {}, kSamplerDim);
            }
            samples.push_back(repaint_inpaint(denoiser, schedule, config, known, half, {}));
            for (int i = 0; i < kSamplerDim; i += 2) pinned = pinned && samples.back()[i] == known[i];
        }
        require(o, identity, fmt("eta %g: all-true mask altered known", eta));
        require(o, matches, fmt("eta %g: all-false mask differs from sample()", eta));
        require(o, pinned, fmt("eta %g: masked entries differ from known", eta));
        const MomentCheck m = moments(samples, free, mu, kTargetVariance);
        require(o, m.worst_mean <= 0.05, fmt("eta %g free-region mean off by %.3g sigma", eta, m.worst_mean));
        require(o, m.worst_var <= 0.05, fmt("eta %g free-region variance off by %.3g", eta, m.worst_var));
        const oracle::Moments exact = oracle::ddim_moments(abar, ddim_timesteps(1000, 50), 0.0, kTargetVariance, eta);
        if (!summary.empty()) summary += "; ";
        summary += fmt("eta %g: free mean dev %.3g sigma, var dev %.3g (closed-form var ratio %.4f)", eta, m.worst_mean,
                       m.worst_var, exact.variance / kTargetVariance);
    }
    o.detail = o.pass ? "bitwise contracts hold; " + summary : o.detail + " | bitwise contracts hold; " + summary;
    return o;
}

Outcome braid_geometry() {
    Outcome o;
    // Zero amplitude
    std::vector<Vec3> helix;
    for (int j = 0; j < 300; ++j) helix.emplace_back(0.03 * std::cos(0.04 * j), -0.002 * j, 0.03 * std::sin(0.04 * j));
    const GuideCurve guide = make_guide(Strand(helix));
    BraidParams zero;
    zero.width = zero.thickness = zero.group_radius = 0.0;
    zero.strands_per_group = 1;
    double worst_zero = 0.0;
    for (const Strand& c : synth_braid(guide, zero, 1).centers)
        for (std::size_t j = 0; j < c.size(); ++j) worst_zero = std::max(worst_zero, (c[j] - guide.curve[j]).norm());
    require(o, worst_zero <= 1e-9, fmt("zero-amplitude deviation %.3g", worst_zero));

    // Offsets cancel and pairwise crossings match the analytic count
    BraidParams p;
    p.oscillation_period = 0.08;
    const GuideCurve straight = make_guide(testing::line_strand(Vec3(0, 0.1, 0), Vec3(0, -1, 0), 1601, 2 * p.oscillation_period / 1600));
    const BraidFragment f = synth_braid(straight, p, 7);
    double worst_sum = 0.0;
    for (std::size_t j = 0; j < straight.curve.size(); ++j) {
        Vec3 sum = Vec3::Zero();
        for (const Strand& c : f.centers) sum += c[j] - straight.curve[j];
        worst_sum = std::max(worst_sum, sum.norm());
    }
    require(o, worst_sum <= 1e-9, fmt("offset sum %.3g", worst_sum));
    const auto phases = p.phases();
    std::string crossings;
    for (int i = 0; i < 3; ++i)
        for (int k = i + 1; k < 3; ++k) {
            int analytic = 0;
            for (int m = -10; m <= 20; ++m) {
                const double x = -(phases[i] + phases[k]) / 2.0 + m * kPi;
                if (x > 1e-9 && x < 4.0 * kPi - 1e-9) ++analytic;
            }
            int changes = 0;
            int previous = 0;
            for (std::size_t j = 0; j < straight.curve.size(); ++j) {
                const double v = (f.centers[i][j] - f.centers[k][j]).dot(straight.frames[j].normal);
                if (std::abs(v) < 1e-9) continue;
                const int s = v > 0 ? 1 : -1;
                if (previous != 0 && s != previous) ++changes;
                previous = s;
            }
            require(o, changes == analytic, fmt("pair %g-%g: %g crossings, expected %g", i, k, changes, analytic));
            crossings += fmt(crossings.empty() ? "%g" : "/%g", changes);
        }

    // Frame orthonormality on the helix and on a procedural strand
    double worst_frame = 0.0;
    const Hairstyle h = synth_hairstyle(StyleKind::Curly, 5, 6, 100);
    for (const GuideCurve& g : {guide, make_guide(h.strand(0)), make_guide(h.strand(3))}) {
        for (const FrenetFrame& fr : g.frames) {
            worst_frame = std::max({worst_frame, std::abs(fr.tangent.norm() - 1), std::abs(fr.normal.norm() - 1),
                                    std::abs(fr.binormal.norm() - 1), std::abs(fr.tangent.dot(fr.normal)),
                                    std::abs(fr.tangent.dot(fr.binormal)), std::abs(fr.normal.dot(fr.binormal)),
                                    (fr.tangent.cross(fr.normal) - fr.binormal).norm()});
        }
    }
    require(o, worst_frame <= 1e-9, fmt("frame residual %.3g", worst_frame));
    if (o.pass) {
        o.detail = fmt("zero-amp dev %.2g, offset sum %.2g, frame residual %.2g, crossings per pair over two periods ",
                       worst_zero, worst_sum, worst_frame) + crossings;
    }
    return o;
}

Outcome smoothing_descent() {
    Outcome o;
    Rng rng(7007);
    int violations = 0;
    int moved_ends = 0;
    for (int s = 0; s < 100; ++s) {
        const Strand noisy = testing::random_walk_strand(rng, 50, 0.01);
        for (double lambda : {0.1, 0.5, 1.0}) {
            Strand current = noisy;
            double energy = laplacian_energy(current);
            for (int it = 0; it < 10; ++it) {
                current = laplacian_smooth(current, lambda, 1);
                const double next = laplacian_energy(current);
                if (next > energy) ++violations;
                energy = next;
            }
            if (!(current.root() == noisy.root()) || !(current[49] == noisy[49])) ++moved_ends;
            // The multi-iteration call agrees with repeated single steps.
            if (!(laplacian_smooth(noisy, lambda, 10) == current)) ++violations;
        }
    }
    require(o, violations == 0, fmt("%g energy increases", violations));
    require(o, moved_ends == 0, fmt("%g runs moved an endpoint", moved_ends));
    if (o.pass) o.detail = "3000 smoothing steps, energy never rose, endpoints bit-identical";
    return o;
}

Outcome rig_and_rendering(const fs::path& work) {
    Outcome o;
    const auto rig = build_rig(512, 512);
    require(o, rig.size() == 72, fmt("%g views", static_cast<double>(rig.size())));
    std::map<double, int> yaws;
    std::map<double, int> focals;
    for (const CameraView& v : rig) {
        ++yaws[v.yaw_deg];
        ++focals[v.focal_mm];
    }
    int expected_yaw = 0;
    for (const auto& [yaw, n] : yaws) {
        require(o, yaw == expected_yaw && n == 9, fmt("yaw %g appears %g times", yaw, n));
        expected_yaw += 45;
    }
    require(o, focals.size() == 3 && focals.count(35) && focals.count(50) && focals.count(85), "focal set differs");

    cli::synth_hairstyle(StyleKind::Wavy, 500, 8008, 50, work / "render.hstr");
    const PipelineConfig config;
    const auto first = cli::render_views(work / "render.hstr", config, work / "views_a");
    const auto second = cli::render_views(work / "render.hstr", config, work / "views_b");
    bool identical = first.size() == 72 && second.size() == 72;
    for (std::size_t i = 0; identical && i < first.size(); ++i) identical = read_file(first[i]) == read_file(second[i]);
    require(o, identical, "render reruns differ");

    // Golden single strand: a vertical run through the image center.
    const CameraView front = rig[4];
    const std::vector<Strand> strand{testing::line_strand(Vec3(0, 0.1, 0), Vec3(0, -1, 0), 21, 0.01)};
    const BinaryImage img = rasterize_lineart(strand, front);
    const double f = 50.0 / 36.0 * 512.0;
    BinaryImage expected(512, 512);
    for (int y = static_cast<int>(std::floor(256.0 - f * 0.1 / 1.2)); y <= static_cast<int>(std::floor(256.0 + f * 0.1 / 1.2)); ++y) {
        expected.set(256, y);
    }
    require(o, img == expected, "golden strand image differs from the line-walk oracle");
    if (o.pass) o.detail = fmt("72 views, 2x72 renders byte-identical, golden run of %g px", static_cast<double>(expected.count()));
    return o;
}

Outcome end_to_end(const fs::path& work, double& seconds) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    cli::synth_hairstyle(StyleKind::Wavy, 2000, 9009, kDefaultStrandLength, work / "hair.hstr");
    cli::fit_basis(work / "hair.hstr", kDefaultLatentDim, work / "hair.hpca");
    cli::encode(work / "hair.hstr", work / "hair.hpca", work / "hair.hlat", kNativeMapSize, std::nullopt);

    // Braid the strands rooted near one scalp spot.
    const Hairstyle h = cli::load_hairstyle(work / "hair.hstr");
    cli::BraidSelection selection;
    for (std::size_t i = 0; i < h.size() && selection.indices.size() < 12; ++i) {
        if ((h.root_uv(i) - Vec2(0.5, 0.8)).norm() < 0.06) selection.indices.push_back(i);
    }
    const PipelineConfig config;
    const BraidResult result = cli::braid(work / "hair.hstr", work / "hair.hpca", selection, config, work / "braided.hstr");
    const cli::MetricsReport report = cli::metrics(work / "braided.hstr", work / "hair.hstr", config.metric.voxel_size);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const PcaBasis basis = read_basis_file(work / "hair.hpca");
    const auto baseline = latent_round_trip(h, basis, config.codec);
    std::vector<Strand> truth;
    std::vector<Strand> reference;
    for (std::size_t k : result.kept) {
        truth.push_back(h.strand(k));
        reference.push_back(baseline[k]);
    }
    const auto braided = read_strand_file(work / "braided.hstr");
    const std::vector<Strand> kept(braided.begin(), braided.begin() + static_cast<long>(result.kept.size()));
    const double cd_kept = chamfer(strand_cloud(kept), strand_cloud(truth));
    const double cd_codec = chamfer(strand_cloud(reference), strand_cloud(truth));
    require(o, seconds < 120.0, fmt("took %.1f s", seconds));
    require(o, cd_kept <= 2.0 * cd_codec, fmt("kept-strand CD %.3g m exceeds twice the codec CD %.3g m", cd_kept, cd_codec));
    const std::string info = fmt("selected %g, braid strands %g, mask texels %g", static_cast<double>(selection.indices.size()),
                                 static_cast<double>(result.braid_count), static_cast<double>(result.mask.count())) +
                             fmt("; kept CD %.3g m vs codec CD %.3g m; full CD %.3g m, IoU %.1f%%", cd_kept, cd_codec,
                                 report.chamfer_m, 100.0 * report.iou);
    o.detail = o.pass ? info : o.detail + " | " + info;
    return o;
}

Outcome fidelity_terms() {
    Outcome o;
    int nonzero = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const StyleKind kind = static_cast<StyleKind>(seed % 3);
        const Hairstyle a = synth_hairstyle(kind, 40, 10000 + seed, 32);
        const FidelityReport self = fidelity_metrics(a.strands(), a.strands());
        if (self.pos_l2 != 0.0 || self.dir_cos_loss != 0.0 || self.curv_l2 != 0.0) ++nonzero;
        const Hairstyle b = synth_hairstyle(static_cast<StyleKind>((seed + 1) % 3), 40, 20000 + seed, 32);
        const std::vector<Strand> sa(a.strands().begin(), a.strands().end());
        const std::vector<Strand> sb(b.strands().begin(), b.strands().end());
        const FidelityReport r = fidelity_metrics(sa, sb);
        worst = std::max({worst, std::abs(r.pos_l2 - testing::loop_reference_pos(sa, sb)),
                          std::abs(r.dir_cos_loss - testing::loop_reference_dir(sa, sb)),
                          std::abs(r.curv_l2 - testing::loop_reference_curv(sa, sb))});
    }
    require(o, nonzero == 0, fmt("%g self-comparisons were not exactly zero", nonzero));
    require(o, worst <= 1e-9, fmt("loop reference deviation %.3g", worst));
    if (o.pass) o.detail = fmt("20 self-comparisons exactly zero, max deviation from loop reference %.3g", worst);
    return o;
}

}  // namespace

int main() {
    const fs::path work = testing::scratch_dir("acceptance");
    double pipeline_seconds = 0.0;
    struct Criterion {
        const char* name;
        double budget;  // seconds, 0 when unbounded
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"metric oracle equivalence", 5.0, metric_oracles},
        {"codec identity", 10.0, codec_identity},
        {"latent map round trip", 0.0, latent_round_trip_exact},
        {"sampler statistics", 60.0, sampler_statistics},
        {"inpainting contract", 0.0, inpainting_contract},
        {"braid geometry", 5.0, braid_geometry},
        {"smoothing energy descent", 0.0, smoothing_descent},
        {"rig and rendering", 0.0, [&] { return rig_and_rendering(work); }},
        {"end-to-end pipeline", 120.0, [&] { return end_to_end(work, pipeline_seconds); }},
        {"fidelity metrics", 0.0, fidelity_terms},
    };
    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criteria[i].budget > 0.0 && seconds >= criteria[i].budget) {
            o.pass = false;
            o.detail += fmt("; over the %.0f s budget", criteria[i].budget);
        }
        passed += o.pass ? 1 : 0;
        std::printf("%s %2zu %-26s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, seconds,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
