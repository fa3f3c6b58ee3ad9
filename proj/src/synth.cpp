#include "hairweave/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hairweave/rng.hpp"

namespace hairweave {

namespace {

constexpr double kCapAngle = 80.0 * kPi / 180.0;

Vec3 sphere_point(double radius, double theta, double phi) {
    return radius * Vec3(std::sin(theta) * std::sin(phi), std::cos(theta), std::sin(theta) * std::cos(phi));
}

}  // namespace

std::shared_ptr<const ScalpSurface> make_hemisphere_scalp(double radius, int rings, int segments) {
    if (!(radius > 0.0) || rings < 1 || segments < 3) throw DataError("invalid scalp tessellation");
    std::vector<Vec3> vertices{Vec3(0.0, radius, 0.0)};
    std::vector<Vec2> uvs{Vec2(0.5, 0.5)};
    for (int r = 1; r <= rings; ++r) {
        const double theta = kCapAngle * r / rings;
        const double rho = 0.5 * r / rings;
        for (int s = 0; s < segments; ++s) {
            const double phi = 2.0 * kPi * s / segments;
            vertices.push_back(sphere_point(radius, theta, phi));
            uvs.emplace_back(0.5 + rho * std::sin(phi), 0.5 + rho * std::cos(phi));
        }
    }
    const auto ring_vertex = [&](int r, int s) { return 1 + (r - 1) * segments + (s % segments); };
    std::vector<std::array<int, 3>> faces;
    for (int s = 0; s < segments; ++s) faces.push_back({0, ring_vertex(1, s), ring_vertex(1, s + 1)});
    for (int r = 1; r < rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            const int a = ring_vertex(r, s);
            const int b = ring_vertex(r, s + 1);
            const int c = ring_vertex(r + 1, s);
            const int d = ring_vertex(r + 1, s + 1);
            faces.push_back({a, c, d});
            faces.push_back({a, d, b});
        }
    }
    return std::make_shared<const ScalpSurface>(std::move(vertices), std::move(faces), std::move(uvs));
}

std::shared_ptr<const ScalpSurface> builtin_scalp() {
    static const std::shared_ptr<const ScalpSurface> scalp = make_hemisphere_scalp();
    return scalp;
}

StyleKind parse_style(std::string_view name) {
    if (name == "straight") return StyleKind::Straight;
    if (name == "wavy") return StyleKind::Wavy;
    if (name == "curly") return StyleKind::Curly;
    throw UsageError("unknown style '" + std::string(name) + "' (expected straight, wavy or curly)");
}

std::string_view style_name(StyleKind kind) {
    switch (kind) {
        case StyleKind::Straight: return "straight";
        case StyleKind::Wavy: return "wavy";
        case StyleKind::Curly: return "curly";
    }
    return "straight";
}

Hairstyle synth_hairstyle(StyleKind kind, std::size_t strand_count, std::uint64_t seed, std::size_t points,
                          std::shared_ptr<const ScalpSurface> scalp) {
    if (strand_count < 1) throw DataError("strand count must be at least 1");
    if (points < 3) throw DataError("strands need at least 3 points");
    const double radius = scalp->vertices().front().norm();
    Rng rng(seed);
    std::vector<Strand> strands;
    strands.reserve(strand_count);
    for (std::size_t i = 0; i < strand_count; ++i) {
        const double cos_theta = rng.uniform(std::cos(kCapAngle), 1.0);
        const double theta = std::acos(cos_theta);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double length = rng.uniform(0.20, 0.30);
        const double phase = rng.uniform(0.0, 2.0 * kPi);
        const double amplitude_scale = rng.uniform(0.8, 1.2);

        const SurfacePoint anchor = scalp->closest_point(sphere_point(radius, theta, phi));
        const Vec3 normal = anchor.position.normalized();
        Vec3 outward(normal.x(), 0.0, normal.z());
        if (outward.norm() < 1e-9) outward = Vec3::UnitZ();
        outward.normalize();
        const Vec3 around = Vec3::UnitY().cross(outward).normalized();

        const double step = length / static_cast<double>(points - 1);
        std::vector<Vec3> base(points);
        std::vector<Vec3> tangent(points);
        base[0] = anchor.position;
        for (std::size_t j = 0; j < points; ++j) {
            const double s = step * static_cast<double>(j);
            const double fall = 1.0 - std::exp(-s / 0.04);
            Vec3 dir = (1.0 - fall) * normal + fall * (-Vec3::UnitY()) + 0.35 * fall * outward;
            dir.normalize();
            tangent[j] = dir;
            if (j + 1 < points) base[j + 1] = base[j] + step * dir;
        }

        std::vector<Vec3> pts(points);
        for (std::size_t j = 0; j < points; ++j) {
            const double s = step * static_cast<double>(j);
            const double ramp = std::min(1.0, s / 0.02);
            Vec3 side = around - around.dot(tangent[j]) * tangent[j];
            side.normalize();
            const Vec3 binormal = tangent[j].cross(side);
            Vec3 offset = Vec3::Zero();
            switch (kind) {
                case StyleKind::Straight:
                    break;
                case StyleKind::Wavy:
                    offset = 0.008 * amplitude_scale * ramp * std::sin(2.0 * kPi * s / 0.05 + phase) * side;
                    break;
                case StyleKind::Curly: {
                    const double angle = 2.0 * kPi * s / 0.025 + phase;
                    offset = 0.010 * amplitude_scale * ramp * (std::cos(angle) * side + std::sin(angle) * binormal);
                    break;
                }
            }
            pts[j] = base[j] + offset;
        }
        strands.emplace_back(std::move(pts));
    }
    return Hairstyle(std::move(strands), std::move(scalp));
}

}  // namespace hairweave
