#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "hairweave/rng.hpp"
#include "hairweave/strand.hpp"

namespace testing {

using hairweave::Strand;
using hairweave::Vec3;

inline Strand random_walk_strand(hairweave::Rng& rng, std::size_t points, double step = 0.01) {
    std::vector<Vec3> pts(points);
    pts[0] = Vec3(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1));
    for (std::size_t j = 1; j < points; ++j) {
        pts[j] = pts[j - 1] + step * Vec3(rng.normal(), rng.normal(), rng.normal());
    }
    return Strand(std::move(pts));
}

inline std::vector<Vec3> random_points(hairweave::Rng& rng, std::size_t n, double extent = 1.0) {
    std::vector<Vec3> out(n);
    for (Vec3& p : out) p = Vec3(rng.uniform(-extent, extent), rng.uniform(-extent, extent), rng.uniform(-extent, extent));
    return out;
}

inline Eigen::Matrix3d random_rotation(hairweave::Rng& rng) {
    const Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    return q.normalized().toRotationMatrix();
}

// Straight strand from `start` along `dir` with `points` samples of spacing `step`.
inline Strand line_strand(const Vec3& start, const Vec3& dir, std::size_t points, double step) {
    std::vector<Vec3> pts(points);
    for (std::size_t j = 0; j < points; ++j) pts[j] = start + step * static_cast<double>(j) * dir;
    return Strand(std::move(pts));
}

inline double brute_force_chamfer(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    const auto one_sided = [](const std::vector<Vec3>& from, const std::vector<Vec3>& to) {
        double sum = 0.0;
        for (const Vec3& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec3& q : to) best = std::min(best, (p - q).norm());
            sum += best;
        }
        return sum / static_cast<double>(from.size());
    };
    return 0.5 * (one_sided(a, b) + one_sided(b, a));
}

// Voxel IoU by set arithmetic with the origin at the union minimum.
inline double brute_force_iou(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double size) {
    Vec3 origin = a.front();
    for (const Vec3& p : a) origin = origin.cwiseMin(p);
    for (const Vec3& p : b) origin = origin.cwiseMin(p);
    const auto cells = [&](const std::vector<Vec3>& pts) {
        std::set<std::array<long long, 3>> out;
        for (const Vec3& p : pts) {
            out.insert({static_cast<long long>(std::floor((p.x() - origin.x()) / size)),
                        static_cast<long long>(std::floor((p.y() - origin.y()) / size)),
                        static_cast<long long>(std::floor((p.z() - origin.z()) / size))});
        }
        return out;
    };
    const auto ca = cells(a);
    const auto cb = cells(b);
    std::size_t common = 0;
    for (const auto& c : ca) common += cb.count(c);
    return static_cast<double>(common) / static_cast<double>(ca.size() + cb.size() - common);
}

// Unique scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("hairweave_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
