#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hairweave/common.hpp"

namespace hairweave {

// An ordered 3D polyline in meters. points()[0] is the root.
class Strand {
public:
    explicit Strand(std::vector<Vec3> points);

    std::span<const Vec3> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Vec3& operator[](std::size_t i) const { return points_[i]; }
    const Vec3& root() const { return points_.front(); }
    const Vec3& tip() const { return points_.back(); }

    double arc_length() const;

    // Applies p -> rotation * p + translation to every point.
    Strand transformed(const Eigen::Matrix3d& rotation, const Vec3& translation) const;
    Strand translated(const Vec3& offset) const;

    friend bool operator==(const Strand& a, const Strand& b) { return a.points_ == b.points_; }

private:
    std::vector<Vec3> points_;
};

struct SurfacePoint {
    Vec3 position = Vec3::Zero();
    Vec2 uv = Vec2::Zero();
    double distance = 0.0;
    int face = -1;
};

// Triangle mesh over the scalp with per-vertex UVs in [0,1]^2.
class ScalpSurface {
public:
    ScalpSurface(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces,
                 std::vector<Vec2> uvs);

    std::span<const Vec3> vertices() const { return vertices_; }
    std::span<const std::array<int, 3>> faces() const { return faces_; }
    std::span<const Vec2> uvs() const { return uvs_; }

    // Nearest point on the mesh, with its barycentric-interpolated UV.
    SurfacePoint closest_point(const Vec3& p) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<Vec2> uvs_;
    std::vector<Vec3> face_centers_;
    std::vector<double> face_radii_;
};

enum class UpAxis { PositiveY, PositiveZ };

// A non-empty set of equal-length strands whose roots sit on a scalp surface.
class Hairstyle {
public:
    Hairstyle(std::vector<Strand> strands, std::shared_ptr<const ScalpSurface> scalp,
              double root_tolerance = kDefaultRootTolerance, UpAxis up = UpAxis::PositiveY);

    std::span<const Strand> strands() const { return strands_; }
    const Strand& strand(std::size_t i) const { return strands_[i]; }
    std::size_t size() const { return strands_.size(); }
    std::size_t strand_length() const { return strands_.front().size(); }

    const ScalpSurface& scalp() const { return *scalp_; }
    const std::shared_ptr<const ScalpSurface>& scalp_ptr() const { return scalp_; }
    UpAxis up_axis() const { return up_; }
    double root_tolerance() const { return root_tolerance_; }

    // Projection of each root onto the scalp, computed once at construction.
    const SurfacePoint& root_projection(std::size_t i) const { return roots_[i]; }
    const Vec2& root_uv(std::size_t i) const { return roots_[i].uv; }

private:
    std::vector<Strand> strands_;
    std::shared_ptr<const ScalpSurface> scalp_;
    std::vector<SurfacePoint> roots_;
    double root_tolerance_;
    UpAxis up_;
};

struct FrenetFrame {
    Vec3 position;
    Vec3 tangent;
    Vec3 normal;
    Vec3 binormal;
};

// Uniform arc-length resampling to `count` points. Endpoints are preserved exactly.
Strand resample(const Strand& strand, std::size_t count);

// d_j = p_{j+1} - p_j, length L-1.
std::vector<Vec3> directions(const Strand& strand);

// g_j = |d_j x d_{j+1}|, length L-2. This is the cross-product magnitude of
// consecutive edges, not curvature per unit length.
std::vector<double> curvature_proxy(const Strand& strand);

// Discrete Frenet frames. Where consecutive edges are nearly parallel
// (|d_{j-1} x d_j| < 1e-8 * e^2) the previous frame is parallel transported.
std::vector<FrenetFrame> frenet_frames(const Strand& strand);

// Jacobi Laplacian smoothing with pinned endpoints.
Strand laplacian_smooth(const Strand& strand, double lambda, int iterations);

// Sum of squared second differences over interior points.
double laplacian_energy(const Strand& strand);

}  // namespace hairweave
