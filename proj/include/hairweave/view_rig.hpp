#pragma once

#include <span>
#include <vector>

#include "hairweave/common.hpp"
#include "hairweave/image.hpp"
#include "hairweave/strand.hpp"

namespace hairweave {

inline constexpr double kSensorWidthMm = 36.0;
inline constexpr double kDefaultCameraDistance = 1.2;

// Pinhole camera orbiting the head center (origin, +y up). Yaw 0 looks down -z
// from +z; positive pitch raises the camera.
struct CameraView {
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    double focal_mm = 50.0;
    double distance = kDefaultCameraDistance;
    int width = 512;
    int height = 512;

    Vec3 position() const;
    Vec3 forward() const;
    Vec3 right() const;
    Vec3 up() const;
    // Focal length in pixels under the 36 mm sensor-width convention.
    double focal_px() const { return focal_mm / kSensorWidthMm * width; }
};

inline constexpr double kRigYaws[] = {0, 45, 90, 135, 180, 225, 270, 315};
inline constexpr double kRigPitches[] = {-15, 0, 15};
inline constexpr double kRigFocals[] = {35, 50, 85};

// 8 yaws x 3 pitches x 3 focal lengths, yaw-major then pitch then focal.
std::vector<CameraView> build_rig(int width, int height, double distance = kDefaultCameraDistance);

struct ProjectedPoint {
    Vec2 pixel = Vec2::Zero();  // continuous pixel coordinates; pixel (i, j) spans [i, i+1) x [j, j+1)
    double depth = 0.0;
    bool visible = false;
};

ProjectedPoint project_point(const Vec3& p, const CameraView& view);
std::vector<ProjectedPoint> project_strand(const Strand& strand, const CameraView& view);

// Integer line walk between two pixels (Bresenham, ties rounded up along the minor
// axis). The segment is always walked from the lexicographically smaller endpoint,
// so the pixel set does not depend on direction.
std::vector<Pixel> line_pixels(Pixel a, Pixel b);

// Sorted in-image pixels of the strand drawn at 1-pixel width.
std::vector<Pixel> strand_footprint(const Strand& strand, const CameraView& view);

// Draws every visible segment of every `stride`-th strand at `line_width` pixels.
BinaryImage rasterize_lineart(std::span<const Strand> strands, const CameraView& view, int line_width = 1,
                              int stride = 1);

// Lineart closed with a disk of radius `line_width`.
BinaryImage hair_mask(std::span<const Strand> strands, const CameraView& view, int line_width = 1);

}  // namespace hairweave
