#include "hairweave/view_rig.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace hairweave {

namespace {

constexpr double kNearPlane = 1e-6;

double radians(double deg) { return deg * kPi / 180.0; }

// Liang-Barsky clip of segment a-b to the box; false when fully outside.
bool clip_segment(Vec2& a, Vec2& b, const Vec2& lo, const Vec2& hi) {
    double t0 = 0.0;
    double t1 = 1.0;
    const Vec2 d = b - a;
    for (int axis = 0; axis < 2; ++axis) {
        const double p[2] = {-d[axis], d[axis]};
        const double q[2] = {a[axis] - lo[axis], hi[axis] - a[axis]};
        for (int k = 0; k < 2; ++k) {
            if (p[k] == 0.0) {
                if (q[k] < 0.0) return false;
                continue;
            }
            const double r = q[k] / p[k];
            if (p[k] < 0.0) {
                t0 = std::max(t0, r);
            } else {
                t1 = std::min(t1, r);
            }
        }
    }
    if (t0 > t1) return false;
    const Vec2 start = a + t0 * d;
    b = a + t1 * d;
    a = start;
    return true;
}

void stamp(BinaryImage& image, const Pixel& p, int radius) {
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > radius * radius) continue;
            if (image.contains(p.x + dx, p.y + dy)) image.set(p.x + dx, p.y + dy);
        }
    }
}

Pixel to_pixel(const Vec2& p) {
    return {static_cast<int>(std::floor(p.x())), static_cast<int>(std::floor(p.y()))};
}

}  // namespace

Vec3 CameraView::position() const {
    const double yaw = radians(yaw_deg);
    const double pitch = radians(pitch_deg);
    return distance * Vec3(std::sin(yaw) * std::cos(pitch), std::sin(pitch), std::cos(yaw) * std::cos(pitch));
}

Vec3 CameraView::forward() const { return -position().normalized(); }

Vec3 CameraView::right() const { return forward().cross(Vec3::UnitY()).normalized(); }

Vec3 CameraView::up() const { return right().cross(forward()); }

std::vector<CameraView> build_rig(int width, int height, double distance) {
    if (width <= 0 || height <= 0) throw DataError("rig image dimensions must be positive");
    if (!(distance > 0.0)) throw DataError("rig camera distance must be positive");
    std::vector<CameraView> rig;
    rig.reserve(72);
    for (double yaw : kRigYaws) {
        for (double pitch : kRigPitches) {
            for (double focal : kRigFocals) rig.push_back({yaw, pitch, focal, distance, width, height});
        }
    }
    return rig;
}

ProjectedPoint project_point(const Vec3& p, const CameraView& view) {
    const Vec3 rel = p - view.position();
    ProjectedPoint out;
    out.depth = rel.dot(view.forward());
    out.visible = out.depth > kNearPlane;
    if (!out.visible) return out;
    const double f = view.focal_px();
    out.pixel = Vec2(0.5 * view.width + f * rel.dot(view.right()) / out.depth,
                     0.5 * view.height - f * rel.dot(view.up()) / out.depth);
    return out;
}

std::vector<ProjectedPoint> project_strand(const Strand& strand, const CameraView& view) {
    std::vector<ProjectedPoint> out;
    out.reserve(strand.size());
    for (const Vec3& p : strand.points()) out.push_back(project_point(p, view));
    return out;
}

std::vector<Pixel> line_pixels(Pixel a, Pixel b) {
    if (b < a) std::swap(a, b);
    const int dx = b.x - a.x;  // >= 0 after ordering
    const int dy = b.y - a.y;
    const int ady = std::abs(dy);
    const int sy = dy < 0 ? -1 : 1;
    std::vector<Pixel> out;
    if (dx >= ady) {
        out.reserve(static_cast<std::size_t>(dx) + 1);
        long long residual = dx;  // (2 i |dy| + dx) mod 2dx
        int minor = 0;
        for (int i = 0; i <= dx; ++i) {
            out.push_back({a.x + i, a.y + sy * minor});
            residual += 2LL * ady;
            if (dx > 0 && residual >= 2LL * dx) {
                residual -= 2LL * dx;
                ++minor;
            }
        }
    } else {
        out.reserve(static_cast<std::size_t>(ady) + 1);
        long long residual = ady;
        int minor = 0;
        for (int i = 0; i <= ady; ++i) {
            out.push_back({a.x + minor, a.y + sy * i});
            residual += 2LL * dx;
            if (residual >= 2LL * ady) {
                residual -= 2LL * ady;
                ++minor;
            }
        }
    }
    return out;
}

namespace {

template <typename Visit>
void walk_strand(const Strand& strand, const CameraView& view, Visit&& visit) {
    const Vec2 lo(-static_cast<double>(view.width), -static_cast<double>(view.height));
    const Vec2 hi(2.0 * view.width, 2.0 * view.height);
    const auto projected = project_strand(strand, view);
    for (std::size_t j = 0; j + 1 < projected.size(); ++j) {
        if (!projected[j].visible || !projected[j + 1].visible) continue;
        Vec2 a = projected[j].pixel;
        Vec2 b = projected[j + 1].pixel;
        const bool inside = a.cwiseMax(b).x() < hi.x() && a.cwiseMax(b).y() < hi.y() &&
                            a.cwiseMin(b).x() > lo.x() && a.cwiseMin(b).y() > lo.y();
        if (!inside && !clip_segment(a, b, lo, hi)) continue;
        for (const Pixel& p : line_pixels(to_pixel(a), to_pixel(b))) visit(p);
    }
}

}  // namespace

std::vector<Pixel> strand_footprint(const Strand& strand, const CameraView& view) {
    std::vector<Pixel> out;
    walk_strand(strand, view, [&](const Pixel& p) {
        if (p.x >= 0 && p.y >= 0 && p.x < view.width && p.y < view.height) out.push_back(p);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BinaryImage rasterize_lineart(std::span<const Strand> strands, const CameraView& view, int line_width, int stride) {
    if (stride < 1) throw DataError("lineart stride must be at least 1");
    if (line_width < 1) throw DataError("line width must be at least 1");
    BinaryImage image(view.width, view.height);
    const int radius = (line_width - 1) / 2;
    for (std::size_t s = 0; s < strands.size(); s += static_cast<std::size_t>(stride)) {
        walk_strand(strands[s], view, [&](const Pixel& p) { stamp(image, p, radius); });
    }
    return image;
}

BinaryImage hair_mask(std::span<const Strand> strands, const CameraView& view, int line_width) {
    return close(rasterize_lineart(strands, view, line_width), line_width);
}

}  // namespace hairweave
