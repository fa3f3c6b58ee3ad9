#include "hairweave/image.hpp"

#include <vector>

namespace hairweave {

namespace {

std::vector<Pixel> disk_offsets(int radius) {
    std::vector<Pixel> offsets;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy <= radius * radius) offsets.push_back({dx, dy});
        }
    }
    return offsets;
}

}  // namespace

BinaryImage dilate(const BinaryImage& image, int radius) {
    if (radius <= 0) return image;
    const auto offsets = disk_offsets(radius);
    BinaryImage out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            if (!image.get(x, y)) continue;
            for (const Pixel& o : offsets) {
                if (out.contains(x + o.x, y + o.y)) out.set(x + o.x, y + o.y);
            }
        }
    }
    return out;
}

BinaryImage erode(const BinaryImage& image, int radius) {
    if (radius <= 0) return image;
    const auto offsets = disk_offsets(radius);
    BinaryImage out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            bool keep = true;
            for (const Pixel& o : offsets) {
                const int sx = x + o.x;
                const int sy = y + o.y;
                if (image.contains(sx, sy) && !image.get(sx, sy)) {
                    keep = false;
                    break;
                }
            }
            if (keep) out.set(x, y);
        }
    }
    return out;
}

BinaryImage close(const BinaryImage& image, int radius) { return erode(dilate(image, radius), radius); }

}  // namespace hairweave
