#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hairweave/common.hpp"

namespace hairweave {

struct Pixel {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
    friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

// Binary raster, row-major, origin at the top-left pixel.
class BinaryImage {
public:
    BinaryImage(int width, int height) : width_(width), height_(height) {
        if (width <= 0 || height <= 0) throw DataError("image dimensions must be positive");
        pixels_.assign(static_cast<std::size_t>(width) * height, 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool get(int x, int y) const { return pixels_[index(x, y)] != 0; }
    void set(int x, int y, bool value = true) { pixels_[index(x, y)] = value ? 1 : 0; }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint8_t p : pixels_) n += p;
        return n;
    }

    std::span<const std::uint8_t> pixels() const { return pixels_; }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

// Disk-shaped morphology; pixels outside the image count as background for
// dilation and as foreground for erosion, so closing never removes pixels.
BinaryImage dilate(const BinaryImage& image, int radius);
BinaryImage erode(const BinaryImage& image, int radius);
BinaryImage close(const BinaryImage& image, int radius);

}  // namespace hairweave
