#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "motorlint/geometry.hpp"

namespace motorlint {

struct Color {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    bool operator==(const Color&) const = default;
};

// Row-major RGB8 raster. Screenshots with an alpha channel are flattened
// over white at load time.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 bytes per pixel

    Image() = default;
    Image(int w, int h, Color fill = {255, 255, 255});

    std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<size_t>(y) * width + x); }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + 3 * (static_cast<size_t>(y) * width + x);
    }
    Color color_at(int x, int y) const {
        const std::uint8_t* p = at(x, y);
        return Color{p[0], p[1], p[2]};
    }
    void set(int x, int y, Color c) {
        std::uint8_t* p = at(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }
    Rect rect() const { return Rect{0, 0, width, height}; }
    bool operator==(const Image&) const = default;
};

// Grayscale float raster used by the matching pipeline; values in [0,1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<float> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, float fill = 0.f)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

    float at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    float& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
};

// Integer-exact Rec.601 luma in [0, 255000]: 299*r + 587*g + 114*b.
// Dividing by 255000 gives the [0,1] gray value without rounding surprises
// at the extremes (pure black -> 0, pure white -> 1 exactly).
inline std::int32_t luma_fixed(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return 299 * r + 587 * g + 114 * b;
}

GrayImage to_gray(const Image& img);

Image load_png(const std::filesystem::path& path);
void save_png(const Image& img, const std::filesystem::path& path);

// In-memory PNG encode, used for byte-determinism checks.
std::vector<std::uint8_t> encode_png(const Image& img);

// Nearest-neighbour resize: source index = floor(dst_index * src_dim / dst_dim).
Image resize_nearest(const Image& src, int w, int h);
// Bilinear resize (used when scaling icon templates).
GrayImage resize_bilinear(const GrayImage& src, int w, int h);
// Box-integration resize; the right filter when shrinking.
GrayImage resize_area(const GrayImage& src, int w, int h);
// Area when shrinking, bilinear when growing.
GrayImage resize_gray(const GrayImage& src, int w, int h);
// Area-average downscale by an exact factor of 2 (matching pyramid levels).
GrayImage downscale2(const GrayImage& src);

// --- drawing primitives (icon rendering, synthetic data, fixtures) ---

void fill_rect(Image& img, const Rect& r, Color c);
void fill_disc(Image& img, double cx, double cy, double radius, Color c);
void draw_ring(Image& img, double cx, double cy, double radius, double thickness, Color c);
// Solid stroke from (x0,y0) to (x1,y1) with round caps.
void draw_stroke(Image& img, double x0, double y0, double x1, double y1, double width, Color c);

}  // namespace motorlint
