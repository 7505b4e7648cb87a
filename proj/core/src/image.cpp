#include "motorlint/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include "motorlint/errors.hpp"

namespace motorlint {

Image::Image(int w, int h, Color fill) : width(w), height(h) {
    pixels.resize(static_cast<size_t>(w) * h * 3);
    for (size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = fill.r;
        pixels[i + 1] = fill.g;
        pixels[i + 2] = fill.b;
    }
}

GrayImage to_gray(const Image& img) {
    GrayImage g(img.width, img.height);
    const std::uint8_t* p = img.pixels.data();
    for (size_t i = 0; i < g.pixels.size(); ++i, p += 3) {
        g.pixels[i] = static_cast<float>(luma_fixed(p[0], p[1], p[2])) / 255000.f;
    }
    return g;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Image load_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode PNG: " + path.string());
    }

    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    // Read everything as RGBA, flatten below.
    png_set_filler(png, 0xFF, PNG_FILLER_AFTER);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    std::vector<std::uint8_t> rgba(static_cast<size_t>(w) * h * 4);
    std::vector<png_bytep> rows(static_cast<size_t>(h));
    for (int y = 0; y < h; ++y) rows[static_cast<size_t>(y)] = rgba.data() + static_cast<size_t>(y) * w * 4;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<size_t>(w) * h * 3);
    const std::uint8_t* src = rgba.data();
    std::uint8_t* dst = img.pixels.data();
    for (size_t i = 0; i < static_cast<size_t>(w) * h; ++i, src += 4, dst += 3) {
        const int a = src[3];
        if (a == 255) {
            dst[0] = src[0];
            dst[1] = src[1];
            dst[2] = src[2];
        } else {
            // flatten over white, rounded
            dst[0] = static_cast<std::uint8_t>((src[0] * a + 255 * (255 - a) + 127) / 255);
            dst[1] = static_cast<std::uint8_t>((src[1] * a + 255 * (255 - a) + 127) / 255);
            dst[2] = static_cast<std::uint8_t>((src[2] * a + 255 * (255 - a) + 127) / 255);
        }
    }
    return img;
}

namespace {

void write_png_impl(const Image& img, png_structp png, png_infop info) {
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(img.at(0, y)));
    }
    png_write_end(png, nullptr);
}

}  // namespace

void save_png(const Image& img, const std::filesystem::path& path) {
    if (img.width <= 0 || img.height <= 0) throw IoError("refusing to write empty image");
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode PNG: " + path.string());
    }
    png_init_io(png, fp.get());
    write_png_impl(img, png, info);
    png_destroy_write_struct(&png, &info);
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    if (img.width <= 0 || img.height <= 0) throw IoError("refusing to encode empty image");
    std::vector<std::uint8_t> out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode PNG in memory");
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t len) {
            auto* buf = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
            buf->insert(buf->end(), data, data + len);
        },
        nullptr);
    write_png_impl(img, png, info);
    png_destroy_write_struct(&png, &info);
    return out;
}

Image resize_nearest(const Image& src, int w, int h) {
    if (w <= 0 || h <= 0 || src.width <= 0 || src.height <= 0)
        throw InvalidParams("resize_nearest to/from empty raster");
    Image dst(w, h);
    for (int y = 0; y < h; ++y) {
        const int sy = static_cast<int>(static_cast<std::int64_t>(y) * src.height / h);
        for (int x = 0; x < w; ++x) {
            const int sx = static_cast<int>(static_cast<std::int64_t>(x) * src.width / w);
            std::memcpy(dst.at(x, y), src.at(sx, sy), 3);
        }
    }
    return dst;
}

GrayImage resize_bilinear(const GrayImage& src, int w, int h) {
    if (w <= 0 || h <= 0 || src.width <= 0 || src.height <= 0)
        throw InvalidParams("resize_bilinear to/from empty raster");
    GrayImage dst(w, h);
    const double sx_step = static_cast<double>(src.width) / w;
    const double sy_step = static_cast<double>(src.height) / h;
    for (int y = 0; y < h; ++y) {
        double fy = (y + 0.5) * sy_step - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(src.height - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, src.height - 1);
        const float wy = static_cast<float>(fy - y0);
        for (int x = 0; x < w; ++x) {
            double fx = (x + 0.5) * sx_step - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(src.width - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, src.width - 1);
            const float wx = static_cast<float>(fx - x0);
            const float top = src.at(x0, y0) * (1.f - wx) + src.at(x1, y0) * wx;
            const float bot = src.at(x0, y1) * (1.f - wx) + src.at(x1, y1) * wx;
            dst.at(x, y) = top * (1.f - wy) + bot * wy;
        }
    }
    return dst;
}

GrayImage resize_area(const GrayImage& src, int w, int h) {
    if (w <= 0 || h <= 0 || src.width <= 0 || src.height <= 0)
        throw InvalidParams("resize_area to/from empty raster");
    GrayImage dst(w, h);
    const double sx = static_cast<double>(src.width) / w;
    const double sy = static_cast<double>(src.height) / h;
    for (int y = 0; y < h; ++y) {
        const double fy0 = y * sy;
        const double fy1 = (y + 1) * sy;
        const int iy0 = static_cast<int>(fy0);
        const int iy1 = std::min(src.height - 1, static_cast<int>(std::ceil(fy1)) - 1);
        for (int x = 0; x < w; ++x) {
            const double fx0 = x * sx;
            const double fx1 = (x + 1) * sx;
            const int ix0 = static_cast<int>(fx0);
            const int ix1 = std::min(src.width - 1, static_cast<int>(std::ceil(fx1)) - 1);
            double acc = 0.0;
            double weight = 0.0;
            for (int j = iy0; j <= iy1; ++j) {
                const double wy = std::min<double>(fy1, j + 1) - std::max<double>(fy0, j);
                for (int i = ix0; i <= ix1; ++i) {
                    const double wx = std::min<double>(fx1, i + 1) - std::max<double>(fx0, i);
                    acc += wx * wy * src.at(i, j);
                    weight += wx * wy;
                }
            }
            dst.at(x, y) = static_cast<float>(acc / weight);
        }
    }
    return dst;
}

GrayImage resize_gray(const GrayImage& src, int w, int h) {
    if (w < src.width || h < src.height) return resize_area(src, w, h);
    if (w == src.width && h == src.height) return src;
    return resize_bilinear(src, w, h);
}

GrayImage downscale2(const GrayImage& src) {
    const int w = std::max(1, src.width / 2);
    const int h = std::max(1, src.height / 2);
    GrayImage dst(w, h);
    for (int y = 0; y < h; ++y) {
        const int y0 = 2 * y;
        const int y1 = std::min(2 * y + 1, src.height - 1);
        for (int x = 0; x < w; ++x) {
            const int x0 = 2 * x;
            const int x1 = std::min(2 * x + 1, src.width - 1);
            dst.at(x, y) =
                0.25f * (src.at(x0, y0) + src.at(x1, y0) + src.at(x0, y1) + src.at(x1, y1));
        }
    }
    return dst;
}

void fill_rect(Image& img, const Rect& r, Color c) {
    const Rect box = intersect(r, img.rect());
    for (int y = box.top; y < box.bottom; ++y)
        for (int x = box.left; x < box.right; ++x) img.set(x, y, c);
}

void fill_disc(Image& img, double cx, double cy, double radius, Color c) {
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius)));
    const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(cx + radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius)));
    const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(cy + radius)));
    const double r2 = radius * radius;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const double dx = x + 0.5 - cx;
            const double dy = y + 0.5 - cy;
            if (dx * dx + dy * dy <= r2) img.set(x, y, c);
        }
}

void draw_ring(Image& img, double cx, double cy, double radius, double thickness, Color c) {
    const double outer = radius + thickness * 0.5;
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - outer)));
    const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(cx + outer)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - outer)));
    const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(cy + outer)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const double dx = x + 0.5 - cx;
            const double dy = y + 0.5 - cy;
            const double d = std::sqrt(dx * dx + dy * dy);
            if (std::abs(d - radius) <= thickness * 0.5) img.set(x, y, c);
        }
}

void draw_stroke(Image& img, double x0, double y0, double x1, double y1, double width, Color c) {
    const double half = width * 0.5;
    const int bx0 = std::max(0, static_cast<int>(std::floor(std::min(x0, x1) - half)));
    const int bx1 = std::min(img.width - 1, static_cast<int>(std::ceil(std::max(x0, x1) + half)));
    const int by0 = std::max(0, static_cast<int>(std::floor(std::min(y0, y1) - half)));
    const int by1 = std::min(img.height - 1, static_cast<int>(std::ceil(std::max(y0, y1) + half)));
    const double vx = x1 - x0;
    const double vy = y1 - y0;
    const double len2 = vx * vx + vy * vy;
    for (int y = by0; y <= by1; ++y)
        for (int x = bx0; x <= bx1; ++x) {
            const double px = x + 0.5 - x0;
            const double py = y + 0.5 - y0;
            double t = len2 > 0 ? (px * vx + py * vy) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const double dx = px - t * vx;
            const double dy = py - t * vy;
            if (dx * dx + dy * dy <= half * half) img.set(x, y, c);
        }
}

}  // namespace motorlint
