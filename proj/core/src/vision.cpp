#include "motorlint/vision.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <map>
#include <vector>

#include "motorlint/errors.hpp"

namespace motorlint {

Crop crop(const Image& image, const Rect& r) {
    const Rect box = intersect(r, image.rect());
    if (box.area() == 0) throw EmptyCrop("rect " + to_string(r) + " has no area on the image");
    Crop c;
    c.origin = box;
    c.pixels = Image(box.width(), box.height());
    for (int y = 0; y < box.height(); ++y) {
        std::memcpy(c.pixels.at(0, y), image.at(box.left, box.top + y),
                    static_cast<size_t>(box.width()) * 3);
    }
    return c;
}

namespace {

// Mean colour of the border-ring pixels falling in the modal quantized
// bucket. Ties pick the lexicographically smallest bucket.
Color estimate_background(const Image& img) {
    struct Bucket {
        int count = 0;
        long sum_r = 0, sum_g = 0, sum_b = 0;
    };
    std::map<std::array<int, 3>, Bucket> buckets;
    auto visit = [&](int x, int y) {
        const Color c = img.color_at(x, y);
        auto& b = buckets[{c.r >> 4, c.g >> 4, c.b >> 4}];
        ++b.count;
        b.sum_r += c.r;
        b.sum_g += c.g;
        b.sum_b += c.b;
    };
    for (int x = 0; x < img.width; ++x) {
        visit(x, 0);
        if (img.height > 1) visit(x, img.height - 1);
    }
    for (int y = 1; y + 1 < img.height; ++y) {
        visit(0, y);
        if (img.width > 1) visit(img.width - 1, y);
    }
    const Bucket* best = nullptr;
    for (const auto& [key, b] : buckets) {
        if (!best || b.count > best->count) best = &b;
    }
    return Color{static_cast<std::uint8_t>(best->sum_r / best->count),
                 static_cast<std::uint8_t>(best->sum_g / best->count),
                 static_cast<std::uint8_t>(best->sum_b / best->count)};
}

}  // namespace

std::optional<Rect> visual_bounds(const Crop& c, const VisualBoundsParams& params) {
    if (c.empty()) throw EmptyCrop("visual_bounds on empty crop");
    const Image& img = c.pixels;
    const Color bg = estimate_background(img);

    const int w = img.width;
    const int h = img.height;
    std::vector<std::uint8_t> fg(static_cast<size_t>(w) * h, 0);
    const std::uint8_t* p = img.pixels.data();
    for (size_t i = 0; i < fg.size(); ++i, p += 3) {
        const int dev = std::max({std::abs(p[0] - bg.r), std::abs(p[1] - bg.g),
                                  std::abs(p[2] - bg.b)});
        fg[i] = dev > params.tolerance ? 1 : 0;
    }

    // 4-connected flood fill; union the boxes of components that are big enough.
    std::optional<Rect> box;
    std::vector<int> stack;
    for (int start = 0; start < w * h; ++start) {
        if (fg[static_cast<size_t>(start)] != 1) continue;
        stack.push_back(start);
        fg[static_cast<size_t>(start)] = 2;
        int minx = w, miny = h, maxx = -1, maxy = -1;
        int area = 0;
        while (!stack.empty()) {
            const int idx = stack.back();
            stack.pop_back();
            const int x = idx % w;
            const int y = idx / w;
            ++area;
            minx = std::min(minx, x);
            maxx = std::max(maxx, x);
            miny = std::min(miny, y);
            maxy = std::max(maxy, y);
            const int neighbours[4] = {x > 0 ? idx - 1 : -1, x + 1 < w ? idx + 1 : -1,
                                       y > 0 ? idx - w : -1, y + 1 < h ? idx + w : -1};
            for (int n : neighbours) {
                if (n >= 0 && fg[static_cast<size_t>(n)] == 1) {
                    fg[static_cast<size_t>(n)] = 2;
                    stack.push_back(n);
                }
            }
        }
        if (area >= params.min_component_area) {
            const Rect r{c.origin.left + minx, c.origin.top + miny, c.origin.left + maxx + 1,
                         c.origin.top + maxy + 1};
            box = box ? union_rect(*box, r) : r;
        }
    }
    return box;
}

double similarity(const Crop& a, const Crop& b) {
    if (a.empty() || b.empty()) throw EmptyCrop("similarity of empty crop");
    const Image& ref = a.pixels;
    const Image resized =
        (b.pixels.width == ref.width && b.pixels.height == ref.height)
            ? b.pixels
            : resize_nearest(b.pixels, ref.width, ref.height);

    // MSE on [0,1] luma. Sums are accumulated exactly enough that boundary
    // fixtures (e.g. s == 0.95) compare deterministically.
    double sum = 0.0;
    const std::uint8_t* pa = ref.pixels.data();
    const std::uint8_t* pb = resized.pixels.data();
    const size_t n = static_cast<size_t>(ref.width) * ref.height;
    for (size_t i = 0; i < n; ++i, pa += 3, pb += 3) {
        const double d = static_cast<double>(luma_fixed(pa[0], pa[1], pa[2]) -
                                             luma_fixed(pb[0], pb[1], pb[2])) /
                         255000.0;
        sum += d * d;
    }
    return 1.0 - sum / static_cast<double>(n);
}

}  // namespace motorlint
