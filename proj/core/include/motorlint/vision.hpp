#pragma once

#include <optional>

#include "motorlint/geometry.hpp"
#include "motorlint/image.hpp"

namespace motorlint {

// A rectangular pixel extract plus where it came from in the screenshot.
struct Crop {
    Image pixels;
    Rect origin;  // location in source screenshot; dims equal pixel dims

    bool empty() const { return pixels.width <= 0 || pixels.height <= 0; }
};

// Copies the part of image covered by r (clamped to the image). Throws
// EmptyCrop when the clamped rect has zero area.
Crop crop(const Image& image, const Rect& r);

struct VisualBoundsParams {
    int tolerance = 24;        // per-channel max deviation that marks foreground
    int min_component_area = 4;
};

// Estimates the tight box around the glyph pixels of a crop:
//   1. background = modal border-ring colour (per-channel quantized to 16 levels,
//      represented by the mean of the ring pixels in the modal bucket);
//   2. foreground = pixels whose max per-channel deviation exceeds `tolerance`;
//   3. 4-connected components over the foreground mask;
//   4. bounding box (in screenshot coordinates) of the union of components with
//      area >= min_component_area, or nullopt when no such component exists.
std::optional<Rect> visual_bounds(const Crop& c, const VisualBoundsParams& params = {});

// 1 - MSE between the grayscale crops, after resizing b to a's dimensions by
// nearest neighbour. 1.0 for identical crops, 0.0 for black vs white.
// Throws EmptyCrop when either crop is empty.
double similarity(const Crop& a, const Crop& b);

}  // namespace motorlint
