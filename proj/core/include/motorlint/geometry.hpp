#pragma once

#include <cstdint>
#include <string>

namespace motorlint {

// Integer pixel rectangle in screenshot coordinates. Half-open semantics are
// not used anywhere: width = right - left, height = bottom - top, and a rect
// with zero width or height is a valid degenerate rect.
struct Rect {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;

    int width() const { return right - left; }
    int height() const { return bottom - top; }
    std::int64_t area() const {
        return static_cast<std::int64_t>(width()) * static_cast<std::int64_t>(height());
    }
    bool empty() const { return width() <= 0 || height() <= 0; }

    bool operator==(const Rect&) const = default;
};

struct ParsedBounds {
    Rect rect;
    bool normalized = false;  // true when the corners had to be swapped
};

// Parses a uiautomator bounds attribute of the form "[x1,y1][x2,y2]" with
// non-negative integers. Inverted corners are swapped into canonical order
// and reported via ParsedBounds::normalized. Throws MalformedBounds.
ParsedBounds parse_bounds(const std::string& s);

// Inverse of parse_bounds for canonical rects.
std::string format_bounds(const Rect& r);

// r grown by pad on every side, then clamped to screen.
Rect expand_rect(const Rect& r, int pad, const Rect& screen);

// Intersection; degenerate (possibly empty) rect when disjoint.
Rect intersect(const Rect& a, const Rect& b);

// Smallest rect containing both.
Rect union_rect(const Rect& a, const Rect& b);

// Clamps every edge of r into screen, preserving left<=right, top<=bottom.
Rect clamp_rect(const Rect& r, const Rect& screen);

bool contains(const Rect& outer, const Rect& inner);

// Intersection-over-union; 0 when either rect is empty.
double iou(const Rect& a, const Rect& b);

// Shortest pixel distance between two rects: 0 if they touch or overlap,
// the horizontal/vertical gap when separated along one axis, and the
// corner-to-corner diagonal otherwise.
double rect_gap(const Rect& a, const Rect& b);

std::string to_string(const Rect& r);

}  // namespace motorlint
