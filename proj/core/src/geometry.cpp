#include "motorlint/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "motorlint/errors.hpp"

namespace motorlint {

namespace {

// Advances pos past one non-negative integer, storing it in out.
bool scan_int(const std::string& s, size_t& pos, int& out) {
    const char* begin = s.data() + pos;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || out < 0) return false;
    pos += static_cast<size_t>(ptr - begin);
    return true;
}

bool scan_char(const std::string& s, size_t& pos, char c) {
    if (pos >= s.size() || s[pos] != c) return false;
    ++pos;
    return true;
}

}  // namespace

ParsedBounds parse_bounds(const std::string& s) {
    size_t pos = 0;
    int x1, y1, x2, y2;
    bool ok = scan_char(s, pos, '[') && scan_int(s, pos, x1) && scan_char(s, pos, ',') &&
              scan_int(s, pos, y1) && scan_char(s, pos, ']') && scan_char(s, pos, '[') &&
              scan_int(s, pos, x2) && scan_char(s, pos, ',') && scan_int(s, pos, y2) &&
              scan_char(s, pos, ']') && pos == s.size();
    if (!ok) throw MalformedBounds(s);

    ParsedBounds out;
    out.normalized = x2 < x1 || y2 < y1;
    out.rect = Rect{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
    return out;
}

std::string format_bounds(const Rect& r) {
    return "[" + std::to_string(r.left) + "," + std::to_string(r.top) + "][" +
           std::to_string(r.right) + "," + std::to_string(r.bottom) + "]";
}

Rect expand_rect(const Rect& r, int pad, const Rect& screen) {
    Rect grown{r.left - pad, r.top - pad, r.right + pad, r.bottom + pad};
    return clamp_rect(grown, screen);
}

Rect intersect(const Rect& a, const Rect& b) {
    Rect r{std::max(a.left, b.left), std::max(a.top, b.top), std::min(a.right, b.right),
           std::min(a.bottom, b.bottom)};
    if (r.right < r.left) r.right = r.left;
    if (r.bottom < r.top) r.bottom = r.top;
    return r;
}

Rect union_rect(const Rect& a, const Rect& b) {
    return Rect{std::min(a.left, b.left), std::min(a.top, b.top), std::max(a.right, b.right),
                std::max(a.bottom, b.bottom)};
}

Rect clamp_rect(const Rect& r, const Rect& screen) {
    auto clamp = [](int v, int lo, int hi) { return std::max(lo, std::min(hi, v)); };
    Rect out;
    out.left = clamp(r.left, screen.left, screen.right);
    out.right = clamp(r.right, screen.left, screen.right);
    out.top = clamp(r.top, screen.top, screen.bottom);
    out.bottom = clamp(r.bottom, screen.top, screen.bottom);
    if (out.right < out.left) out.right = out.left;
    if (out.bottom < out.top) out.bottom = out.top;
    return out;
}

bool contains(const Rect& outer, const Rect& inner) {
    return inner.left >= outer.left && inner.top >= outer.top && inner.right <= outer.right &&
           inner.bottom <= outer.bottom;
}

double iou(const Rect& a, const Rect& b) {
    if (a.empty() || b.empty()) return 0.0;
    const auto inter = intersect(a, b).area();
    if (inter == 0) return 0.0;
    const auto uni = a.area() + b.area() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double rect_gap(const Rect& a, const Rect& b) {
    const int dx = std::max({0, a.left - b.right, b.left - a.right});
    const int dy = std::max({0, a.top - b.bottom, b.top - a.bottom});
    if (dx == 0) return static_cast<double>(dy);
    if (dy == 0) return static_cast<double>(dx);
    return std::sqrt(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy);
}

std::string to_string(const Rect& r) { return format_bounds(r); }

}  // namespace motorlint
