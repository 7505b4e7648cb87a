#include "motorlint/icons.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "motorlint/errors.hpp"

namespace motorlint {

const char* to_string(IconKind kind) {
    switch (kind) {
        case IconKind::Cross: return "cross";
        case IconKind::Checkmark: return "checkmark";
        case IconKind::BackArrow: return "back_arrow";
        case IconKind::Hamburger: return "hamburger";
        case IconKind::ChevronDown: return "chevron_down";
        case IconKind::Done: return "done";
    }
    return "unknown";
}

IconKind icon_kind_from_string(const std::string& s) {
    for (int i = 0; i < kIconKindCount; ++i) {
        const auto kind = static_cast<IconKind>(i);
        if (s == to_string(kind)) return kind;
    }
    throw InvalidParams("unknown icon kind \"" + s + "\"");
}

namespace {

struct Seg {
    double x0, y0, x1, y1;
};

struct GlyphSpec {
    std::vector<Seg> segs;
    double stroke = 0.14;       // stroke width in glyph units
    bool ring = false;
    double ring_radius = 0.0;
};

GlyphSpec glyph_spec(IconKind kind) {
    GlyphSpec g;
    switch (kind) {
        case IconKind::Cross:
            g.segs = {{0.22, 0.22, 0.78, 0.78}, {0.78, 0.22, 0.22, 0.78}};
            break;
        case IconKind::Checkmark:
            g.segs = {{0.16, 0.56, 0.40, 0.80}, {0.40, 0.80, 0.84, 0.26}};
            break;
        case IconKind::BackArrow:
            g.segs = {{0.22, 0.50, 0.82, 0.50}, {0.22, 0.50, 0.46, 0.28}, {0.22, 0.50, 0.46, 0.72}};
            g.stroke = 0.13;
            break;
        case IconKind::Hamburger:
            g.segs = {{0.18, 0.26, 0.82, 0.26}, {0.18, 0.50, 0.82, 0.50}, {0.18, 0.74, 0.82, 0.74}};
            g.stroke = 0.11;
            break;
        case IconKind::ChevronDown:
            g.segs = {{0.18, 0.34, 0.50, 0.68}, {0.50, 0.68, 0.82, 0.34}};
            break;
        case IconKind::Done:
            g.ring = true;
            g.ring_radius = 0.38;
            g.segs = {{0.28, 0.52, 0.44, 0.68}, {0.44, 0.68, 0.74, 0.34}};
            g.stroke = 0.13;
            break;
    }
    return g;
}

double dist2_to_seg(double px, double py, const Seg& s) {
    const double vx = s.x1 - s.x0;
    const double vy = s.y1 - s.y0;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? ((px - s.x0) * vx + (py - s.y0) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = px - (s.x0 + t * vx);
    const double dy = py - (s.y0 + t * vy);
    return dx * dx + dy * dy;
}

}  // namespace

IconTemplate make_icon_template(IconKind kind, int size, double stroke_scale) {
    if (size < 8) throw InvalidParams("icon template must be at least 8x8");
    const GlyphSpec spec = glyph_spec(kind);
    const double half = spec.stroke * stroke_scale * 0.5;
    const double half2 = half * half;

    IconTemplate t;
    t.kind = kind;
    t.width = size;
    t.height = size;
    t.stroke_scale = stroke_scale;
    t.gray.assign(static_cast<size_t>(size) * size, 0.f);  // black ink
    t.alpha.assign(static_cast<size_t>(size) * size, 0.f);

    // 3x3 supersampled coverage in normalized glyph coordinates.
    constexpr int kSub = 3;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            int hits = 0;
            for (int sy = 0; sy < kSub; ++sy) {
                for (int sx = 0; sx < kSub; ++sx) {
                    const double px = (x + (sx + 0.5) / kSub) / size;
                    const double py = (y + (sy + 0.5) / kSub) / size;
                    bool inside = false;
                    for (const Seg& s : spec.segs) {
                        if (dist2_to_seg(px, py, s) <= half2) {
                            inside = true;
                            break;
                        }
                    }
                    if (!inside && spec.ring) {
                        const double dx = px - 0.5;
                        const double dy = py - 0.5;
                        const double d = std::sqrt(dx * dx + dy * dy);
                        inside = std::abs(d - spec.ring_radius) <= half;
                    }
                    if (inside) ++hits;
                }
            }
            t.alpha[static_cast<size_t>(y) * size + x] =
                static_cast<float>(hits) / (kSub * kSub);
        }
    }
    return t;
}

std::vector<IconTemplate> default_icon_bank() {
    std::vector<IconTemplate> bank;
    bank.reserve(kIconKindCount);
    for (int i = 0; i < kIconKindCount; ++i)
        bank.push_back(make_icon_template(static_cast<IconKind>(i)));
    return bank;
}

std::vector<IconTemplate> variant_icon_bank() {
    std::vector<IconTemplate> bank;
    for (int i = 0; i < kIconKindCount; ++i) {
        for (double stroke : {0.85, 1.0, 1.2}) {
            bank.push_back(make_icon_template(static_cast<IconKind>(i), 128, stroke));
        }
    }
    return bank;
}

GrayImage flatten_template(const IconTemplate& t) {
    GrayImage g(t.width, t.height);
    for (size_t i = 0; i < g.pixels.size(); ++i) {
        const float a = t.alpha[i];
        g.pixels[i] = a * t.gray[i] + (1.f - a);
    }
    return g;
}

void paste_icon(Image& dst, const IconTemplate& t, int height_px, int x, int y, Color ink) {
    if (height_px < 1) throw InvalidParams("paste_icon height must be positive");
    GrayImage alpha;
    {
        GrayImage src(t.width, t.height);
        src.pixels = t.alpha;
        alpha = resize_gray(src, height_px, height_px);
    }
    for (int j = 0; j < height_px; ++j) {
        const int py = y + j;
        if (py < 0 || py >= dst.height) continue;
        for (int i = 0; i < height_px; ++i) {
            const int px = x + i;
            if (px < 0 || px >= dst.width) continue;
            const float a = alpha.at(i, j);
            if (a <= 0.f) continue;
            std::uint8_t* p = dst.at(px, py);
            p[0] = static_cast<std::uint8_t>(std::lround(a * ink.r + (1.f - a) * p[0]));
            p[1] = static_cast<std::uint8_t>(std::lround(a * ink.g + (1.f - a) * p[1]));
            p[2] = static_cast<std::uint8_t>(std::lround(a * ink.b + (1.f - a) * p[2]));
        }
    }
}

// ---------------------------------------------------------------------------
// Template matching
// ---------------------------------------------------------------------------

namespace {

struct ZeroMeanTemplate {
    int w = 0, h = 0;
    std::vector<float> t0;  // template minus its mean
    double denom = 0.0;     // sqrt(sum t0^2)
};

ZeroMeanTemplate zero_mean(const GrayImage& g) {
    ZeroMeanTemplate zt;
    zt.w = g.width;
    zt.h = g.height;
    zt.t0.resize(g.pixels.size());
    double sum = 0.0;
    for (float v : g.pixels) sum += v;
    const double mean = sum / static_cast<double>(g.pixels.size());
    double ss = 0.0;
    for (size_t i = 0; i < g.pixels.size(); ++i) {
        const double d = g.pixels[i] - mean;
        zt.t0[i] = static_cast<float>(d);
        ss += d * d;
    }
    zt.denom = std::sqrt(ss);
    return zt;
}

// Summed-area tables for O(1) window mean/variance.
struct Integral {
    int w = 0, h = 0;
    std::vector<double> s1, s2;  // (w+1) x (h+1)

    explicit Integral(const GrayImage& g) : w(g.width), h(g.height) {
        s1.assign(static_cast<size_t>(w + 1) * (h + 1), 0.0);
        s2.assign(static_cast<size_t>(w + 1) * (h + 1), 0.0);
        for (int y = 0; y < h; ++y) {
            double row1 = 0.0, row2 = 0.0;
            const size_t base = static_cast<size_t>(y + 1) * (w + 1);
            const size_t prev = static_cast<size_t>(y) * (w + 1);
            for (int x = 0; x < w; ++x) {
                const double v = g.at(x, y);
                row1 += v;
                row2 += v * v;
                s1[base + x + 1] = s1[prev + x + 1] + row1;
                s2[base + x + 1] = s2[prev + x + 1] + row2;
            }
        }
    }

    void window(int x, int y, int tw, int th, double& sum, double& sum2) const {
        const size_t a = static_cast<size_t>(y) * (w + 1) + x;
        const size_t b = static_cast<size_t>(y) * (w + 1) + x + tw;
        const size_t c = static_cast<size_t>(y + th) * (w + 1) + x;
        const size_t d = static_cast<size_t>(y + th) * (w + 1) + x + tw;
        sum = s1[d] - s1[b] - s1[c] + s1[a];
        sum2 = s2[d] - s2[b] - s2[c] + s2[a];
    }
};

constexpr double kMinSigma = 0.03;  // windows flatter than this cannot match

double dot_window(const GrayImage& img, const ZeroMeanTemplate& zt, int x, int y) {
    double dot = 0.0;
    for (int j = 0; j < zt.h; ++j) {
        const float* crow = img.pixels.data() + static_cast<size_t>(y + j) * img.width + x;
        const float* trow = zt.t0.data() + static_cast<size_t>(j) * zt.w;
        float acc = 0.f;
        for (int i = 0; i < zt.w; ++i) acc += crow[i] * trow[i];
        dot += acc;
    }
    return dot;
}

// ZNCC at one position, computing window stats directly.
double zncc_at(const GrayImage& img, const ZeroMeanTemplate& zt, int x, int y) {
    if (x < 0 || y < 0 || x + zt.w > img.width || y + zt.h > img.height) return -2.0;
    double sum = 0.0, sum2 = 0.0, dot = 0.0;
    for (int j = 0; j < zt.h; ++j) {
        const float* crow = img.pixels.data() + static_cast<size_t>(y + j) * img.width + x;
        const float* trow = zt.t0.data() + static_cast<size_t>(j) * zt.w;
        float a0 = 0.f, a1 = 0.f, a2 = 0.f;
        for (int i = 0; i < zt.w; ++i) {
            const float v = crow[i];
            a0 += v;
            a1 += v * v;
            a2 += v * trow[i];
        }
        sum += a0;
        sum2 += a1;
        dot += a2;
    }
    const double n = static_cast<double>(zt.w) * zt.h;
    const double var = sum2 - sum * sum / n;
    if (var <= kMinSigma * kMinSigma * n || zt.denom <= 1e-12) return 0.0;
    return dot / (std::sqrt(var) * zt.denom);
}

struct Best {
    double score = -2.0;
    int x = 0, y = 0;
};

Best local_search(const GrayImage& img, const ZeroMeanTemplate& zt, int cx, int cy, int radius) {
    Best best;
    for (int y = cy - radius; y <= cy + radius; ++y) {
        for (int x = cx - radius; x <= cx + radius; ++x) {
            const double s = zncc_at(img, zt, x, y);
            if (s > best.score) best = Best{s, x, y};
        }
    }
    return best;
}

struct CoarseHit {
    double score;
    int x, y;
};

// Exhaustive scan of one pyramid level; returns up to max_hits spaced peaks
// at or above the gate.
std::vector<CoarseHit> coarse_scan(const GrayImage& img, const Integral& integral,
                                   const ZeroMeanTemplate& zt, double gate, int max_hits) {
    std::vector<CoarseHit> hits;
    const int xe = img.width - zt.w;
    const int ye = img.height - zt.h;
    if (xe < 0 || ye < 0) return hits;
    const double n = static_cast<double>(zt.w) * zt.h;
    const double min_var = kMinSigma * kMinSigma * n;
    for (int y = 0; y <= ye; ++y) {
        for (int x = 0; x <= xe; ++x) {
            double sum, sum2;
            integral.window(x, y, zt.w, zt.h, sum, sum2);
            const double var = sum2 - sum * sum / n;
            if (var <= min_var) continue;
            const double score = dot_window(img, zt, x, y) / (std::sqrt(var) * zt.denom);
            if (score >= gate) hits.push_back(CoarseHit{score, x, y});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const CoarseHit& a, const CoarseHit& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    // keep spaced peaks only
    std::vector<CoarseHit> kept;
    const int spacing = std::max(1, zt.w / 2);
    for (const CoarseHit& h : hits) {
        bool near = false;
        for (const CoarseHit& k : kept) {
            if (std::abs(h.x - k.x) < spacing && std::abs(h.y - k.y) < spacing) {
                near = true;
                break;
            }
        }
        if (!near) {
            kept.push_back(h);
            if (static_cast<int>(kept.size()) >= max_hits) break;
        }
    }
    return kept;
}

}  // namespace

TemplateMatchDetector::TemplateMatchDetector(std::vector<IconTemplate> bank, MatcherParams params)
    : bank_(std::move(bank)), params_(std::move(params)) {}

std::vector<IconMatch> detect_closure_icons(const Crop& c, const std::vector<IconTemplate>& bank,
                                            int screen_major_dim, const MatcherParams& params) {
    return TemplateMatchDetector(bank, params).detect(c, screen_major_dim);
}

std::vector<IconMatch> TemplateMatchDetector::detect(const Crop& c, int screen_major_dim) const {
    std::vector<IconMatch> matches;
    if (c.empty() || bank_.empty()) return matches;

    // Pyramid of the crop; level k is the crop at 1/2^k scale.
    std::vector<GrayImage> levels;
    levels.push_back(to_gray(c.pixels));
    while (levels.back().width >= 2 * params_.coarse_size &&
           levels.back().height >= 2 * params_.coarse_size && levels.size() < 8) {
        levels.push_back(downscale2(levels.back()));
    }
    std::vector<std::optional<Integral>> integrals(levels.size());

    std::vector<GrayImage> flats;
    flats.reserve(bank_.size());
    for (const auto& t : bank_) flats.push_back(flatten_template(t));

    std::map<std::pair<size_t, int>, ZeroMeanTemplate> cache;
    auto scaled = [&](size_t ti, int size) -> const ZeroMeanTemplate& {
        auto it = cache.find({ti, size});
        if (it == cache.end()) {
            it = cache.emplace(std::make_pair(ti, size), zero_mean(resize_gray(flats[ti], size, size)))
                     .first;
        }
        return it->second;
    };

    struct Cand {
        double coarse;
        size_t ti;
        int scale;  // template height at full resolution
        int level;
        int x, y;  // position at `level`
    };
    std::map<IconKind, std::vector<Cand>> per_kind;

    const int min_dim = std::min(c.pixels.width, c.pixels.height);
    for (size_t ti = 0; ti < bank_.size(); ++ti) {
        for (double frac : params_.scale_fracs) {
            const int s = static_cast<int>(std::lround(frac * screen_major_dim));
            if (s < 8 || s > min_dim) continue;
            // deepest level where the template still spans >= coarse_size px
            int level = 0;
            while (level + 1 < static_cast<int>(levels.size()) &&
                   s / (1 << (level + 1)) >= params_.coarse_size) {
                ++level;
            }
            const int ts = std::max(params_.coarse_size,
                                    static_cast<int>(std::lround(s / static_cast<double>(1 << level))));
            const GrayImage& img = levels[static_cast<size_t>(level)];
            if (ts > img.width || ts > img.height) continue;
            if (!integrals[static_cast<size_t>(level)])
                integrals[static_cast<size_t>(level)].emplace(img);
            const auto hits = coarse_scan(img, *integrals[static_cast<size_t>(level)],
                                          scaled(ti, ts), params_.stage_gate,
                                          params_.per_kind_candidates);
            for (const auto& h : hits) {
                per_kind[bank_[ti].kind].push_back(Cand{h.score, ti, s, level, h.x, h.y});
            }
        }
    }

    for (auto& [kind, cands] : per_kind) {
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.coarse != b.coarse) return a.coarse > b.coarse;
            if (a.scale != b.scale) return a.scale < b.scale;
            if (a.y != b.y) return a.y < b.y;
            return a.x < b.x;
        });
        const int limit = std::min<int>(params_.per_kind_candidates, static_cast<int>(cands.size()));
        for (int ci = 0; ci < limit; ++ci) {
            const Cand& cand = cands[static_cast<size_t>(ci)];
            // Walk the position down the pyramid.
            int x = cand.x, y = cand.y;
            for (int k = cand.level; k >= 1; --k) {
                x *= 2;
                y *= 2;
                const int tk = static_cast<int>(std::lround(cand.scale / static_cast<double>(1 << (k - 1))));
                const Best b = local_search(levels[static_cast<size_t>(k - 1)], scaled(cand.ti, tk), x,
                                            y, params_.refine_window);
                if (b.score > -2.0) {
                    x = b.x;
                    y = b.y;
                }
            }
            // Local scale refinement at full resolution, box centre held.
            double best_score = -2.0;
            Rect best_box;
            const int cx = x + cand.scale / 2;
            const int cy = y + cand.scale / 2;
            for (double f : params_.refine_scale_factors) {
                const int tf = static_cast<int>(std::lround(cand.scale * f));
                if (tf < 8 || tf > min_dim) continue;
                const Best b =
                    local_search(levels[0], scaled(cand.ti, tf), cx - tf / 2, cy - tf / 2, 2);
                if (b.score > best_score) {
                    best_score = b.score;
                    best_box = Rect{b.x, b.y, b.x + tf, b.y + tf};
                }
            }
            if (best_score >= params_.ncc_min) {
                matches.push_back(IconMatch{kind, best_score, best_box});
            }
        }
    }

    // Greedy NMS across kinds and scales.
    std::sort(matches.begin(), matches.end(), [](const IconMatch& a, const IconMatch& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.location.left != b.location.left) return a.location.left < b.location.left;
        return a.location.top < b.location.top;
    });
    std::vector<IconMatch> kept;
    for (const IconMatch& m : matches) {
        bool suppressed = false;
        for (const IconMatch& k : kept) {
            if (iou(m.location, k.location) >= params_.nms_iou) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(m);
    }
    return kept;
}

}  // namespace motorlint
