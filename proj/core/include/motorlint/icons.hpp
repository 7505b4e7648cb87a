#pragma once

#include <string>
#include <vector>

#include "motorlint/geometry.hpp"
#include "motorlint/image.hpp"
#include "motorlint/vision.hpp"

namespace motorlint {

// The six closure-affordance icon families the expanding-section detector
// looks for.
enum class IconKind { Cross, Checkmark, BackArrow, Hamburger, ChevronDown, Done };

constexpr int kIconKindCount = 6;
const char* to_string(IconKind kind);
IconKind icon_kind_from_string(const std::string& s);

// A glyph raster: ink intensity plus a transparency mask, both in [0,1].
// Glyphs are drawn in a single ink colour, so `alpha` doubles as the ink
// coverage used when pasting the icon onto a screenshot.
struct IconTemplate {
    IconKind kind = IconKind::Cross;
    int width = 0;
    int height = 0;            // >= 8
    std::vector<float> gray;   // ink value (0 = black ink)
    std::vector<float> alpha;  // coverage mask
    double stroke_scale = 1.0;
};

// Renders one glyph at the given square size (>= 8). stroke_scale widens or
// narrows the strokes around the canonical width.
IconTemplate make_icon_template(IconKind kind, int size = 128, double stroke_scale = 1.0);

// One canonical template per kind; the bank the default matcher uses.
std::vector<IconTemplate> default_icon_bank();
// Style variations (three stroke weights per kind) used by the synthetic
// dataset generator.
std::vector<IconTemplate> variant_icon_bank();

// Template flattened over a white background as a [0,1] gray raster.
GrayImage flatten_template(const IconTemplate& t);

// Alpha-composites the template, scaled to height_px (square), in the given
// ink colour with its top-left corner at (x, y).
void paste_icon(Image& dst, const IconTemplate& t, int height_px, int x, int y, Color ink);

struct IconMatch {
    IconKind kind = IconKind::Cross;
    double score = 0.0;  // normalized cross-correlation in [-1,1], reported >= threshold
    Rect location;       // crop-local coordinates
};

struct MatcherParams {
    double ncc_min = 0.80;  // final acceptance threshold
    std::vector<double> scale_fracs = {0.02, 0.04, 0.06, 0.08, 0.10};
    double nms_iou = 0.30;

    // Coarse-to-fine search tuning. The coarse pass scans a pyramid level
    // where the scaled template is at least coarse_size pixels tall; winners
    // are tracked down the pyramid and locally refined in position and scale.
    int coarse_size = 7;
    double stage_gate = 0.40;       // coarse-score admission threshold
    int per_kind_candidates = 4;    // refined candidates per icon kind
    int refine_window = 3;          // +/- pixels searched per pyramid level
    std::vector<double> refine_scale_factors = {0.75, 0.87, 1.0, 1.15, 1.33};
};

// Anything that can propose closure icons for a crop. The default is the
// template matcher below; a learned detector can be swapped in behind this.
class IconDetector {
public:
    virtual ~IconDetector() = default;
    // screen_major_dim anchors the scale ladder: templates are matched at
    // heights of 2..10% of the larger screen dimension.
    virtual std::vector<IconMatch> detect(const Crop& c, int screen_major_dim) const = 0;
};

class TemplateMatchDetector final : public IconDetector {
public:
    explicit TemplateMatchDetector(std::vector<IconTemplate> bank = default_icon_bank(),
                                   MatcherParams params = {});
    std::vector<IconMatch> detect(const Crop& c, int screen_major_dim) const override;

    const MatcherParams& params() const { return params_; }

private:
    std::vector<IconTemplate> bank_;
    MatcherParams params_;
};

// Multi-scale normalized cross-correlation match of every bank template
// against the crop; matches are NMS-deduplicated and sorted by descending
// score. An empty result means no icon cleared the threshold.
std::vector<IconMatch> detect_closure_icons(const Crop& c, const std::vector<IconTemplate>& bank,
                                            int screen_major_dim, const MatcherParams& params = {});

}  // namespace motorlint
