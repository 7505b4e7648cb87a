#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "motorlint/icons.hpp"
#include "motorlint/vision.hpp"

namespace motorlint {

// Every tunable threshold in one place. The defaults are the guideline
// constants the detectors are specified against; change them only through a
// config file or flags, never in detector code.
struct ToolConfig {
    int touch_target_min = 48;        // px; visual glyph under this (w or h) violates
    double icon_gap_min = 8.0;        // px; visual gap below this violates
    int crop_pad = 15;                // px added around clickable bounds before cropping
    double similarity_min = 0.95;     // persisting-element comparability gate
    double section_area_min = 0.10;   // expanding section >= this fraction of the screen
    double section_area_max = 0.95;   // ... and < this fraction ("not the entire screen")
    double ncc_min = 0.80;            // template-match acceptance
    int persist_loc_tolerance = 2;    // px per edge; bounds within this are "same location"
    int vb_tolerance = 24;            // visual-bounds foreground threshold (0-255)
    int vb_min_component_area = 4;    // px; smaller components are noise

    std::string lexicon_path;         // optional extra closure words, one per line
    std::string templates_dir;        // optional report template overrides
    std::string text_extractor = "none";  // "none" = hierarchy text only
    std::uint32_t seed = 0;

    VisualBoundsParams visual_bounds_params() const {
        return VisualBoundsParams{vb_tolerance, vb_min_component_area};
    }
    MatcherParams matcher_params() const {
        MatcherParams p;
        p.ncc_min = ncc_min;
        return p;
    }

    // Throws InvalidParams on out-of-range values.
    void validate() const;

    static ToolConfig parse(const std::string& text);
    static ToolConfig load(const std::filesystem::path& path);
    // Flat key = value form; parse(serialize()) == *this.
    std::string serialize() const;

    bool operator==(const ToolConfig&) const = default;
};

}  // namespace motorlint
