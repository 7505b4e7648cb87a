#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motorlint/geometry.hpp"

namespace motorlint {

enum class DetectorKind { ExpandingSection, VisualTouchTarget, PersistingElement, IconDistance };

constexpr int kDetectorKindCount = 4;
const char* to_string(DetectorKind kind);
DetectorKind detector_kind_from_string(const std::string& s);

// Per-violation measurements; only the fields relevant to the violation's
// kind are set.
struct Evidence {
    std::optional<int> measured_width;        // touch target
    std::optional<int> measured_height;
    std::optional<double> gap_px;             // icon distance
    std::optional<std::string> other_element_id;
    std::optional<Rect> other_bounds;
    bool xml_bounds_fallback = false;         // a glyph-less element used its raw bounds
    std::optional<std::string> section_class;  // expanding section
    std::optional<Rect> other_location;       // persisting element
    std::optional<double> crop_similarity;

    bool operator==(const Evidence&) const = default;
};

struct Violation {
    DetectorKind kind = DetectorKind::ExpandingSection;
    std::string screen_name;
    std::optional<std::string> second_screen;  // persisting-element pairs
    std::optional<std::string> element_id;
    Rect bounds;  // offending region, within the screen rect
    Evidence evidence;

    bool operator==(const Violation&) const = default;
};

// One detector's outcome for one unit of analysis (screen or app). A unit
// where the detector does not apply (e.g. no expanding section present) is
// marked inapplicable and never counts as a clean negative.
struct DetectorVerdict {
    bool applicable = true;
    std::vector<Violation> violations;
    std::vector<std::string> notes;  // evidence trail: "text-match:cancel", ...

    bool operator==(const DetectorVerdict&) const = default;
};

struct ScreenVerdict {
    std::string screen_name;
    DetectorVerdict expanding_section;
    DetectorVerdict touch_target;
    DetectorVerdict icon_distance;

    bool operator==(const ScreenVerdict&) const = default;
};

struct ScanResult {
    std::string app_id;
    std::vector<ScreenVerdict> screens;  // sorted by screen name
    DetectorVerdict persisting;          // app-level

    bool operator==(const ScanResult&) const = default;
};

// Violations in canonical order: screens by name, detector kind order
// within a screen, then the app-level persisting violations.
std::vector<Violation> all_violations(const ScanResult& result);
size_t count_violations(const ScanResult& result, DetectorKind kind);

}  // namespace motorlint
