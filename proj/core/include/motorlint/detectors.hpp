#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "motorlint/capture.hpp"
#include "motorlint/config.hpp"
#include "motorlint/icons.hpp"
#include "motorlint/lexicon.hpp"
#include "motorlint/violations.hpp"

namespace motorlint {

// Pluggable OCR seam. The built-in implementation reads no pixels at all:
// hierarchy text is the only text source unless an adapter is installed.
class TextExtractor {
public:
    virtual ~TextExtractor() = default;
    virtual std::vector<std::string> extract_text(const Crop& c) const = 0;
};

class NullTextExtractor final : public TextExtractor {
public:
    std::vector<std::string> extract_text(const Crop&) const override { return {}; }
};

enum class SectionKind { FrameLayout, ListView };
const char* to_string(SectionKind kind);

struct ExpandingSectionRef {
    const UiElement* element = nullptr;
    SectionKind kind = SectionKind::FrameLayout;
};

// The largest FrameLayout/ListView covering at least section_area_min and
// less than section_area_max of the screen; ties go to the earliest element
// in document order.
std::optional<ExpandingSectionRef> find_expanding_section(const UiScreen& screen,
                                                          const ToolConfig& config = {});

// Stage 1: closure words in the text of elements intersecting the section
// (plus any text the extractor reads off the section crop). Stage 2: closure
// icons via the icon detector. A screen without a section is inapplicable.
DetectorVerdict detect_expanding_section(const UiScreen& screen, const ClosureLexicon& lexicon,
                                         const IconDetector& icons, const TextExtractor& text,
                                         const ToolConfig& config = {});

// Flags every clickable element whose measured visual glyph is narrower or
// shorter than touch_target_min. Elements with no discernible glyph are
// skipped with a note.
DetectorVerdict detect_touch_targets(const UiScreen& screen, const ToolConfig& config = {});

// Flags every unordered pair of clickable elements whose visual bounds sit
// closer than icon_gap_min pixels. Elements without a glyph fall back to
// their hierarchy bounds, marked in the evidence.
DetectorVerdict detect_icon_distance(const UiScreen& screen, const ToolConfig& config = {});

// App-level: an element id that appears on several screens, looks the same
// (similarity >= similarity_min) but sits at a different location violates
// the guideline. Dissimilar crops are recorded as skipped pairs instead.
DetectorVerdict detect_persisting_elements(const AppCapture& app, const ToolConfig& config = {});

struct ScanDeps {
    const ClosureLexicon* lexicon = nullptr;        // default lexicon when null
    const IconDetector* icon_detector = nullptr;    // template matcher when null
    const TextExtractor* text_extractor = nullptr;  // null extractor when null
};

// Runs all four detectors over the app. Per-screen work may fan out over
// `jobs` threads; results are merged in screen-name order so the output is
// identical for any job count. A screen that fails mid-scan is flagged, not
// fatal.
ScanResult scan_app(const AppCapture& app, const ToolConfig& config = {},
                    const ScanDeps& deps = {}, int jobs = 1);

}  // namespace motorlint
