#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "motorlint/geometry.hpp"
#include "motorlint/image.hpp"

namespace motorlint {

// One node of a uiautomator hierarchy dump. Child bounds are NOT required to
// be contained in the parent's; real dumps violate containment freely.
struct UiElement {
    std::optional<std::string> element_id;  // resource-id attribute
    std::string class_name;                 // e.g. android.widget.FrameLayout
    std::optional<std::string> text;
    std::optional<std::string> content_desc;
    bool clickable = false;
    Rect bounds;
    std::vector<UiElement> children;
};

// Depth-first, document-order traversal.
void for_each_element(const UiElement& root, const std::function<void(const UiElement&)>& fn);
void for_each_element(UiElement& root, const std::function<void(UiElement&)>& fn);
size_t count_elements(const UiElement& root);

struct HierarchyParseResult {
    std::optional<UiElement> root;       // nullopt for an empty hierarchy
    std::vector<std::string> warnings;   // per-node leniency notes
};

// Parses a uiautomator XML dump: a `hierarchy` root with nested `node`
// elements. Missing optional attributes become nullopt; clickable is true
// only for a case-insensitive "true". Nodes with missing or malformed
// bounds keep a zero rect and add a warning, so no node is ever dropped.
// Throws MalformedXml when the document is not well-formed or has no
// `hierarchy` root.
HierarchyParseResult parse_hierarchy(const std::string& xml_bytes);

// A screenshot/hierarchy pair. Element bounds are clamped to the screen
// rect at load time (recorded as warnings, not errors).
struct UiScreen {
    std::string name;  // shared basename of the .png/.xml pair
    Image image;
    std::optional<UiElement> root;
    Rect screen_rect;  // [0,0,width,height]
};

struct AppCapture {
    std::string app_id;
    std::vector<UiScreen> screens;  // sorted by name, names unique
};

struct LoadResult {
    AppCapture capture;
    std::vector<std::string> warnings;
};

// Loads every complete `<name>.png` + `<name>.xml` pair from a directory
// (app_id = directory basename). Unpaired files and per-screen parse
// failures become warnings; throws NoPairsFound when nothing loads.
LoadResult load_capture(const std::filesystem::path& dir_path);

// In-memory assembly used by tests and the fixture generator; applies the
// same clamping and sorting as load_capture.
UiScreen make_screen(std::string name, Image image, std::optional<UiElement> root,
                     std::vector<std::string>* warnings = nullptr);

}  // namespace motorlint
