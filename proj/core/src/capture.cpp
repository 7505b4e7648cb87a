#include "motorlint/capture.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "motorlint/errors.hpp"

namespace motorlint {

void for_each_element(const UiElement& root, const std::function<void(const UiElement&)>& fn) {
    fn(root);
    for (const auto& child : root.children) for_each_element(child, fn);
}

void for_each_element(UiElement& root, const std::function<void(UiElement&)>& fn) {
    fn(root);
    for (auto& child : root.children) for_each_element(child, fn);
}

size_t count_elements(const UiElement& root) {
    size_t n = 0;
    for_each_element(root, [&](const UiElement&) { ++n; });
    return n;
}

namespace {

namespace pt = boost::property_tree;

std::optional<std::string> attr(const pt::ptree& node, const char* name) {
    auto child = node.get_child_optional(std::string("<xmlattr>.") + name);
    if (!child) return std::nullopt;
    return child->get_value<std::string>();
}

bool iequals_true(const std::string& s) {
    if (s.size() != 4) return false;
    return (s[0] == 't' || s[0] == 'T') && (s[1] == 'r' || s[1] == 'R') &&
           (s[2] == 'u' || s[2] == 'U') && (s[3] == 'e' || s[3] == 'E');
}

UiElement parse_node(const pt::ptree& node, std::vector<std::string>& warnings) {
    UiElement el;
    el.element_id = attr(node, "resource-id");
    el.class_name = attr(node, "class").value_or("");
    el.text = attr(node, "text");
    el.content_desc = attr(node, "content-desc");
    el.clickable = iequals_true(attr(node, "clickable").value_or(""));

    if (auto b = attr(node, "bounds")) {
        try {
            ParsedBounds pb = parse_bounds(*b);
            el.bounds = pb.rect;
            if (pb.normalized)
                warnings.push_back("normalized inverted bounds " + *b);
        } catch (const MalformedBounds&) {
            warnings.push_back("node with unparseable bounds \"" + *b + "\" kept with zero rect");
        }
    } else {
        warnings.push_back("node without bounds attribute kept with zero rect");
    }

    for (const auto& [key, child] : node) {
        if (key == "node") el.children.push_back(parse_node(child, warnings));
    }
    return el;
}

}  // namespace

HierarchyParseResult parse_hierarchy(const std::string& xml_bytes) {
    pt::ptree tree;
    std::istringstream in(xml_bytes);
    try {
        pt::read_xml(in, tree, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        throw MalformedXml(e.message());
    }

    auto hierarchy = tree.get_child_optional("hierarchy");
    if (!hierarchy) throw MalformedXml("missing <hierarchy> root element");

    HierarchyParseResult result;
    std::vector<UiElement> tops;
    for (const auto& [key, child] : *hierarchy) {
        if (key == "node") tops.push_back(parse_node(child, result.warnings));
    }
    if (tops.empty()) {
        result.warnings.push_back("empty hierarchy: no <node> elements");
        return result;
    }
    result.root = std::move(tops.front());
    if (tops.size() > 1) {
        // Real dumps have a single top node; keep extras as trailing children
        // so no node is lost.
        result.warnings.push_back("hierarchy has " + std::to_string(tops.size()) +
                                  " top-level nodes; extras attached under the first");
        for (size_t i = 1; i < tops.size(); ++i)
            result.root->children.push_back(std::move(tops[i]));
    }
    return result;
}

UiScreen make_screen(std::string name, Image image, std::optional<UiElement> root,
                     std::vector<std::string>* warnings) {
    if (image.width <= 0 || image.height <= 0)
        throw InvalidParams("screen \"" + name + "\" has an empty image");
    UiScreen screen;
    screen.name = std::move(name);
    screen.screen_rect = Rect{0, 0, image.width, image.height};
    screen.image = std::move(image);
    screen.root = std::move(root);
    if (screen.root) {
        size_t clamped = 0;
        for_each_element(*screen.root, [&](UiElement& el) {
            const Rect c = clamp_rect(el.bounds, screen.screen_rect);
            if (c != el.bounds) {
                el.bounds = c;
                ++clamped;
            }
        });
        if (clamped > 0 && warnings) {
            warnings->push_back(screen.name + ": clamped " + std::to_string(clamped) +
                                " element bounds to the screen rect");
        }
    }
    return screen;
}

LoadResult load_capture(const std::filesystem::path& dir_path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir_path)) throw NoPairsFound(dir_path.string());

    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    };

    // Collect candidate halves keyed by basename; map keeps them sorted so the
    // result is independent of filesystem enumeration order.
    std::map<std::string, std::pair<fs::path, fs::path>> pairs;  // name -> (png, xml)
    for (const auto& entry : fs::directory_iterator(dir_path)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = lower(entry.path().extension().string());
        const std::string stem = entry.path().stem().string();
        if (ext == ".png") pairs[stem].first = entry.path();
        else if (ext == ".xml") pairs[stem].second = entry.path();
    }

    LoadResult result;
    result.capture.app_id = dir_path.filename().string();
    if (result.capture.app_id.empty())  // trailing slash
        result.capture.app_id = dir_path.parent_path().filename().string();

    for (const auto& [name, files] : pairs) {
        const auto& [png, xml] = files;
        if (png.empty() || xml.empty()) {
            result.warnings.push_back("unpaired file ignored: " +
                                      (png.empty() ? xml : png).filename().string());
            continue;
        }
        try {
            Image img = load_png(png);
            std::ifstream in(xml, std::ios::binary);
            std::stringstream buf;
            buf << in.rdbuf();
            HierarchyParseResult parsed = parse_hierarchy(buf.str());
            for (auto& w : parsed.warnings) result.warnings.push_back(name + ": " + w);
            result.capture.screens.push_back(
                make_screen(name, std::move(img), std::move(parsed.root), &result.warnings));
        } catch (const Error& e) {
            result.warnings.push_back("skipped screen \"" + name + "\": " + e.what());
        }
    }

    if (result.capture.screens.empty()) throw NoPairsFound(dir_path.string());
    std::sort(result.capture.screens.begin(), result.capture.screens.end(),
              [](const UiScreen& a, const UiScreen& b) { return a.name < b.name; });
    return result;
}

}  // namespace motorlint
