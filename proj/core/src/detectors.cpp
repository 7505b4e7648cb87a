#include "motorlint/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "motorlint/errors.hpp"
#include "motorlint/vision.hpp"

namespace motorlint {

const char* to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::ExpandingSection: return "expanding_section";
        case DetectorKind::VisualTouchTarget: return "touch_target";
        case DetectorKind::PersistingElement: return "persisting";
        case DetectorKind::IconDistance: return "icon_distance";
    }
    return "unknown";
}

DetectorKind detector_kind_from_string(const std::string& s) {
    for (int i = 0; i < kDetectorKindCount; ++i) {
        const auto kind = static_cast<DetectorKind>(i);
        if (s == to_string(kind)) return kind;
    }
    throw InvalidParams("unknown detector kind \"" + s + "\"");
}

const char* to_string(SectionKind kind) {
    return kind == SectionKind::FrameLayout ? "FrameLayout" : "ListView";
}

std::vector<Violation> all_violations(const ScanResult& result) {
    std::vector<Violation> out;
    for (const auto& screen : result.screens) {
        for (const auto& v : screen.expanding_section.violations) out.push_back(v);
        for (const auto& v : screen.touch_target.violations) out.push_back(v);
        for (const auto& v : screen.icon_distance.violations) out.push_back(v);
    }
    for (const auto& v : result.persisting.violations) out.push_back(v);
    return out;
}

size_t count_violations(const ScanResult& result, DetectorKind kind) {
    size_t n = 0;
    for (const auto& v : all_violations(result)) {
        if (v.kind == kind) ++n;
    }
    return n;
}

namespace {

std::string element_label(const UiElement& el) {
    return el.element_id ? *el.element_id : to_string(el.bounds);
}

std::string format_double(double v, int precision = 2) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(precision);
    out << v;
    return out.str();
}

std::vector<const UiElement*> clickable_elements(const UiScreen& screen) {
    std::vector<const UiElement*> out;
    if (!screen.root) return out;
    for_each_element(*screen.root, [&](const UiElement& el) {
        if (el.clickable) out.push_back(&el);
    });
    return out;
}

}  // namespace

std::optional<ExpandingSectionRef> find_expanding_section(const UiScreen& screen,
                                                          const ToolConfig& config) {
    if (!screen.root) return std::nullopt;
    const double screen_area = static_cast<double>(screen.screen_rect.area());
    if (screen_area <= 0) return std::nullopt;

    std::optional<ExpandingSectionRef> best;
    std::int64_t best_area = -1;
    for_each_element(*screen.root, [&](const UiElement& el) {
        SectionKind kind;
        if (el.class_name == "android.widget.FrameLayout") kind = SectionKind::FrameLayout;
        else if (el.class_name == "android.widget.ListView") kind = SectionKind::ListView;
        else return;
        const std::int64_t area = el.bounds.area();
        const double frac = static_cast<double>(area) / screen_area;
        if (frac < config.section_area_min || frac >= config.section_area_max) return;
        if (area > best_area) {  // strict: document order wins ties
            best_area = area;
            best = ExpandingSectionRef{&el, kind};
        }
    });
    return best;
}

DetectorVerdict detect_expanding_section(const UiScreen& screen, const ClosureLexicon& lexicon,
                                         const IconDetector& icons, const TextExtractor& text,
                                         const ToolConfig& config) {
    DetectorVerdict verdict;
    const auto section = find_expanding_section(screen, config);
    if (!section) {
        verdict.applicable = false;
        verdict.notes.push_back("no expanding section on this screen");
        return verdict;
    }
    const UiElement& el = *section->element;
    verdict.notes.push_back(std::string("section:") + to_string(section->kind) + " " +
                            to_string(el.bounds));

    Crop section_crop;
    try {
        section_crop = crop(screen.image, el.bounds);
    } catch (const EmptyCrop&) {
        verdict.applicable = false;
        verdict.notes.push_back("section bounds have no pixels; screen not analyzable");
        return verdict;
    }

    // Stage 1: semantic text matching over everything intersecting the section.
    std::vector<std::string> texts;
    for_each_element(*screen.root, [&](const UiElement& node) {
        if (intersect(node.bounds, el.bounds).area() <= 0) return;
        if (node.text && !node.text->empty()) texts.push_back(*node.text);
        if (node.content_desc && !node.content_desc->empty()) texts.push_back(*node.content_desc);
    });
    for (auto& extracted : text.extract_text(section_crop)) texts.push_back(std::move(extracted));

    for (const auto& t : texts) {
        if (auto word = match_closure(normalize_tokens(t), lexicon)) {
            verdict.notes.push_back("text-match:" + *word);
            return verdict;  // closable by text; icon stage intentionally not reached
        }
    }

    // Stage 2: closure icon detection on the section crop.
    verdict.notes.push_back("icon-stage:ran");
    const int major = std::max(screen.screen_rect.width(), screen.screen_rect.height());
    const auto matches = icons.detect(section_crop, major);
    if (!matches.empty()) {
        verdict.notes.push_back(std::string("icon-match:") + to_string(matches.front().kind) +
                                " score=" + format_double(matches.front().score, 3));
        return verdict;
    }

    Violation v;
    v.kind = DetectorKind::ExpandingSection;
    v.screen_name = screen.name;
    v.element_id = el.element_id;
    v.bounds = el.bounds;
    v.evidence.section_class = to_string(section->kind);
    verdict.violations.push_back(std::move(v));
    return verdict;
}

namespace {

// Shared crop-expand-measure pipeline of the two visual detectors.
std::optional<Rect> measure_visual_bounds(const UiScreen& screen, const UiElement& el,
                                          const ToolConfig& config) {
    const Rect expanded = expand_rect(el.bounds, config.crop_pad, screen.screen_rect);
    if (expanded.area() == 0) return std::nullopt;
    const Crop c = crop(screen.image, expanded);
    return visual_bounds(c, config.visual_bounds_params());
}

}  // namespace

DetectorVerdict detect_touch_targets(const UiScreen& screen, const ToolConfig& config) {
    DetectorVerdict verdict;
    for (const UiElement* el : clickable_elements(screen)) {
        const auto vb = measure_visual_bounds(screen, *el, config);
        if (!vb) {
            verdict.notes.push_back("no-glyph:" + element_label(*el));
            continue;
        }
        if (vb->width() < config.touch_target_min || vb->height() < config.touch_target_min) {
            Violation v;
            v.kind = DetectorKind::VisualTouchTarget;
            v.screen_name = screen.name;
            v.element_id = el->element_id;
            v.bounds = *vb;
            v.evidence.measured_width = vb->width();
            v.evidence.measured_height = vb->height();
            verdict.violations.push_back(std::move(v));
        }
    }
    return verdict;
}

DetectorVerdict detect_icon_distance(const UiScreen& screen, const ToolConfig& config) {
    DetectorVerdict verdict;
    struct Entry {
        const UiElement* el;
        Rect visual;
        bool fallback;
    };
    std::vector<Entry> entries;
    for (const UiElement* el : clickable_elements(screen)) {
        const auto vb = measure_visual_bounds(screen, *el, config);
        if (vb) {
            entries.push_back(Entry{el, *vb, false});
        } else {
            verdict.notes.push_back("xml-bounds-fallback:" + element_label(*el));
            entries.push_back(Entry{el, clamp_rect(el->bounds, screen.screen_rect), true});
        }
    }
    for (size_t i = 0; i < entries.size(); ++i) {
        for (size_t j = i + 1; j < entries.size(); ++j) {
            const double gap = rect_gap(entries[i].visual, entries[j].visual);
            if (gap < config.icon_gap_min) {
                Violation v;
                v.kind = DetectorKind::IconDistance;
                v.screen_name = screen.name;
                v.element_id = entries[i].el->element_id;
                v.bounds = union_rect(entries[i].visual, entries[j].visual);
                v.evidence.gap_px = gap;
                v.evidence.other_element_id = entries[j].el->element_id;
                v.evidence.other_bounds = entries[j].visual;
                v.evidence.xml_bounds_fallback = entries[i].fallback || entries[j].fallback;
                verdict.violations.push_back(std::move(v));
            }
        }
    }
    return verdict;
}

DetectorVerdict detect_persisting_elements(const AppCapture& app, const ToolConfig& config) {
    DetectorVerdict verdict;
    if (app.screens.size() < 2) {
        verdict.applicable = false;
        verdict.notes.push_back("app has fewer than two screens");
        return verdict;
    }

    // Screens in name order regardless of how the capture was assembled.
    std::vector<const UiScreen*> screens;
    for (const auto& s : app.screens) screens.push_back(&s);
    std::sort(screens.begin(), screens.end(),
              [](const UiScreen* a, const UiScreen* b) { return a->name < b->name; });

    // First occurrence of each id per screen, in document order.
    std::map<std::string, std::vector<std::pair<const UiScreen*, const UiElement*>>> by_id;
    for (const UiScreen* screen : screens) {
        if (!screen->root) continue;
        std::set<std::string> seen;
        for_each_element(*screen->root, [&](const UiElement& el) {
            if (!el.element_id || el.element_id->empty()) return;
            if (!seen.insert(*el.element_id).second) return;
            by_id[*el.element_id].emplace_back(screen, &el);
        });
    }

    const int tol = config.persist_loc_tolerance;
    auto same_location = [tol](const Rect& a, const Rect& b) {
        return std::abs(a.left - b.left) <= tol && std::abs(a.top - b.top) <= tol &&
               std::abs(a.right - b.right) <= tol && std::abs(a.bottom - b.bottom) <= tol;
    };

    for (const auto& [id, occurrences] : by_id) {
        if (occurrences.size() < 2) continue;
        for (size_t i = 0; i < occurrences.size(); ++i) {
            for (size_t j = i + 1; j < occurrences.size(); ++j) {
                const auto& [screen_a, el_a] = occurrences[i];
                const auto& [screen_b, el_b] = occurrences[j];
                Crop crop_a, crop_b;
                try {
                    crop_a = crop(screen_a->image, el_a->bounds);
                    crop_b = crop(screen_b->image, el_b->bounds);
                } catch (const EmptyCrop&) {
                    verdict.notes.push_back("skipped-pair:" + id + " " + screen_a->name + "," +
                                            screen_b->name + " (zero-area bounds)");
                    continue;
                }
                const double s = similarity(crop_a, crop_b);
                if (s < config.similarity_min) {
                    verdict.notes.push_back("skipped-pair:" + id + " " + screen_a->name + "," +
                                            screen_b->name +
                                            " similarity=" + format_double(s, 4));
                    continue;
                }
                if (!same_location(el_a->bounds, el_b->bounds)) {
                    Violation v;
                    v.kind = DetectorKind::PersistingElement;
                    v.screen_name = screen_a->name;
                    v.second_screen = screen_b->name;
                    v.element_id = id;
                    v.bounds = el_a->bounds;
                    v.evidence.other_location = el_b->bounds;
                    v.evidence.crop_similarity = s;
                    verdict.violations.push_back(std::move(v));
                }
            }
        }
    }
    return verdict;
}

ScanResult scan_app(const AppCapture& app, const ToolConfig& config, const ScanDeps& deps,
                    int jobs) {
    const ClosureLexicon& lexicon = deps.lexicon ? *deps.lexicon : ClosureLexicon::default_lexicon();
    static const NullTextExtractor null_extractor;
    const TextExtractor& text = deps.text_extractor ? *deps.text_extractor : null_extractor;
    std::unique_ptr<IconDetector> default_detector;
    const IconDetector* icons = deps.icon_detector;
    if (!icons) {
        default_detector =
            std::make_unique<TemplateMatchDetector>(default_icon_bank(), config.matcher_params());
        icons = default_detector.get();
    }

    std::vector<size_t> order(app.screens.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return app.screens[a].name < app.screens[b].name;
    });

    ScanResult result;
    result.app_id = app.app_id;
    result.screens.resize(order.size());

    auto scan_one = [&](size_t slot) {
        const UiScreen& screen = app.screens[order[slot]];
        ScreenVerdict verdict;
        verdict.screen_name = screen.name;
        try {
            verdict.expanding_section =
                detect_expanding_section(screen, lexicon, *icons, text, config);
            verdict.touch_target = detect_touch_targets(screen, config);
            verdict.icon_distance = detect_icon_distance(screen, config);
        } catch (const Error& e) {
            // one broken screen must not sink the scan
            verdict.expanding_section = DetectorVerdict{false, {}, {}};
            verdict.touch_target = DetectorVerdict{false, {}, {}};
            verdict.icon_distance = DetectorVerdict{false, {}, {}};
            verdict.expanding_section.notes.push_back(std::string("error:") + e.what());
        }
        result.screens[slot] = std::move(verdict);
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || order.size() <= 1) {
        for (size_t i = 0; i < order.size(); ++i) scan_one(i);
    } else {
        std::vector<std::thread> workers;
        const int n = std::min<int>(jobs, static_cast<int>(order.size()));
        for (int w = 0; w < n; ++w) {
            workers.emplace_back([&, w]() {
                for (size_t i = static_cast<size_t>(w); i < order.size(); i += static_cast<size_t>(n))
                    scan_one(i);
            });
        }
        for (auto& t : workers) t.join();
    }

    result.persisting = detect_persisting_elements(app, config);
    return result;
}

}  // namespace motorlint
