#include "motorlint/report.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "motorlint/detectors.hpp"
#include "motorlint/errors.hpp"

namespace motorlint {

using nlohmann::json;

ReportTemplates ReportTemplates::defaults() {
    ReportTemplates t;
    t.expanding_section =
        "- `{screen}.png`: the {section_class} section `{element}` at {bounds} offers no visible "
        "way to close it (no closure word or icon found)";
    t.touch_target =
        "- `{screen}.png`: clickable element `{element}` has a visual touch target of "
        "{width}x{height}px at {bounds}";
    t.persisting =
        "- `{element}` sits at {bounds} on `{screen}.png` but at {other_bounds} on "
        "`{second_screen}.png` (crop similarity {similarity})";
    t.icon_distance =
        "- `{screen}.png`: clickable elements `{element}` and `{other_element}` are {gap}px "
        "apart near {bounds}";
    return t;
}

namespace {

std::string read_template_file(const std::filesystem::path& path, const std::string& fallback) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fallback;
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

}  // namespace

ReportTemplates ReportTemplates::load_dir(const std::filesystem::path& dir) {
    ReportTemplates t = defaults();
    t.expanding_section = read_template_file(dir / "expanding_section.tmpl", t.expanding_section);
    t.touch_target = read_template_file(dir / "touch_target.tmpl", t.touch_target);
    t.persisting = read_template_file(dir / "persisting.tmpl", t.persisting);
    t.icon_distance = read_template_file(dir / "icon_distance.tmpl", t.icon_distance);
    return t;
}

const std::string& ReportTemplates::for_kind(DetectorKind kind) const {
    switch (kind) {
        case DetectorKind::ExpandingSection: return expanding_section;
        case DetectorKind::VisualTouchTarget: return touch_target;
        case DetectorKind::PersistingElement: return persisting;
        case DetectorKind::IconDistance: return icon_distance;
    }
    return expanding_section;
}

namespace {

std::string fixed(double v, int precision) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(precision);
    out << v;
    return out.str();
}

std::string fill_template(const std::string& tmpl, const Violation& v) {
    std::map<std::string, std::string> values;
    values["screen"] = v.screen_name;
    values["second_screen"] = v.second_screen.value_or("");
    values["element"] = v.element_id.value_or("(no id)");
    values["bounds"] = to_string(v.bounds);
    values["width"] = v.evidence.measured_width ? std::to_string(*v.evidence.measured_width) : "";
    values["height"] =
        v.evidence.measured_height ? std::to_string(*v.evidence.measured_height) : "";
    values["gap"] = v.evidence.gap_px ? fixed(*v.evidence.gap_px, 2) : "";
    values["other_element"] = v.evidence.other_element_id.value_or("(no id)");
    values["other_bounds"] = v.evidence.other_bounds ? to_string(*v.evidence.other_bounds) : "";
    values["other_location"] =
        v.evidence.other_location ? to_string(*v.evidence.other_location) : "";
    values["similarity"] =
        v.evidence.crop_similarity ? fixed(*v.evidence.crop_similarity, 4) : "";
    values["section_class"] = v.evidence.section_class.value_or("");
    if (v.evidence.other_location) values["other_bounds"] = to_string(*v.evidence.other_location);

    std::string out;
    out.reserve(tmpl.size());
    for (size_t i = 0; i < tmpl.size();) {
        if (tmpl[i] == '{') {
            const auto close = tmpl.find('}', i);
            if (close != std::string::npos) {
                const std::string key = tmpl.substr(i + 1, close - i - 1);
                const auto it = values.find(key);
                if (it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += tmpl[i++];
    }
    return out;
}

struct SectionSpec {
    DetectorKind kind;
    const char* heading;
};

constexpr SectionSpec kSections[] = {
    {DetectorKind::ExpandingSection, "Expanding section closure"},
    {DetectorKind::VisualTouchTarget, "Visual touch target size"},
    {DetectorKind::PersistingElement, "Persisting element location"},
    {DetectorKind::IconDistance, "Adjacent icon distance"},
};

}  // namespace

std::string render_markdown(const ScanDocument& doc, const ReportTemplates& templates) {
    const ScanResult& r = doc.result;
    const auto violations = all_violations(r);

    std::ostringstream out;
    out << "# Accessibility scan report\n\n";
    out << "- App: `" << r.app_id << "`\n";
    out << "- Generated: " << (doc.generated_at.empty() ? "(not recorded)" : doc.generated_at)
        << "\n";
    out << "- Screens analyzed: " << r.screens.size() << "\n";
    out << "- Violations: " << violations.size() << "\n";

    for (const auto& section : kSections) {
        out << "\n## " << section.heading << "\n\n";
        size_t n = 0;
        for (const auto& v : violations) {
            if (v.kind != section.kind) continue;
            out << fill_template(templates.for_kind(section.kind), v) << "\n";
            ++n;
        }
        if (n == 0) out << "No violations found.\n";
    }
    return out.str();
}

namespace {

json rect_to_json(const Rect& r) { return json::array({r.left, r.top, r.right, r.bottom}); }

Rect rect_from_json(const json& j) {
    return Rect{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>(), j.at(3).get<int>()};
}

json violation_to_json(const Violation& v) {
    json j;
    j["kind"] = to_string(v.kind);
    j["screen"] = v.screen_name;
    if (v.second_screen) j["second_screen"] = *v.second_screen;
    if (v.element_id) j["element_id"] = *v.element_id;
    j["bounds"] = rect_to_json(v.bounds);
    json e;
    if (v.evidence.measured_width) e["measured_width"] = *v.evidence.measured_width;
    if (v.evidence.measured_height) e["measured_height"] = *v.evidence.measured_height;
    if (v.evidence.gap_px) e["gap_px"] = *v.evidence.gap_px;
    if (v.evidence.other_element_id) e["other_element_id"] = *v.evidence.other_element_id;
    if (v.evidence.other_bounds) e["other_bounds"] = rect_to_json(*v.evidence.other_bounds);
    if (v.evidence.xml_bounds_fallback) e["xml_bounds_fallback"] = true;
    if (v.evidence.section_class) e["section_class"] = *v.evidence.section_class;
    if (v.evidence.other_location) e["other_location"] = rect_to_json(*v.evidence.other_location);
    if (v.evidence.crop_similarity) e["crop_similarity"] = *v.evidence.crop_similarity;
    j["evidence"] = std::move(e);
    return j;
}

Violation violation_from_json(const json& j) {
    Violation v;
    v.kind = detector_kind_from_string(j.at("kind").get<std::string>());
    v.screen_name = j.at("screen").get<std::string>();
    if (j.contains("second_screen")) v.second_screen = j["second_screen"].get<std::string>();
    if (j.contains("element_id")) v.element_id = j["element_id"].get<std::string>();
    v.bounds = rect_from_json(j.at("bounds"));
    const json& e = j.at("evidence");
    if (e.contains("measured_width")) v.evidence.measured_width = e["measured_width"].get<int>();
    if (e.contains("measured_height"))
        v.evidence.measured_height = e["measured_height"].get<int>();
    if (e.contains("gap_px")) v.evidence.gap_px = e["gap_px"].get<double>();
    if (e.contains("other_element_id"))
        v.evidence.other_element_id = e["other_element_id"].get<std::string>();
    if (e.contains("other_bounds")) v.evidence.other_bounds = rect_from_json(e["other_bounds"]);
    if (e.contains("xml_bounds_fallback"))
        v.evidence.xml_bounds_fallback = e["xml_bounds_fallback"].get<bool>();
    if (e.contains("section_class"))
        v.evidence.section_class = e["section_class"].get<std::string>();
    if (e.contains("other_location"))
        v.evidence.other_location = rect_from_json(e["other_location"]);
    if (e.contains("crop_similarity"))
        v.evidence.crop_similarity = e["crop_similarity"].get<double>();
    return v;
}

json verdict_to_json(const DetectorVerdict& v) {
    json j;
    j["applicable"] = v.applicable;
    j["notes"] = v.notes;
    json arr = json::array();
    for (const auto& violation : v.violations) arr.push_back(violation_to_json(violation));
    j["violations"] = std::move(arr);
    return j;
}

DetectorVerdict verdict_from_json(const json& j) {
    DetectorVerdict v;
    v.applicable = j.at("applicable").get<bool>();
    v.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& item : j.at("violations")) v.violations.push_back(violation_from_json(item));
    return v;
}

}  // namespace

std::string render_json(const ScanDocument& doc) {
    const ScanResult& r = doc.result;
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["app_id"] = r.app_id;
    j["generated_at"] = doc.generated_at;

    json screens = json::array();
    for (const auto& s : r.screens) {
        json sj;
        sj["name"] = s.screen_name;
        sj["expanding_section"] = verdict_to_json(s.expanding_section);
        sj["touch_target"] = verdict_to_json(s.touch_target);
        sj["icon_distance"] = verdict_to_json(s.icon_distance);
        screens.push_back(std::move(sj));
    }
    j["screens"] = std::move(screens);
    j["persisting"] = verdict_to_json(r.persisting);

    json summary;
    summary["total"] = all_violations(r).size();
    for (int i = 0; i < kDetectorKindCount; ++i) {
        const auto kind = static_cast<DetectorKind>(i);
        summary[to_string(kind)] = count_violations(r, kind);
    }
    j["summary"] = std::move(summary);
    return j.dump(2) + "\n";
}

ScanDocument parse_scan_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidParams(std::string("report JSON does not parse: ") + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kReportSchemaVersion)
        throw InvalidParams("unsupported report schema version");

    ScanDocument doc;
    doc.generated_at = j.at("generated_at").get<std::string>();
    doc.result.app_id = j.at("app_id").get<std::string>();
    for (const auto& sj : j.at("screens")) {
        ScreenVerdict s;
        s.screen_name = sj.at("name").get<std::string>();
        s.expanding_section = verdict_from_json(sj.at("expanding_section"));
        s.touch_target = verdict_from_json(sj.at("touch_target"));
        s.icon_distance = verdict_from_json(sj.at("icon_distance"));
        doc.result.screens.push_back(std::move(s));
    }
    doc.result.persisting = verdict_from_json(j.at("persisting"));
    return doc;
}

}  // namespace motorlint
