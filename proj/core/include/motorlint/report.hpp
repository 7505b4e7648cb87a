#pragma once

#include <filesystem>
#include <string>

#include "motorlint/violations.hpp"

namespace motorlint {

constexpr int kReportSchemaVersion = 1;

// One line of text per violation kind; placeholders in {braces} are filled
// from the violation. Overridable via a templates directory containing
// expanding_section.tmpl, touch_target.tmpl, persisting.tmpl,
// icon_distance.tmpl.
struct ReportTemplates {
    std::string expanding_section;
    std::string touch_target;
    std::string persisting;
    std::string icon_distance;

    static ReportTemplates defaults();
    static ReportTemplates load_dir(const std::filesystem::path& dir);

    const std::string& for_kind(DetectorKind kind) const;
};

// Scan result plus the explicit timestamp it is reported under. Markdown and
// JSON are both projections of this object, so their counts always agree.
struct ScanDocument {
    ScanResult result;
    std::string generated_at;  // caller-provided; the only non-scan content
};

std::string render_markdown(const ScanDocument& doc,
                            const ReportTemplates& templates = ReportTemplates::defaults());

std::string render_json(const ScanDocument& doc);

// Lossless inverse of render_json. render_json(parse_scan_json(j)) == j for
// any j produced by render_json.
ScanDocument parse_scan_json(const std::string& json_text);

}  // namespace motorlint
