#include <doctest.h>

#include "../common/testutil.hpp"
#include "motorlint/report.hpp"

using namespace motorlint;
namespace tu = motorlint::testutil;

namespace {

ScanDocument sample_document() {
    ScanDocument doc;
    doc.generated_at = "2024-05-01T10:00:00Z";
    doc.result.app_id = "demo";

    ScreenVerdict s1;
    s1.screen_name = "s1";
    s1.expanding_section.applicable = false;
    s1.expanding_section.notes = {"no expanding section on this screen"};
    Violation tt;
    tt.kind = DetectorKind::VisualTouchTarget;
    tt.screen_name = "s1";
    tt.element_id = "app:id/tiny";
    tt.bounds = Rect{10, 20, 45, 55};
    tt.evidence.measured_width = 35;
    tt.evidence.measured_height = 35;
    s1.touch_target.violations.push_back(tt);
    doc.result.screens.push_back(s1);

    ScreenVerdict s2;
    s2.screen_name = "s2";
    Violation gap;
    gap.kind = DetectorKind::IconDistance;
    gap.screen_name = "s2";
    gap.element_id = "a";
    gap.bounds = Rect{0, 0, 120, 60};
    gap.evidence.gap_px = 6.4031242374328485;
    gap.evidence.other_element_id = "b";
    gap.evidence.other_bounds = Rect{68, 0, 120, 60};
    s2.icon_distance.violations.push_back(gap);
    doc.result.screens.push_back(s2);

    Violation moved;
    moved.kind = DetectorKind::PersistingElement;
    moved.screen_name = "s1";
    moved.second_screen = "s2";
    moved.element_id = "app:id/nav";
    moved.bounds = Rect{0, 350, 300, 400};
    moved.evidence.other_location = Rect{0, 250, 300, 300};
    moved.evidence.crop_similarity = 1.0;
    doc.result.persisting.violations.push_back(moved);
    return doc;
}

}  // namespace

TEST_CASE("markdown renders every section even when empty") {
    ScanDocument empty;
    empty.result.app_id = "clean";
    empty.generated_at = "2024-05-01T10:00:00Z";
    const std::string md = render_markdown(empty);
    CHECK(md.find("# Accessibility scan report") != std::string::npos);
    CHECK(md.find("## Expanding section closure") != std::string::npos);
    CHECK(md.find("## Visual touch target size") != std::string::npos);
    CHECK(md.find("## Persisting element location") != std::string::npos);
    CHECK(md.find("## Adjacent icon distance") != std::string::npos);
    // one "No violations found." per section
    size_t n = 0;
    for (size_t pos = 0; (pos = md.find("No violations found.", pos)) != std::string::npos; ++pos)
        ++n;
    CHECK(n == 4);
}

TEST_CASE("markdown fills the violation templates") {
    const std::string md = render_markdown(sample_document());
    CHECK(md.find("`app:id/tiny`") != std::string::npos);
    CHECK(md.find("35x35px") != std::string::npos);
    CHECK(md.find("`s1.png`") != std::string::npos);
    CHECK(md.find("6.40px") != std::string::npos);
    CHECK(md.find("`app:id/nav`") != std::string::npos);
    CHECK(md.find("- Violations: 3") != std::string::npos);
}

TEST_CASE("rendering the same document twice is byte identical") {
    const ScanDocument doc = sample_document();
    CHECK(render_markdown(doc) == render_markdown(doc));
    CHECK(render_json(doc) == render_json(doc));
}

TEST_CASE("json round-trips losslessly and is byte stable") {
    const ScanDocument doc = sample_document();
    const std::string j1 = render_json(doc);
    const ScanDocument parsed = parse_scan_json(j1);
    CHECK(parsed.result == doc.result);
    CHECK(parsed.generated_at == doc.generated_at);
    CHECK(render_json(parsed) == j1);
}

TEST_CASE("json carries the schema version and counts that match the markdown") {
    const ScanDocument doc = sample_document();
    const std::string j = render_json(doc);
    CHECK(j.find("\"schema_version\": 1") != std::string::npos);
    CHECK(j.find("\"total\": 3") != std::string::npos);
    CHECK(j.find("\"touch_target\": 1") != std::string::npos);
    CHECK(j.find("\"icon_distance\": 1") != std::string::npos);
    CHECK(j.find("\"persisting\": 1") != std::string::npos);
    CHECK(j.find("\"expanding_section\": 0") != std::string::npos);
}

TEST_CASE("parse_scan_json rejects junk") {
    CHECK_THROWS(parse_scan_json("not json"));
    CHECK_THROWS(parse_scan_json("{\"schema_version\": 99}"));
}

TEST_CASE("template overrides load from a directory") {
    tu::TempDir dir;
    tu::write_text(dir.path() / "touch_target.tmpl", "TT {element} {width}x{height}\n");
    const ReportTemplates templates = ReportTemplates::load_dir(dir.path());
    const std::string md = render_markdown(sample_document(), templates);
    CHECK(md.find("TT app:id/tiny 35x35") != std::string::npos);
    // untouched kinds keep their defaults
    CHECK(md.find("`app:id/nav`") != std::string::npos);
}

TEST_CASE("unknown placeholders are left verbatim") {
    ReportTemplates t = ReportTemplates::defaults();
    t.touch_target = "- {element} {nope} {width}";
    const std::string md = render_markdown(sample_document(), t);
    CHECK(md.find("app:id/tiny {nope} 35") != std::string::npos);
}
