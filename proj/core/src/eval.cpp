#include "motorlint/eval.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "motorlint/capture.hpp"
#include "motorlint/errors.hpp"

namespace motorlint {

using nlohmann::json;

EvalMetrics compute_metrics(const ConfusionMatrix& cm) {
    if (cm.tp < 0 || cm.fp < 0 || cm.fn < 0 || cm.tn < 0)
        throw InvalidParams("confusion counts must be non-negative");
    EvalMetrics m;
    auto ratio = [](long num, long den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.accuracy = ratio(cm.tp + cm.tn, cm.total());
    m.precision = ratio(cm.tp, cm.tp + cm.fp);
    m.recall = ratio(cm.tp, cm.tp + cm.fn);
    // algebraically 2PR/(P+R), kept in exact integer form
    m.f1 = ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn);
    m.fpr = ratio(cm.fp, cm.fp + cm.tn);
    m.fnr = ratio(cm.fn, cm.fn + cm.tp);
    return m;
}

GroundTruthLabels GroundTruthLabels::parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidParams(std::string("labels JSON does not parse: ") + e.what());
    }
    if (!j.is_object()) throw InvalidParams("labels file must be a JSON object");
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kLabelsSchemaVersion)
        throw InvalidParams("unsupported labels schema version");

    GroundTruthLabels labels;
    for (const auto& [key, value] : j.items()) {
        if (key == "schema_version") continue;
        const DetectorKind kind = detector_kind_from_string(key);
        if (!value.is_object())
            throw InvalidParams("labels for " + key + " must map unit names to booleans");
        auto& units = labels.units[kind];
        for (const auto& [unit, flag] : value.items()) {
            if (!flag.is_boolean())
                throw InvalidParams("label for unit \"" + unit + "\" must be true or false");
            units[unit] = flag.get<bool>();
        }
    }
    return labels;
}

GroundTruthLabels GroundTruthLabels::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read labels file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

ConfusionBuildResult build_confusion(const std::map<std::string, Prediction>& predictions,
                                     const std::map<std::string, bool>& labels) {
    std::vector<std::string> missing;
    ConfusionBuildResult out;
    for (const auto& [unit, label] : labels) {
        const auto it = predictions.find(unit);
        if (it == predictions.end()) {
            missing.push_back(unit);
            continue;
        }
        if (!it->second.applicable) {
            ++out.excluded;
            continue;
        }
        const bool predicted = it->second.violation;
        if (predicted && label) ++out.cm.tp;
        else if (predicted && !label) ++out.cm.fp;
        else if (!predicted && label) ++out.cm.fn;
        else ++out.cm.tn;
    }
    if (!missing.empty()) {
        std::string joined;
        for (const auto& u : missing) {
            if (!joined.empty()) joined += ", ";
            joined += u;
        }
        throw MissingPrediction(joined);
    }
    return out;
}

EvalMetrics macro_average(const std::vector<EvalMetrics>& rows) {
    EvalMetrics out;
    auto mean_of = [&](std::optional<double> EvalMetrics::* field) -> std::optional<double> {
        double sum = 0.0;
        int n = 0;
        for (const auto& row : rows) {
            if (row.*field) {
                sum += *(row.*field);
                ++n;
            }
        }
        if (n == 0) return std::nullopt;
        return sum / n;
    };
    out.accuracy = mean_of(&EvalMetrics::accuracy);
    out.precision = mean_of(&EvalMetrics::precision);
    out.recall = mean_of(&EvalMetrics::recall);
    out.f1 = mean_of(&EvalMetrics::f1);
    out.fpr = mean_of(&EvalMetrics::fpr);
    out.fnr = mean_of(&EvalMetrics::fnr);
    return out;
}

namespace {

bool has_capture_pairs(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    bool png = false, xml = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".png") png = true;
        if (ext == ".xml") xml = true;
    }
    return png && xml;
}

}  // namespace

EvalReport run_eval(const std::filesystem::path& capture_root, const GroundTruthLabels& labels,
                    const ToolConfig& config, const ScanDeps& deps, int jobs) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(capture_root))
        throw IoError("capture root is not a directory: " + capture_root.string());

    // One capture directory per app; a root that itself holds pairs is a
    // single-app benchmark.
    std::vector<fs::path> app_dirs;
    for (const auto& entry : fs::directory_iterator(capture_root)) {
        if (entry.is_directory() && has_capture_pairs(entry.path())) {
            app_dirs.push_back(entry.path());
        }
    }
    if (app_dirs.empty() && has_capture_pairs(capture_root)) app_dirs.push_back(capture_root);
    if (app_dirs.empty()) throw NoPairsFound(capture_root.string());
    std::sort(app_dirs.begin(), app_dirs.end());

    std::map<DetectorKind, std::map<std::string, Prediction>> predictions;
    EvalReport report;

    for (const auto& dir : app_dirs) {
        const LoadResult loaded = load_capture(dir);
        for (const auto& w : loaded.warnings) report.notes.push_back(dir.filename().string() + ": " + w);
        const ScanResult scan = scan_app(loaded.capture, config, deps, jobs);

        const std::string app = scan.app_id;
        for (const auto& s : scan.screens) {
            const std::string unit = app + "/" + s.screen_name;
            predictions[DetectorKind::ExpandingSection][unit] = Prediction{
                s.expanding_section.applicable, !s.expanding_section.violations.empty()};
            predictions[DetectorKind::VisualTouchTarget][unit] =
                Prediction{s.touch_target.applicable, !s.touch_target.violations.empty()};
            predictions[DetectorKind::IconDistance][unit] =
                Prediction{s.icon_distance.applicable, !s.icon_distance.violations.empty()};
        }
        predictions[DetectorKind::PersistingElement][app] =
            Prediction{scan.persisting.applicable, !scan.persisting.violations.empty()};
    }

    std::vector<EvalMetrics> rows;
    for (int i = 0; i < kDetectorKindCount; ++i) {
        const auto kind = static_cast<DetectorKind>(i);
        const auto it = labels.units.find(kind);
        if (it == labels.units.end() || it->second.empty()) continue;
        const auto built = build_confusion(predictions[kind], it->second);
        DetectorEval ev;
        ev.cm = built.cm;
        ev.excluded = built.excluded;
        ev.metrics = compute_metrics(built.cm);
        if (built.excluded > 0) {
            report.notes.push_back(std::string(to_string(kind)) + ": excluded " +
                                   std::to_string(built.excluded) + " inapplicable labeled units");
        }
        rows.push_back(ev.metrics);
        report.per_detector[kind] = std::move(ev);
    }
    report.macro = macro_average(rows);
    return report;
}

namespace {

std::string metric_cell(const std::optional<double>& v) {
    if (!v) return "   n/a";
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    out << *v;
    return out.str();
}

}  // namespace

std::string format_eval_table(const EvalReport& report) {
    std::ostringstream out;
    out << "detector            tp    fp    fn    tn    accuracy precision recall  f1      fpr     fnr\n";
    auto row = [&](const std::string& name, const DetectorEval& ev) {
        char counts[64];
        std::snprintf(counts, sizeof(counts), "%-19s %-5ld %-5ld %-5ld %-5ld ", name.c_str(),
                      ev.cm.tp, ev.cm.fp, ev.cm.fn, ev.cm.tn);
        out << counts << metric_cell(ev.metrics.accuracy) << "   " << metric_cell(ev.metrics.precision)
            << "    " << metric_cell(ev.metrics.recall) << "  " << metric_cell(ev.metrics.f1) << "  "
            << metric_cell(ev.metrics.fpr) << "  " << metric_cell(ev.metrics.fnr) << "\n";
    };
    for (const auto& [kind, ev] : report.per_detector) row(to_string(kind), ev);
    DetectorEval macro_row;
    macro_row.metrics = report.macro;
    row("macro_average", macro_row);
    return out.str();
}

std::string eval_report_json(const EvalReport& report) {
    json j;
    j["schema_version"] = 1;
    auto metrics_json = [](const EvalMetrics& m) {
        json out;
        auto put = [&](const char* key, const std::optional<double>& v) {
            if (v) out[key] = *v;
            else out[key] = nullptr;
        };
        put("accuracy", m.accuracy);
        put("precision", m.precision);
        put("recall", m.recall);
        put("f1", m.f1);
        put("fpr", m.fpr);
        put("fnr", m.fnr);
        return out;
    };
    json detectors;
    for (const auto& [kind, ev] : report.per_detector) {
        json d;
        d["confusion"] = {{"tp", ev.cm.tp}, {"fp", ev.cm.fp}, {"fn", ev.cm.fn}, {"tn", ev.cm.tn}};
        d["excluded"] = ev.excluded;
        d["metrics"] = metrics_json(ev.metrics);
        detectors[to_string(kind)] = std::move(d);
    }
    j["detectors"] = std::move(detectors);
    j["macro_average"] = metrics_json(report.macro);
    j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

}  // namespace motorlint
