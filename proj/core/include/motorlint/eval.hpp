#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motorlint/config.hpp"
#include "motorlint/detectors.hpp"
#include "motorlint/violations.hpp"

namespace motorlint {

constexpr int kLabelsSchemaVersion = 1;

struct ConfusionMatrix {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;

    long total() const { return tp + fp + fn + tn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

// Each metric is nullopt exactly when its denominator is zero.
struct EvalMetrics {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> fpr;  // FP / (FP + TN)
    std::optional<double> fnr;  // FN / (FN + TP), the miss rate

    bool operator==(const EvalMetrics&) const = default;
};

EvalMetrics compute_metrics(const ConfusionMatrix& cm);

// Ground-truth violation labels per detector. Units are "<app>/<screen>"
// for the three screen-level detectors and "<app>" for persisting elements.
struct GroundTruthLabels {
    std::map<DetectorKind, std::map<std::string, bool>> units;

    static GroundTruthLabels parse(const std::string& json_text);
    static GroundTruthLabels load(const std::filesystem::path& path);
};

struct Prediction {
    bool applicable = true;
    bool violation = false;
};

struct ConfusionBuildResult {
    ConfusionMatrix cm;
    long excluded = 0;  // labeled units the detector was inapplicable for
};

// Counts per the usual definitions: a labeled unit predicted positive is tp
// (label true) or fp (label false), etc. Inapplicable units are excluded and
// counted; units with no prediction at all raise MissingPrediction.
ConfusionBuildResult build_confusion(const std::map<std::string, Prediction>& predictions,
                                     const std::map<std::string, bool>& labels);

struct DetectorEval {
    ConfusionMatrix cm;
    EvalMetrics metrics;
    long excluded = 0;
};

struct EvalReport {
    std::map<DetectorKind, DetectorEval> per_detector;
    EvalMetrics macro;  // unweighted mean over detectors with defined values
    std::vector<std::string> notes;
};

// Unweighted mean of each metric over the rows where it is defined.
EvalMetrics macro_average(const std::vector<EvalMetrics>& rows);

// Scans every app under capture_root (a directory of capture directories,
// or itself a single capture directory) and scores the verdicts against the
// labels.
EvalReport run_eval(const std::filesystem::path& capture_root, const GroundTruthLabels& labels,
                    const ToolConfig& config = {}, const ScanDeps& deps = {}, int jobs = 1);

// Fixed-width table, metrics at four decimals, "n/a" for undefined.
std::string format_eval_table(const EvalReport& report);
std::string eval_report_json(const EvalReport& report);

}  // namespace motorlint
