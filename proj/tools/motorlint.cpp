// motorlint: a lint tool for motor-impairment accessibility issues in mobile
// app UI captures (screenshot + uiautomator hierarchy pairs).
//
// Exit codes: 0 = clean, 1 = violations found, 2 = operational error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "motorlint/capture.hpp"
#include "motorlint/config.hpp"
#include "motorlint/detectors.hpp"
#include "motorlint/errors.hpp"
#include "motorlint/eval.hpp"
#include "motorlint/icons.hpp"
#include "motorlint/report.hpp"
#include "motorlint/synthetic.hpp"

namespace {

using namespace motorlint;

constexpr int kExitClean = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ToolConfig load_config(const std::string& config_path) {
    if (!config_path.empty()) return ToolConfig::load(config_path);
    if (const char* env = std::getenv("MOTORLINT_CONFIG"); env && *env)
        return ToolConfig::load(env);
    return ToolConfig{};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
}

struct ScanWiring {
    ClosureLexicon lexicon = ClosureLexicon::default_lexicon();
    std::unique_ptr<IconDetector> icons;
    NullTextExtractor text;
    ScanDeps deps;

    explicit ScanWiring(const ToolConfig& config) {
        if (!config.lexicon_path.empty())
            lexicon = lexicon.merge_words_file(config.lexicon_path);
        icons = std::make_unique<TemplateMatchDetector>(default_icon_bank(),
                                                        config.matcher_params());
        deps.lexicon = &lexicon;
        deps.icon_detector = icons.get();
        deps.text_extractor = &text;
    }
};

int cmd_scan(const std::string& capture_dir, const std::string& out_md,
             const std::string& out_json, const ToolConfig& config, int jobs,
             std::string timestamp) {
    const LoadResult loaded = load_capture(capture_dir);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";

    ScanWiring wiring(config);
    ScanDocument doc;
    doc.result = scan_app(loaded.capture, config, wiring.deps, jobs);
    doc.generated_at = timestamp.empty() ? utc_now() : std::move(timestamp);

    ReportTemplates templates = config.templates_dir.empty()
                                    ? ReportTemplates::defaults()
                                    : ReportTemplates::load_dir(config.templates_dir);
    write_file(out_md, render_markdown(doc, templates));
    write_file(out_json, render_json(doc));

    const auto violations = all_violations(doc.result);
    for (const auto& v : violations) {
        std::cout << to_string(v.kind) << " " << doc.result.app_id << "/" << v.screen_name;
        if (v.second_screen) std::cout << "," << *v.second_screen;
        std::cout << " element=" << v.element_id.value_or("(no id)") << " bounds="
                  << to_string(v.bounds) << "\n";
    }
    std::cout << doc.result.app_id << ": " << violations.size() << " violation"
              << (violations.size() == 1 ? "" : "s") << " across " << doc.result.screens.size()
              << " screens (report: " << out_md << ")\n";
    return violations.empty() ? kExitClean : kExitViolations;
}

int cmd_eval(const std::string& capture_root, const std::string& labels_path,
             const std::string& out_json, const ToolConfig& config, int jobs) {
    const GroundTruthLabels labels = GroundTruthLabels::load(labels_path);
    ScanWiring wiring(config);
    const EvalReport report = run_eval(capture_root, labels, config, wiring.deps, jobs);
    for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
    std::cout << format_eval_table(report);
    if (!out_json.empty()) write_file(out_json, eval_report_json(report));
    return kExitClean;
}

int cmd_gensynth(const std::string& backgrounds_dir, const std::string& out_dir, int count,
                 double split, std::uint32_t seed) {
    namespace fs = std::filesystem;
    std::vector<Image> backgrounds;
    if (fs::is_directory(backgrounds_dir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(backgrounds_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".png")
                files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) backgrounds.push_back(load_png(f));
    }
    if (backgrounds.empty())
        throw InvalidParams("no .png backgrounds found in " + backgrounds_dir);

    const auto [train, test] =
        write_synthetic_dataset(out_dir, backgrounds, variant_icon_bank(), count, split, seed);
    std::cout << "wrote " << (train + test) << " images to " << out_dir << " (train " << train
              << ", test " << test << ")\n";
    return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detects motor-impairment accessibility guideline violations in "
                 "screenshot + uiautomator hierarchy captures"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string dump_config_path;
    int jobs = 1;
    app.add_option("--config", config_path, "Config file (key = value lines)");
    app.add_option("--dump-config", dump_config_path, "Write the effective config to a file");
    app.add_option("--jobs", jobs, "Worker threads for per-screen scanning")
        ->check(CLI::PositiveNumber);

    auto* scan = app.add_subcommand("scan", "Scan one app capture directory and write reports");
    std::string capture_dir, out_md = "motorlint_report.md", out_json = "motorlint_report.json";
    std::string timestamp;
    scan->add_option("capture_dir", capture_dir, "Directory of <name>.png/<name>.xml pairs")
        ->required();
    scan->add_option("--out-md", out_md, "Markdown report path");
    scan->add_option("--out-json", out_json, "JSON report path");
    scan->add_option("--timestamp", timestamp,
                     "Timestamp recorded in the report (defaults to current UTC time)");

    auto* eval = app.add_subcommand("eval", "Score the detectors against labeled captures");
    std::string capture_root, labels_path, eval_out_json;
    eval->add_option("capture_root", capture_root, "Directory of app capture directories")
        ->required();
    eval->add_option("--labels", labels_path, "Ground-truth labels JSON")->required();
    eval->add_option("--out-json", eval_out_json, "Metrics JSON output path");

    auto* gensynth =
        app.add_subcommand("gensynth", "Generate a synthetic icon-detection dataset");
    std::string backgrounds_dir, synth_out_dir;
    int count = 0;
    double split = 0.8;
    bool seed_given = false;
    std::uint32_t seed = 0;
    gensynth->add_option("backgrounds_dir", backgrounds_dir, "Directory of background PNGs")
        ->required();
    gensynth->add_option("out_dir", synth_out_dir, "Output directory")->required();
    gensynth->add_option("--count", count, "Number of images to generate")->required();
    gensynth->add_option("--split", split, "Train fraction (0..1)");
    gensynth->add_option("--seed", seed, "RNG seed (defaults to the config seed)")
        ->each([&](const std::string&) { seed_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        const ToolConfig config = load_config(config_path);
        if (!dump_config_path.empty()) write_file(dump_config_path, config.serialize());
        if (scan->parsed())
            return cmd_scan(capture_dir, out_md, out_json, config, jobs, timestamp);
        if (eval->parsed()) return cmd_eval(capture_root, labels_path, eval_out_json, config, jobs);
        if (gensynth->parsed())
            return cmd_gensynth(backgrounds_dir, synth_out_dir, count, split,
                                seed_given ? seed : config.seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
