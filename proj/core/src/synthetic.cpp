#include "motorlint/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "motorlint/errors.hpp"

namespace motorlint {

namespace {

constexpr int kMinIconPx = 38;
constexpr int kMaxIconPx = 192;

const std::vector<Color>& ink_palette() {
    static const std::vector<Color> palette = {
        Color{24, 24, 24},   Color{52, 52, 52},  Color{16, 42, 96},
        Color{96, 24, 24},   Color{12, 72, 44},  Color{72, 40, 104},
        Color{104, 64, 12},
    };
    return palette;
}

std::string sample_name(int index) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "img_%06d", index);
    return buf;
}

}  // namespace

std::pair<int, int> split_counts(int count, double split_ratio) {
    if (count < 1) throw InvalidParams("count must be >= 1");
    if (!(split_ratio > 0.0 && split_ratio < 1.0))
        throw InvalidParams("split_ratio must be in (0, 1)");
    const int train = static_cast<int>(std::llround(count * split_ratio));
    return {train, count - train};
}

void generate_synthetic_stream(const std::vector<Image>& backgrounds,
                               const std::vector<IconTemplate>& bank, int count,
                               double split_ratio, std::uint32_t seed,
                               const std::function<void(const SyntheticSample&)>& sink) {
    const auto [n_train, n_test] = split_counts(count, split_ratio);
    (void)n_test;
    if (backgrounds.empty()) throw InvalidParams("at least one background image is required");
    if (bank.empty()) throw InvalidParams("icon bank is empty");
    for (const Image& bg : backgrounds) {
        if (bg.width <= 0 || bg.height <= 0) throw InvalidParams("background image is empty");
    }

    // Per-kind variant pools so the round-robin can pick any style of a kind.
    std::vector<std::vector<size_t>> by_kind(kIconKindCount);
    for (size_t i = 0; i < bank.size(); ++i)
        by_kind[static_cast<size_t>(bank[i].kind)].push_back(i);
    std::vector<int> kinds_present;
    for (int k = 0; k < kIconKindCount; ++k)
        if (!by_kind[static_cast<size_t>(k)].empty()) kinds_present.push_back(k);

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> height_frac(0.02, 0.10);
    const int major = std::max(kSyntheticCanvasWidth, kSyntheticCanvasHeight);

    for (int i = 0; i < count; ++i) {
        SyntheticSample sample;
        sample.name = sample_name(i);
        sample.train = i < n_train;

        const size_t bg_idx =
            backgrounds.size() == 1
                ? 0
                : std::uniform_int_distribution<size_t>(0, backgrounds.size() - 1)(rng);
        const Image& bg = backgrounds[bg_idx];
        sample.image = (bg.width == kSyntheticCanvasWidth && bg.height == kSyntheticCanvasHeight)
                           ? bg
                           : resize_nearest(bg, kSyntheticCanvasWidth, kSyntheticCanvasHeight);

        const int kind = kinds_present[static_cast<size_t>(i) % kinds_present.size()];
        const auto& pool = by_kind[static_cast<size_t>(kind)];
        const size_t tpl_idx =
            pool.size() == 1 ? pool[0]
                             : pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
        const IconTemplate& tpl = bank[tpl_idx];

        int h = static_cast<int>(std::lround(height_frac(rng) * major));
        h = std::clamp(h, kMinIconPx, kMaxIconPx);
        const int x =
            std::uniform_int_distribution<int>(0, kSyntheticCanvasWidth - h)(rng);
        const int y =
            std::uniform_int_distribution<int>(0, kSyntheticCanvasHeight - h)(rng);
        const Color ink = ink_palette()[std::uniform_int_distribution<size_t>(
            0, ink_palette().size() - 1)(rng)];

        paste_icon(sample.image, tpl, h, x, y, ink);
        sample.kind = tpl.kind;
        sample.rect = Rect{x, y, x + h, y + h};
        sink(sample);
    }
}

SyntheticDataset generate_synthetic_dataset(const std::vector<Image>& backgrounds,
                                            const std::vector<IconTemplate>& bank, int count,
                                            double split_ratio, std::uint32_t seed) {
    SyntheticDataset out;
    generate_synthetic_stream(backgrounds, bank, count, split_ratio, seed,
                              [&](const SyntheticSample& s) {
                                  (s.train ? out.train : out.test).push_back(s);
                              });
    return out;
}

std::pair<int, int> write_synthetic_dataset(const std::filesystem::path& out_dir,
                                            const std::vector<Image>& backgrounds,
                                            const std::vector<IconTemplate>& bank, int count,
                                            double split_ratio, std::uint32_t seed) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    nlohmann::json records = nlohmann::json::array();
    int n_train = 0, n_test = 0;
    generate_synthetic_stream(backgrounds, bank, count, split_ratio, seed,
                              [&](const SyntheticSample& s) {
                                  const std::string file = s.name + ".png";
                                  save_png(s.image, out_dir / file);
                                  records.push_back({
                                      {"file", file},
                                      {"kind", to_string(s.kind)},
                                      {"rect", {s.rect.left, s.rect.top, s.rect.right, s.rect.bottom}},
                                      {"split", s.train ? "train" : "test"},
                                  });
                                  (s.train ? n_train : n_test)++;
                              });

    nlohmann::json manifest = {
        {"schema_version", 1},
        {"canvas", {kSyntheticCanvasWidth, kSyntheticCanvasHeight}},
        {"count", count},
        {"split_ratio", split_ratio},
        {"seed", seed},
        {"train", n_train},
        {"test", n_test},
        {"records", std::move(records)},
    };
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write manifest to " + out_dir.string());
    out << manifest.dump(2) << "\n";
    return {n_train, n_test};
}

}  // namespace motorlint
