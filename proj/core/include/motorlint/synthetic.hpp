#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "motorlint/icons.hpp"
#include "motorlint/image.hpp"

namespace motorlint {

// Canvas every synthetic sample is composed on.
constexpr int kSyntheticCanvasWidth = 1920;
constexpr int kSyntheticCanvasHeight = 1080;

struct SyntheticSample {
    std::string name;  // img_000000, img_000001, ...
    Image image;
    IconKind kind;
    Rect rect;  // ground-truth icon box
    bool train = false;
};

struct SyntheticDataset {
    std::vector<SyntheticSample> train;
    std::vector<SyntheticSample> test;
};

// Train/test sizes for a count and split ratio: train = round(count * ratio).
std::pair<int, int> split_counts(int count, double split_ratio);

// Streams `count` generated samples, one at a time, in index order. Each
// sample is one background with exactly one icon pasted at a uniformly
// random location; icon height is uniform in 2..10% of the canvas major
// dimension, clamped to [38, 192] px; kinds rotate round-robin so the set
// stays balanced. Pure function of (inputs, seed).
void generate_synthetic_stream(const std::vector<Image>& backgrounds,
                               const std::vector<IconTemplate>& bank, int count,
                               double split_ratio, std::uint32_t seed,
                               const std::function<void(const SyntheticSample&)>& sink);

// In-memory convenience for small counts.
SyntheticDataset generate_synthetic_dataset(const std::vector<Image>& backgrounds,
                                            const std::vector<IconTemplate>& bank, int count,
                                            double split_ratio, std::uint32_t seed);

// Writes PNGs plus a manifest.json into out_dir; returns (train, test) sizes.
std::pair<int, int> write_synthetic_dataset(const std::filesystem::path& out_dir,
                                            const std::vector<Image>& backgrounds,
                                            const std::vector<IconTemplate>& bank, int count,
                                            double split_ratio, std::uint32_t seed);

}  // namespace motorlint
