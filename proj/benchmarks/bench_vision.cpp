#include <benchmark/benchmark.h>

#include "motorlint/icons.hpp"
#include "motorlint/vision.hpp"

using namespace motorlint;

namespace {

Crop glyph_crop(int size) {
    Image img(size, size, Color{250, 250, 250});
    fill_rect(img, Rect{size / 4, size / 4, 3 * size / 4, 3 * size / 4}, Color{30, 30, 30});
    Crop c;
    c.origin = img.rect();
    c.pixels = std::move(img);
    return c;
}

}  // namespace

static void BM_VisualBounds(benchmark::State& state) {
    const Crop c = glyph_crop(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(visual_bounds(c));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_VisualBounds)->Arg(90)->Arg(256);

static void BM_Similarity(benchmark::State& state) {
    const Crop a = glyph_crop(static_cast<int>(state.range(0)));
    const Crop b = glyph_crop(static_cast<int>(state.range(0)) / 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(similarity(a, b));
    }
}
BENCHMARK(BM_Similarity)->Arg(64)->Arg(200);

static void BM_DetectClosureIcons(benchmark::State& state) {
    Image img(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) * 3 / 4,
              Color{245, 245, 245});
    const auto bank = default_icon_bank();
    paste_icon(img, bank[static_cast<size_t>(IconKind::Cross)], 46, img.width / 2, img.height / 2,
               Color{25, 25, 25});
    Crop c;
    c.origin = img.rect();
    c.pixels = std::move(img);
    const TemplateMatchDetector detector;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detector.detect(c, 760));
    }
}
BENCHMARK(BM_DetectClosureIcons)->Arg(420)->Unit(benchmark::kMillisecond);

static void BM_RenderIconTemplate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_icon_template(IconKind::Done, 128));
    }
}
BENCHMARK(BM_RenderIconTemplate);

BENCHMARK_MAIN();
