#include <doctest.h>

#include <nlohmann/json.hpp>

#include "../common/testutil.hpp"
#include "motorlint/errors.hpp"
#include "motorlint/synthetic.hpp"

using namespace motorlint;
namespace tu = motorlint::testutil;

TEST_CASE("split_counts reproduces the 80/20 split") {
    CHECK(split_counts(7290, 0.8) == std::pair<int, int>{5832, 1458});
    CHECK(split_counts(10, 0.8) == std::pair<int, int>{8, 2});
    CHECK(split_counts(1, 0.5) == std::pair<int, int>{1, 0});  // rounds up at .5
    CHECK_THROWS_AS(split_counts(0, 0.8), InvalidParams);
    CHECK_THROWS_AS(split_counts(10, 0.0), InvalidParams);
    CHECK_THROWS_AS(split_counts(10, 1.0), InvalidParams);
    CHECK_THROWS_AS(split_counts(10, 1.5), InvalidParams);
}

namespace {

std::vector<Image> plain_backgrounds() {
    return {Image(kSyntheticCanvasWidth, kSyntheticCanvasHeight, Color{235, 235, 235}),
            Image(kSyntheticCanvasWidth, kSyntheticCanvasHeight, Color{210, 218, 226})};
}

}  // namespace

TEST_CASE("generated samples respect the size and placement contract") {
    const auto dataset =
        generate_synthetic_dataset(plain_backgrounds(), variant_icon_bank(), 18, 0.75, 42);
    CHECK(dataset.train.size() == 14);  // round(18 * 0.75)
    CHECK(dataset.test.size() == 4);

    int kind_counts[kIconKindCount] = {0};
    for (const auto& set : {dataset.train, dataset.test}) {
        for (const auto& s : set) {
            CHECK(s.image.width == kSyntheticCanvasWidth);
            CHECK(s.image.height == kSyntheticCanvasHeight);
            CHECK(s.rect.height() >= 38);
            CHECK(s.rect.height() <= 192);
            CHECK(s.rect.width() == s.rect.height());
            CHECK(contains(Rect{0, 0, kSyntheticCanvasWidth, kSyntheticCanvasHeight}, s.rect));
            ++kind_counts[static_cast<int>(s.kind)];
        }
    }
    for (int n : kind_counts) CHECK(n == 3);  // 18 samples round-robin over 6 kinds
}

TEST_CASE("generation is a pure function of inputs and seed") {
    const auto backgrounds = plain_backgrounds();
    const auto bank = variant_icon_bank();
    const auto a = generate_synthetic_dataset(backgrounds, bank, 6, 0.5, 7);
    const auto b = generate_synthetic_dataset(backgrounds, bank, 6, 0.5, 7);
    REQUIRE(a.train.size() == b.train.size());
    for (size_t i = 0; i < a.train.size(); ++i) {
        CHECK(a.train[i].image == b.train[i].image);
        CHECK(a.train[i].rect == b.train[i].rect);
        CHECK(a.train[i].kind == b.train[i].kind);
    }
    const auto c = generate_synthetic_dataset(backgrounds, bank, 6, 0.5, 8);
    bool any_differs = false;
    for (size_t i = 0; i < a.train.size(); ++i)
        if (!(a.train[i].rect == c.train[i].rect)) any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("write_synthetic_dataset emits PNGs and a manifest") {
    tu::TempDir dir;
    const auto [train, test] = write_synthetic_dataset(dir.path() / "out", plain_backgrounds(),
                                                       variant_icon_bank(), 8, 0.75, 3);
    CHECK(train == 6);
    CHECK(test == 2);

    const auto manifest = nlohmann::json::parse(tu::read_text(dir.path() / "out" / "manifest.json"));
    CHECK(manifest["schema_version"] == 1);
    CHECK(manifest["train"] == 6);
    CHECK(manifest["test"] == 2);
    REQUIRE(manifest["records"].size() == 8);
    for (const auto& rec : manifest["records"]) {
        CHECK(std::filesystem::exists(dir.path() / "out" / rec["file"].get<std::string>()));
        const auto r = rec["rect"];
        CHECK(r[3].get<int>() - r[1].get<int>() >= 38);
        CHECK(r[3].get<int>() - r[1].get<int>() <= 192);
    }

    // same seed -> identical manifest bytes
    tu::TempDir dir2;
    write_synthetic_dataset(dir2.path() / "out", plain_backgrounds(), variant_icon_bank(), 8, 0.75,
                            3);
    CHECK(tu::read_text(dir.path() / "out" / "manifest.json") ==
          tu::read_text(dir2.path() / "out" / "manifest.json"));
    CHECK(tu::read_text(dir.path() / "out" / "img_000000.png") ==
          tu::read_text(dir2.path() / "out" / "img_000000.png"));
}

TEST_CASE("generator validates its parameters") {
    const auto bank = default_icon_bank();
    CHECK_THROWS_AS(generate_synthetic_dataset({}, bank, 4, 0.5, 1), InvalidParams);
    CHECK_THROWS_AS(generate_synthetic_dataset(plain_backgrounds(), {}, 4, 0.5, 1), InvalidParams);
    CHECK_THROWS_AS(generate_synthetic_dataset(plain_backgrounds(), bank, 4, 1.5, 1),
                    InvalidParams);
}
