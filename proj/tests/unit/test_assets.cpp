#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "kage/assets.hpp"
#include "kage/errors.hpp"
#include "kage/image_io.hpp"

using namespace kage;
namespace fs = std::filesystem;

TEST_CASE("placeholder generator shapes and counts") {
    const auto a = generate_placeholder_assets(make_key(1), 7, 3);
    REQUIRE(a.backgrounds.size() == 7);
    REQUIRE(a.skins.size() == 3);
    for (const auto& bg : a.backgrounds) {
        CHECK(bg.height() == kPlaceholderBackgroundHeight);
        CHECK(bg.width() == kPlaceholderBackgroundWidth);
    }
    for (const auto& s : a.skins) {
        CHECK(s.frames.size() == kPlaceholderWalkFrames);
        for (const auto& f : s.frames) {
            CHECK(f.height() == kPlaceholderSpriteHeight);
            CHECK(f.width() == kPlaceholderSpriteWidth);
        }
    }
}

TEST_CASE("placeholder generator is deterministic in its key") {
    const auto a = generate_placeholder_assets(make_key(5), 4, 2);
    const auto b = generate_placeholder_assets(make_key(5), 4, 2);
    const auto c = generate_placeholder_assets(make_key(6), 4, 2);
    CHECK(a.backgrounds == b.backgrounds);
    CHECK(a.skins[1].frames == b.skins[1].frames);
    CHECK(a.backgrounds != c.backgrounds);
}

TEST_CASE("built-in backgrounds have pairwise distinct mean colors") {
    const auto& bgs = builtin_backgrounds();
    REQUIRE(bgs.size() == static_cast<std::size_t>(kBuiltinBackgroundCount));
    std::vector<std::array<double, 3>> means;
    for (const auto& b : bgs) means.push_back(mean_rgb(b));
    double closest = 1e9;
    for (std::size_t i = 0; i < means.size(); ++i)
        for (std::size_t j = i + 1; j < means.size(); ++j) {
            double d2 = 0;
            for (int c = 0; c < 3; ++c) d2 += (means[i][c] - means[j][c]) * (means[i][c] - means[j][c]);
            closest = std::min(closest, std::sqrt(d2));
        }
    CHECK(closest > 8.0);
}

TEST_CASE("built-in skins are named, opaque somewhere and visually distinct") {
    const auto& skins = builtin_skins();
    REQUIRE(skins.size() == 27);
    REQUIRE(builtin_skin_names().size() == 27);
    for (std::size_t i = 0; i < skins.size(); ++i) {
        CHECK(skins[i].name == builtin_skin_names()[i]);
        const auto m = mean_rgb(skins[i].frames[0]);
        CHECK(m[0] + m[1] + m[2] > 0);
    }
    CHECK(skins[0].frames[0] != skins[1].frames[0]);
    // Walk cycle frames differ from each other.
    CHECK(skins[0].frames[0] != skins[0].frames[1]);
}

TEST_CASE("load_assets resolves built-in sources") {
    EnvConfig c;
    c.background.mode = "image";
    c.background.image_path = "builtin:bg-3";
    c.character.sprite_dir = "builtin:knight";
    const auto lib = load_assets(c);
    REQUIRE(lib.backgrounds.size() == 1);
    CHECK(lib.backgrounds[0]->height() == c.screen.H);
    REQUIRE(lib.agent_skins.size() == 1);
    CHECK(lib.agent_skins[0]->name == "knight");
    CHECK(lib.agent_skins[0]->frames[0].height() == c.character.height);
    CHECK(lib.agent_skins[0]->frames[0].width() == c.character.width);

    c.background.image_path = "builtin";
    CHECK(load_assets(c).backgrounds.size() == static_cast<std::size_t>(kBuiltinBackgroundCount));
}

TEST_CASE("unknown built-ins and empty sources") {
    EnvConfig c;
    c.background.mode = "image";
    c.background.image_path = "builtin:bg-999";
    CHECK_THROWS_AS(load_assets(c), AssetError);
    c.background.image_path.clear();
    c.background.image_dir = (fs::temp_directory_path() / "kage-empty-dir-that-does-not-exist").string();
    CHECK_NOTHROW(load_assets(c));
    CHECK_THROWS_AS(load_assets(c, AssetOptions{false}), AssetError);
    c = EnvConfig{};
    c.character.sprite_dir = "builtin:nobody";
    CHECK_THROWS_AS(load_assets(c), AssetError);
}

TEST_CASE("images and sprite directories load from disk") {
    const fs::path dir = fs::temp_directory_path() / "kage-test-assets";
    fs::remove_all(dir);
    fs::create_directories(dir / "skin" );
    Frame bg(64, 32, {10, 20, 30});
    write_png((dir / "bg.png").string(), bg);
    const auto& skin = builtin_skins()[2];
    for (std::size_t i = 0; i < skin.frames.size(); ++i)
        write_png((dir / "skin" / ("f" + std::to_string(i) + ".png")).string(), skin.frames[i]);

    EnvConfig c;
    c.background.mode = "image";
    c.background.image_path = (dir / "bg.png").string();
    c.character.sprite_dir = dir.string();
    const auto lib = load_assets(c);
    REQUIRE(lib.agent_skins.size() == 1);
    CHECK(lib.agent_skins[0]->name == "skin");
    REQUIRE(lib.backgrounds.size() == 1);
    CHECK(lib.backgrounds[0]->height() == 128);
    CHECK(lib.backgrounds[0]->width() == 64);
    CHECK(lib.backgrounds[0]->at(5, 5) == Rgb{10, 20, 30});

    const SpriteSet loaded = load_sprite_dir((dir / "skin").string());
    CHECK(loaded.frames == skin.frames);
    fs::remove_all(dir);
}
