#include <doctest.h>

#include "kage/env.hpp"
#include "kage/renderer.hpp"
#include "support/fixtures.hpp"

using namespace kage;

namespace {

LatentState bare_state(const EnvConfig& c, int ground_y) {
    LatentState s;
    auto hf = std::make_shared<Heightfield>();
    hf->ground_y.assign(static_cast<std::size_t>(c.layout.length), ground_y);
    hf->thickness = 2;
    hf->color = {0, 255, 255};
    s.heightfield = hf;
    s.agent.x = -1000;  // off screen
    s.agent.y = ground_y;
    return s;
}

EnvConfig bare_config() {
    EnvConfig c = testing::flat_config();
    c.npc.enabled = false;
    c.npc.sticky_enabled = false;
    c.distractors.enabled = false;
    c.effects.point_light_enabled = false;
    return c;
}

Frame stripes(int h, int w) {
    Frame f(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.set(y, x, {static_cast<std::uint8_t>(x * 7), static_cast<std::uint8_t>(y), 9});
    return f;
}

}  // namespace

TEST_CASE("black scene with only terrain") {
    const EnvConfig c = bare_config();
    const Renderer r(c);
    const Frame f = r.render(bare_state(c, 100), make_key(0));
    for (int y = 0; y < f.height(); ++y)
        for (int x = 0; x < f.width(); ++x) {
            const Rgb want = (y == 100 || y == 101) ? Rgb{0, 255, 255} : Rgb{};
            REQUIRE(f.at(y, x) == want);
        }
}

TEST_CASE("background scrolls with the parallax factor") {
    EnvConfig c = bare_config();
    c.background.mode = "image";
    c.background.parallax_factor = 1.0;
    AssetLibrary lib;
    lib.backgrounds.push_back(std::make_shared<const Frame>(stripes(128, 300)));
    const Renderer r(c, lib);
    LatentState s = bare_state(c, 5000);
    const Frame a = r.render_scene(s);
    s.camera_x = 10;
    const Frame b = r.render_scene(s);
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x + 10 < 128; ++x) REQUIRE(b.at(y, x) == a.at(y, x + 10));

    c.background.parallax_factor = 0.5;
    const Renderer half(c, lib);
    s.camera_x = 20;
    const Frame h = half.render_scene(s);
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x + 10 < 128; ++x) REQUIRE(h.at(y, x) == a.at(y, x + 10));

    // Tiling wraps around the image width.
    s.camera_x = 300;
    c.background.parallax_factor = 1.0;
    CHECK(Renderer(c, lib).render_scene(s) == a);
}

TEST_CASE("rendering is a pure function of state and key") {
    const EnvConfig c = testing::flat_config();
    const Environment env(c);
    const auto [obs, s] = env.reset(make_key(3));
    const Frame again = env.renderer().render(s, make_key(99));
    CHECK(env.renderer().render(s, make_key(99)) == again);
    CHECK(env.renderer().render_scene(s) == env.renderer().render_scene(s));
}

TEST_CASE("sticky NPC sits at its screen offset") {
    EnvConfig c = bare_config();
    c.npc.sticky_enabled = true;
    const Renderer r(c);
    LatentState s = bare_state(c, 100);
    StickyNpcState sticky;
    sticky.x_offset = 20;
    sticky.y_offset = -5;
    s.sticky.push_back(sticky);
    const Frame f = r.render_scene(s);
    const auto& img = r.assets().sticky_skins[0]->frames[0];
    const int left = 64 + 20 - img.width() / 2;
    const int top = 95 - img.height();
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const auto* p = img.pixel(y, x);
            if (p[3] >= 128) REQUIRE(f.at(top + y, left + x) == Rgb{p[0], p[1], p[2]});
        }
    // Sticky NPCs move with the camera.
    s.camera_x = 50;
    CHECK(r.render_scene(s) == f);
}

TEST_CASE("agent sprite is anchored at its feet and mirrors when facing left") {
    EnvConfig c = bare_config();
    c.character.enable_animation = false;
    const Renderer r(c);
    LatentState s = bare_state(c, 100);
    s.agent.x = 40;
    s.agent.y = 100;
    const Frame right = r.render_scene(s);
    const auto& img = r.assets().agent_skins[0]->frames[0];
    const int left = 40 - img.width() / 2, top = 100 - img.height();
    int drawn = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const auto* p = img.pixel(y, x);
            if (p[3] < 128) continue;
            ++drawn;
            REQUIRE(right.at(top + y, left + x) == Rgb{p[0], p[1], p[2]});
        }
    CHECK(drawn > 0);
    s.agent.facing_left = true;
    CHECK(r.render_scene(s) != right);
}

TEST_CASE("animation frame index") {
    CHECK(Renderer::animation_frame(0, 12, 4) == 0);
    CHECK(Renderer::animation_frame(2.4, 12, 4) == 0);
    CHECK(Renderer::animation_frame(2.5, 12, 4) == 1);
    CHECK(Renderer::animation_frame(10, 12, 4) == 0);
    CHECK(Renderer::animation_frame(5, 12, 0) == 0);
}

TEST_CASE("filters change pixels, not the scene") {
    EnvConfig c = testing::flat_config();
    EnvConfig f = c;
    f.filters.brightness = 0.3;
    const Environment a(c), b(f);
    const auto sa = a.reset(make_key(4)).second;
    const auto sb = b.reset(make_key(4)).second;
    CHECK(sa == sb);
    CHECK(a.renderer().render_scene(sa) == b.renderer().render_scene(sb));
    CHECK(a.renderer().render(sa, make_key(1)) != b.renderer().render(sb, make_key(1)));
}
