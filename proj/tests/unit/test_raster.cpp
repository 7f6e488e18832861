#include <doctest.h>

#include "kage/raster.hpp"

using namespace kage;

namespace {

int count_color(const Frame& f, Rgb c) {
    int n = 0;
    for (int y = 0; y < f.height(); ++y)
        for (int x = 0; x < f.width(); ++x) n += f.at(y, x) == c;
    return n;
}

const Rgb kRed{255, 0, 0};

}  // namespace

TEST_CASE("square of size 4 covers a 4x4 block") {
    const Frame f = rasterize_shape(Frame(20, 20), ShapeType::Square, kRed, 10, 10, 4, 0);
    CHECK(count_color(f, kRed) == 16);
    for (int y = 8; y < 12; ++y)
        for (int x = 8; x < 12; ++x) CHECK(f.at(y, x) == kRed);
}

TEST_CASE("circles ignore rotation") {
    for (double angle : {0.0, 17.0, 45.0, 90.0, 271.5}) {
        const Frame a = rasterize_shape(Frame(32, 32), ShapeType::Circle, kRed, 15.3, 16.1, 11, 0);
        const Frame b =
            rasterize_shape(Frame(32, 32), ShapeType::Circle, kRed, 15.3, 16.1, 11, angle);
        CHECK(a == b);
    }
}

TEST_CASE("a square rotated by 90 degrees about a pixel corner is unchanged") {
    const Frame a = rasterize_shape(Frame(32, 32), ShapeType::Square, kRed, 16, 16, 8, 0);
    const Frame b = rasterize_shape(Frame(32, 32), ShapeType::Square, kRed, 16, 16, 8, 90);
    CHECK(a == b);
}

TEST_CASE("every shape draws something and stays in its bounding circle") {
    for (auto name : shape_names()) {
        const ShapeType s = *parse_shape(name);
        CAPTURE(name);
        const Frame f = rasterize_shape(Frame(40, 40), s, kRed, 20, 20, 12, 30);
        CHECK(count_color(f, kRed) > 0);
        for (int y = 0; y < 40; ++y)
            for (int x = 0; x < 40; ++x) {
                if (f.at(y, x) != kRed) continue;
                const double dx = x + 0.5 - 20, dy = y + 0.5 - 20;
                CHECK(dx * dx + dy * dy <= 6.0 * 6.0 * 2.0 + 1e-9);
            }
    }
}

TEST_CASE("shapes fully off canvas leave it untouched") {
    const Frame blank(16, 16, {1, 2, 3});
    for (auto name : shape_names()) {
        const ShapeType s = *parse_shape(name);
        CHECK(rasterize_shape(blank, s, kRed, -40, 8, 10, 0) == blank);
        CHECK(rasterize_shape(blank, s, kRed, 8, 60, 10, 45) == blank);
    }
}

TEST_CASE("partially visible shapes are clipped") {
    const Frame f = rasterize_shape(Frame(8, 8), ShapeType::Square, kRed, 0, 0, 4, 0);
    CHECK(count_color(f, kRed) == 4);
}

TEST_CASE("blit honors alpha and mirroring") {
    RgbaImage sprite(1, 2);
    auto* left = sprite.pixel(0, 0);
    left[0] = 10; left[1] = 20; left[2] = 30; left[3] = 255;
    auto* right = sprite.pixel(0, 1);
    right[0] = 99; right[3] = 127;
    Frame f(1, 4);
    blit_sprite(f.view(), sprite, 1, 0, false);
    CHECK(f.at(0, 1) == Rgb{10, 20, 30});
    CHECK(f.at(0, 2) == Rgb{});
    Frame g(1, 4);
    blit_sprite(g.view(), sprite, 1, 0, true);
    CHECK(g.at(0, 1) == Rgb{});
    CHECK(g.at(0, 2) == Rgb{10, 20, 30});
    Frame h(1, 4);
    blit_sprite(h.view(), sprite, -1, 0, false);
    CHECK(h == Frame(1, 4));
}

TEST_CASE("fill_rect clips") {
    Frame f(4, 4);
    fill_rect(f.view(), -2, -2, 4, 4, kRed);
    CHECK(count_color(f, kRed) == 4);
}
