#include "kage/palette.hpp"

#include <array>

namespace kage {

namespace {

// CSS named-color RGB values for every name that CSS defines.
constexpr std::array<NamedColor, 16> kScene{{
    {"black", {0, 0, 0}},         {"white", {255, 255, 255}},  {"red", {255, 0, 0}},
    {"orange", {255, 165, 0}},    {"yellow", {255, 255, 0}},   {"green", {0, 128, 0}},
    {"cyan", {0, 255, 255}},      {"blue", {0, 0, 255}},       {"purple", {128, 0, 128}},
    {"pink", {255, 192, 203}},    {"brown", {165, 42, 42}},    {"gray", {128, 128, 128}},
    {"lime", {0, 255, 0}},        {"teal", {0, 128, 128}},     {"indigo", {75, 0, 130}},
    {"magenta", {255, 0, 255}},
}};

constexpr std::array<NamedColor, 21> kShape{{
    {"red", {255, 0, 0}},        {"green", {0, 128, 0}},      {"blue", {0, 0, 255}},
    {"orange", {255, 165, 0}},   {"yellow", {255, 255, 0}},   {"violet", {238, 130, 238}},
    {"magenta", {255, 0, 255}},  {"cyan", {0, 255, 255}},     {"pink", {255, 192, 203}},
    {"brown", {165, 42, 42}},    {"purple", {128, 0, 128}},   {"lime", {0, 255, 0}},
    {"navy", {0, 0, 128}},       {"maroon", {128, 0, 0}},     {"olive", {128, 128, 0}},
    {"teal", {0, 128, 128}},     {"indigo", {75, 0, 130}},    {"coral", {255, 127, 80}},
    {"gold", {255, 215, 0}},     {"silver", {192, 192, 192}}, {"white", {255, 255, 255}},
}};

// warm_white, cool_white and fire have no CSS name; the rest are CSS.
constexpr std::array<NamedColor, 12> kLight{{
    {"warm_white", {255, 223, 186}}, {"cool_white", {214, 234, 255}}, {"yellow", {255, 255, 0}},
    {"orange", {255, 165, 0}},       {"red", {255, 0, 0}},            {"green", {0, 128, 0}},
    {"cyan", {0, 255, 255}},         {"blue", {0, 0, 255}},           {"purple", {128, 0, 128}},
    {"pink", {255, 192, 203}},       {"gold", {255, 215, 0}},         {"fire", {255, 96, 16}},
}};

constexpr std::array<std::string_view, 9> kShapeNames{
    "circle", "cross", "diamond", "ellipse", "line", "polygon", "square", "star", "triangle"};

}  // namespace

std::span<const NamedColor> scene_palette() { return kScene; }
std::span<const NamedColor> shape_palette() { return kShape; }
std::span<const NamedColor> light_palette() { return kLight; }

std::optional<Rgb> find_color(std::span<const NamedColor> palette, std::string_view name) {
    for (const auto& c : palette)
        if (c.name == name) return c.rgb;
    return std::nullopt;
}

std::span<const std::string_view> shape_names() { return kShapeNames; }

std::optional<ShapeType> parse_shape(std::string_view name) {
    for (std::size_t i = 0; i < kShapeNames.size(); ++i)
        if (kShapeNames[i] == name) return static_cast<ShapeType>(i);
    return std::nullopt;
}

std::string_view to_string(ShapeType shape) { return kShapeNames[static_cast<std::size_t>(shape)]; }

}  // namespace kage
