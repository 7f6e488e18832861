#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "kage/image.hpp"

namespace kage {

struct NamedColor {
    std::string_view name;
    Rgb rgb;
};

// 16 colors for background.color_names and layout.layout_colors.
std::span<const NamedColor> scene_palette();
// 21 colors for shape_colors of the agent and distractors.
std::span<const NamedColor> shape_palette();
// 12 colors for effects.point_light_color_names.
std::span<const NamedColor> light_palette();

std::optional<Rgb> find_color(std::span<const NamedColor> palette, std::string_view name);

enum class ShapeType { Circle, Cross, Diamond, Ellipse, Line, Polygon, Square, Star, Triangle };

std::span<const std::string_view> shape_names();
std::optional<ShapeType> parse_shape(std::string_view name);
std::string_view to_string(ShapeType shape);

}  // namespace kage
