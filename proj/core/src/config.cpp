#include "kage/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "kage/errors.hpp"
#include "kage/palette.hpp"

namespace kage {

namespace {

template <class T>
FieldValue to_value(const T& field) {
    if constexpr (std::is_same_v<T, int>) return static_cast<std::int64_t>(field);
    else return field;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

class Validator {
public:
    void range(std::string_view path, double v, double lo, double hi) const {
        if (!std::isfinite(v) || v < lo || v > hi)
            fail(path, "value " + format_double(v) + " outside [" + format_double(lo) + ", " +
                           format_double(hi) + "]");
    }
    void at_least(std::string_view path, double v, double lo) const {
        if (!std::isfinite(v) || v < lo)
            fail(path, "value " + format_double(v) + " must be >= " + format_double(lo));
    }
    void positive(std::string_view path, double v) const {
        if (!std::isfinite(v) || v <= 0) fail(path, "value " + format_double(v) + " must be > 0");
    }
    void finite(std::string_view path, double v) const {
        if (!std::isfinite(v)) fail(path, "value must be finite");
    }
    void ordered(std::string_view min_path, double lo, std::string_view max_path, double hi) const {
        if (lo > hi)
            fail(min_path, std::string(min_path) + " exceeds " + std::string(max_path));
    }
    void names(std::string_view path, const std::vector<std::string>& list,
               std::span<const NamedColor> palette, bool allow_empty = false) const {
        if (list.empty() && !allow_empty) fail(path, "list must not be empty");
        for (const auto& n : list)
            if (!find_color(palette, n)) fail(path, "unknown color '" + n + "'");
    }
    void shapes(std::string_view path, const std::vector<std::string>& list) const {
        if (list.empty()) fail(path, "list must not be empty");
        for (const auto& n : list)
            if (!parse_shape(n)) fail(path, "unknown shape '" + n + "'");
    }
    void one_source(std::string_view path, const std::string& dir,
                    const std::vector<std::string>& paths, const std::string& single) const {
        const int n = int(!dir.empty()) + int(!paths.empty()) + int(!single.empty());
        if (n > 1) fail(path, "choose only one image source option");
    }
    [[noreturn]] void fail(std::string_view path, const std::string& msg) const {
        throw ValidationError(std::string(path), msg);
    }
};

}  // namespace

std::string to_string(const FieldValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, std::string>) return '"' + v + '"';
            else {
                std::string out = "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    if constexpr (std::is_same_v<T, std::vector<std::string>>) out += '"' + v[i] + '"';
                    else out += std::to_string(v[i]);
                }
                return out + "]";
            }
        },
        value);
}

std::vector<FieldEntry> flatten(const EnvConfig& config) {
    std::vector<FieldEntry> out;
    out.reserve(128);
    visit_fields(config, [&](std::string_view path, std::string_view group, const auto& field) {
        out.push_back({std::string(path), std::string(group), to_value(field)});
    });
    return out;
}

void set_field(EnvConfig& config, std::string_view path, const FieldValue& value) {
    bool found = false;
    visit_fields(config, [&](std::string_view p, std::string_view, auto& field) {
        if (found || p != path) return;
        found = true;
        using T = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<T, int>) {
            if (const auto* v = std::get_if<std::int64_t>(&value)) {
                field = static_cast<int>(*v);
                return;
            }
        } else if constexpr (std::is_same_v<T, double>) {
            if (const auto* v = std::get_if<double>(&value)) {
                field = *v;
                return;
            }
            if (const auto* v = std::get_if<std::int64_t>(&value)) {
                field = static_cast<double>(*v);
                return;
            }
        } else {
            if (const auto* v = std::get_if<T>(&value)) {
                field = *v;
                return;
            }
        }
        throw ValidationError(std::string(path), "value of wrong kind");
    });
    if (!found) throw ValidationError(std::string(path), "unknown field");
}

void validate(const EnvConfig& c) {
    const Validator v;

    v.at_least("episode_length", c.episode.episode_length, 1);
    v.at_least("forward_reward_scale", c.episode.forward_reward_scale, 0);
    v.at_least("jump_penalty", c.episode.jump_penalty, 0);
    v.at_least("timestep_penalty", c.episode.timestep_penalty, 0);
    v.at_least("idle_penalty", c.episode.idle_penalty, 0);
    v.positive("dist_to_success", c.episode.dist_to_success);
    v.range("H", c.screen.H, 1, 4096);
    v.range("W", c.screen.W, 1, 4096);

    const auto& bg = c.background;
    if (bg.mode != "black" && bg.mode != "image" && bg.mode != "noise" && bg.mode != "color")
        v.fail("background.mode", "unknown mode '" + bg.mode + "'");
    if (bg.mode == "image")
        v.one_source("background.image_dir", bg.image_dir, bg.image_paths, bg.image_path);
    v.finite("background.parallax_factor", bg.parallax_factor);
    v.range("background.switch_frequency", bg.switch_frequency, 0, 1);
    v.names("background.color_names", bg.color_names, scene_palette());

    const auto& ch = c.character;
    v.range("character.width", ch.width, 1, 1024);
    v.range("character.height", ch.height, 1, 1024);
    if (ch.use_sprites && ch.use_shape)
        v.fail("character.use_shape", "use_sprites and use_shape are mutually exclusive");
    if (!ch.use_shape)
        v.one_source("character.sprite_dir", ch.sprite_dir, ch.sprite_paths, ch.sprite_path);
    v.at_least("character.animation_fps", ch.animation_fps, 0);
    v.at_least("character.idle_sprite_idx", ch.idle_sprite_idx, 0);
    v.shapes("character.shape_types", ch.shape_types);
    v.names("character.shape_colors", ch.shape_colors, shape_palette());
    v.finite("character.shape_rotation_speed", ch.shape_rotation_speed);

    const auto& n = c.npc;
    v.at_least("npc.min_npc_count", n.min_npc_count, 0);
    v.at_least("npc.max_npc_count", n.max_npc_count, 0);
    v.ordered("npc.min_npc_count", n.min_npc_count, "npc.max_npc_count", n.max_npc_count);
    v.finite("npc.spawn_y_offset", n.spawn_y_offset);
    v.at_least("npc.animation_fps", n.animation_fps, 0);
    if (n.enabled) v.one_source("npc.sprite_dir", n.sprite_dir, n.sprite_paths, n.sprite_path);
    v.at_least("npc.min_sticky_count", n.min_sticky_count, 0);
    v.at_least("npc.max_sticky_count", n.max_sticky_count, 0);
    v.ordered("npc.min_sticky_count", n.min_sticky_count, "npc.max_sticky_count",
              n.max_sticky_count);
    if (n.sticky_enabled)
        v.one_source("npc.sticky_sprite_dir", n.sticky_sprite_dir, n.sticky_sprite_dirs,
                     n.sticky_sprite_path);
    v.range("npc.sticky_jump_probability", n.sticky_jump_probability, 0, 1);
    v.ordered("npc.sticky_y_min_offset", n.sticky_y_min_offset, "npc.sticky_y_max_offset",
              n.sticky_y_max_offset);
    v.ordered("npc.sticky_x_min", n.sticky_x_min, "npc.sticky_x_max", n.sticky_x_max);

    const auto& d = c.distractors;
    v.at_least("distractors.count", d.count, 0);
    v.shapes("distractors.shape_types", d.shape_types);
    v.names("distractors.shape_colors", d.shape_colors, shape_palette());
    v.at_least("distractors.min_speed", d.min_speed, 0);
    v.at_least("distractors.max_speed", d.max_speed, 0);
    v.ordered("distractors.min_speed", d.min_speed, "distractors.max_speed", d.max_speed);
    v.finite("distractors.min_rotation_speed", d.min_rotation_speed);
    v.finite("distractors.max_rotation_speed", d.max_rotation_speed);
    v.ordered("distractors.min_rotation_speed", d.min_rotation_speed,
              "distractors.max_rotation_speed", d.max_rotation_speed);
    v.at_least("distractors.min_size", d.min_size, 1);
    v.at_least("distractors.max_size", d.max_size, 1);
    v.ordered("distractors.min_size", d.min_size, "distractors.max_size", d.max_size);

    const auto& f = c.filters;
    v.range("filters.brightness", f.brightness, -1, 1);
    v.positive("filters.contrast", f.contrast);
    v.range("filters.gamma", f.gamma, 0.5, 2.0);
    v.range("filters.saturation", f.saturation, 0, 2);
    v.range("filters.hue_shift", f.hue_shift, -180, 180);
    v.range("filters.color_temp", f.color_temp, -1, 1);
    v.at_least("filters.color_jitter_std", f.color_jitter_std, 0);
    v.at_least("filters.gaussian_noise_std", f.gaussian_noise_std, 0);
    v.range("filters.poisson_noise_scale", f.poisson_noise_scale, 0, 1);
    v.at_least("filters.blur_sigma", f.blur_sigma, 0);
    v.at_least("filters.sharpen_amount", f.sharpen_amount, 0);
    v.at_least("filters.pixelate_factor", f.pixelate_factor, 1);
    v.at_least("filters.vignette_strength", f.vignette_strength, 0);
    v.at_least("filters.radial_light_strength", f.radial_light_strength, 0);
    static constexpr std::string_view kPresets[] = {"vintage", "retro", "cyberpunk", "horror",
                                                    "noir"};
    for (const auto& p : f.pop_filter_list)
        if (std::find(std::begin(kPresets), std::end(kPresets), p) == std::end(kPresets))
            v.fail("filters.pop_filter_list", "unknown preset '" + p + "'");

    const auto& e = c.effects;
    v.range("effects.point_light_intensity", e.point_light_intensity, 0.1, 5.0);
    v.range("effects.point_light_radius", e.point_light_radius, 0.01, 1.0);
    v.range("effects.point_light_falloff", e.point_light_falloff, 1.0, 4.0);
    v.range("effects.point_light_count", e.point_light_count, 1, 5);
    v.names("effects.point_light_color_names", e.point_light_color_names, light_palette());

    const auto& l = c.layout;
    v.range("layout.length", l.length, 1, 1 << 20);
    v.range("layout.height_px", l.height_px, 1, 4096);
    v.range("layout.base_ground_y", l.base_ground_y, 70, 127);
    v.range("layout.pix_per_unit", l.pix_per_unit, 0, 3);
    v.range("layout.ground_thickness", l.ground_thickness, 1, 10);
    v.range("layout.run_width", l.run_width, 1, 60);
    v.range("layout.p_change", l.p_change, 0, 1);
    v.range("layout.p_up_given_change", l.p_up_given_change, 0, 1);
    v.range("layout.min_step_height", l.min_step_height, 1, 17);
    v.range("layout.max_step_height", l.max_step_height, 1, 17);
    v.ordered("layout.min_step_height", l.min_step_height, "layout.max_step_height",
              l.max_step_height);
    v.names("layout.layout_colors", l.layout_colors, scene_palette());

    const auto& p = c.physics;
    v.range("physics.gravity", p.gravity, 0.1, 1.0);
    v.at_least("physics.move_speed", p.move_speed, 1);
    v.range("physics.jump_force", p.jump_force, -10.0, 0.0);
    v.range("physics.ground_friction", p.ground_friction, 0.1, 1.0);
    v.range("physics.air_resistance", p.air_resistance, 0.1, 1.0);
    v.range("physics.max_fall_speed", p.max_fall_speed, 0.1, 10.0);
}

std::vector<FieldDiff> diff_configs(const EnvConfig& a, const EnvConfig& b) {
    const auto fa = flatten(a);
    const auto fb = flatten(b);
    std::vector<FieldDiff> out;
    for (std::size_t i = 0; i < fa.size(); ++i)
        if (fa[i].value != fb[i].value) out.push_back({fa[i].path, fa[i].value, fb[i].value});
    return out;
}

bool is_visual_group(std::string_view group) {
    return std::find(std::begin(kVisualGroups), std::end(kVisualGroups), group) !=
           std::end(kVisualGroups);
}

AxisSplit split_axis(const EnvConfig& config, std::string_view axis_group) {
    if (!is_visual_group(axis_group)) throw UnknownAxis(std::string(axis_group));
    AxisSplit out;
    out.axis_group = std::string(axis_group);
    for (auto& f : flatten(config)) {
        if (f.group == axis_group) out.axis_fields.push_back(std::move(f));
        else out.rest.push_back(std::move(f));
    }
    return out;
}

EnvConfig merge_axis(const AxisSplit& split) {
    EnvConfig out;
    for (const auto& f : split.axis_fields) set_field(out, f.path, f.value);
    for (const auto& f : split.rest) set_field(out, f.path, f.value);
    return out;
}

}  // namespace kage
