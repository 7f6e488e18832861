#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kage {

struct EpisodeParams {
    int episode_length = 500;
    double forward_reward_scale = 0.2;
    double jump_penalty = 10.0;
    double timestep_penalty = 0.1;
    double idle_penalty = 5.0;
    double dist_to_success = 490.0;
    friend bool operator==(const EpisodeParams&, const EpisodeParams&) = default;
};

struct ScreenParams {
    int H = 128;
    int W = 128;
    friend bool operator==(const ScreenParams&, const ScreenParams&) = default;
};

struct BackgroundParams {
    std::string mode = "black";
    std::string image_dir;
    std::vector<std::string> image_paths;
    std::string image_path;
    double parallax_factor = 0.5;
    bool tile_horizontal = true;
    double switch_frequency = 0.0;
    std::vector<std::string> color_names{"purple", "teal", "indigo"};
    friend bool operator==(const BackgroundParams&, const BackgroundParams&) = default;
};

struct CharacterParams {
    int width = 16;
    int height = 24;
    bool use_sprites = true;
    std::string sprite_dir;
    std::vector<std::string> sprite_paths;
    std::string sprite_path;
    bool enable_animation = true;
    double animation_fps = 12.0;
    int idle_sprite_idx = 0;
    bool use_shape = false;
    std::vector<std::string> shape_types{"circle", "star"};
    std::vector<std::string> shape_colors{"teal", "indigo"};
    bool shape_rotate = true;
    double shape_rotation_speed = 5.0;
    friend bool operator==(const CharacterParams&, const CharacterParams&) = default;
};

struct NpcParams {
    bool enabled = true;
    int min_npc_count = 5;
    int max_npc_count = 20;
    int spawn_y_offset = 0;
    double animation_fps = 12.0;
    std::string sprite_dir;
    std::vector<std::string> sprite_paths;
    std::string sprite_path;
    bool sticky_enabled = false;
    int min_sticky_count = 1;
    int max_sticky_count = 5;
    std::string sticky_sprite_dir;
    std::vector<std::string> sticky_sprite_dirs;
    std::string sticky_sprite_path;
    bool sticky_can_jump = true;
    double sticky_jump_probability = 0.01;
    int sticky_y_min_offset = -40;
    int sticky_y_max_offset = -10;
    std::vector<std::int64_t> sticky_x_offsets;
    int sticky_x_min = -60;
    int sticky_x_max = 60;
    friend bool operator==(const NpcParams&, const NpcParams&) = default;
};

struct DistractorParams {
    bool enabled = false;
    int count = 5;
    std::vector<std::string> shape_types{"circle", "star", "cross"};
    std::vector<std::string> shape_colors{"red", "green", "blue"};
    bool can_move = true;
    double min_speed = 0.0;
    double max_speed = 2.0;
    bool can_rotate = true;
    double min_rotation_speed = -3.0;
    double max_rotation_speed = 3.0;
    int min_size = 4;
    int max_size = 12;
    friend bool operator==(const DistractorParams&, const DistractorParams&) = default;
};

struct FilterParams {
    double brightness = 0.0;
    double contrast = 1.0;
    double gamma = 1.0;
    double saturation = 1.0;
    double hue_shift = 0.0;
    double color_temp = 0.0;
    double color_jitter_std = 0.0;
    double gaussian_noise_std = 0.0;
    double poisson_noise_scale = 0.0;
    double blur_sigma = 0.0;
    double sharpen_amount = 0.0;
    int pixelate_factor = 1;
    double vignette_strength = 0.0;
    double radial_light_strength = 0.0;
    std::vector<std::string> pop_filter_list;
    friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

struct EffectParams {
    bool point_light_enabled = false;
    double point_light_intensity = 1.0;
    double point_light_radius = 0.1;
    double point_light_falloff = 2.0;
    int point_light_count = 1;
    std::vector<std::string> point_light_color_names{"warm_white"};
    friend bool operator==(const EffectParams&, const EffectParams&) = default;
};

struct LayoutParams {
    int length = 2048;
    int height_px = 128;
    int base_ground_y = 96;
    int pix_per_unit = 2;
    int ground_thickness = 2;
    int run_width = 20;
    double p_change = 0.7;
    double p_up_given_change = 0.5;
    int min_step_height = 5;
    int max_step_height = 10;
    std::vector<std::string> layout_colors{"cyan"};
    friend bool operator==(const LayoutParams&, const LayoutParams&) = default;
};

struct PhysicsParams {
    double gravity = 0.75;
    int move_speed = 1;
    double jump_force = -7.5;
    double ground_friction = 0.8;
    double air_resistance = 0.95;
    double max_fall_speed = 8.0;
    friend bool operator==(const PhysicsParams&, const PhysicsParams&) = default;
};

// The full configuration surface. Episode and screen keys sit at the top
// level of the YAML document; every other group is a nested mapping.
struct EnvConfig {
    EpisodeParams episode;
    ScreenParams screen;
    BackgroundParams background;
    CharacterParams character;
    NpcParams npc;
    DistractorParams distractors;
    FilterParams filters;
    EffectParams effects;
    LayoutParams layout;
    PhysicsParams physics;
    friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

using FieldValue = std::variant<bool, std::int64_t, double, std::string, std::vector<std::string>,
                                std::vector<std::int64_t>>;

std::string to_string(const FieldValue& value);

// Calls visitor(path, group, field) for every field in canonical order.
// The field argument is a reference of the member's own type.
template <class Config, class Visitor>
void visit_fields(Config& c, Visitor&& v) {
    v("episode_length", "episode", c.episode.episode_length);
    v("forward_reward_scale", "episode", c.episode.forward_reward_scale);
    v("jump_penalty", "episode", c.episode.jump_penalty);
    v("timestep_penalty", "episode", c.episode.timestep_penalty);
    v("idle_penalty", "episode", c.episode.idle_penalty);
    v("dist_to_success", "episode", c.episode.dist_to_success);

    v("H", "screen", c.screen.H);
    v("W", "screen", c.screen.W);

    auto& bg = c.background;
    v("background.mode", "background", bg.mode);
    v("background.image_dir", "background", bg.image_dir);
    v("background.image_paths", "background", bg.image_paths);
    v("background.image_path", "background", bg.image_path);
    v("background.parallax_factor", "background", bg.parallax_factor);
    v("background.tile_horizontal", "background", bg.tile_horizontal);
    v("background.switch_frequency", "background", bg.switch_frequency);
    v("background.color_names", "background", bg.color_names);

    auto& ch = c.character;
    v("character.width", "character", ch.width);
    v("character.height", "character", ch.height);
    v("character.use_sprites", "character", ch.use_sprites);
    v("character.sprite_dir", "character", ch.sprite_dir);
    v("character.sprite_paths", "character", ch.sprite_paths);
    v("character.sprite_path", "character", ch.sprite_path);
    v("character.enable_animation", "character", ch.enable_animation);
    v("character.animation_fps", "character", ch.animation_fps);
    v("character.idle_sprite_idx", "character", ch.idle_sprite_idx);
    v("character.use_shape", "character", ch.use_shape);
    v("character.shape_types", "character", ch.shape_types);
    v("character.shape_colors", "character", ch.shape_colors);
    v("character.shape_rotate", "character", ch.shape_rotate);
    v("character.shape_rotation_speed", "character", ch.shape_rotation_speed);

    auto& n = c.npc;
    v("npc.enabled", "npc", n.enabled);
    v("npc.min_npc_count", "npc", n.min_npc_count);
    v("npc.max_npc_count", "npc", n.max_npc_count);
    v("npc.spawn_y_offset", "npc", n.spawn_y_offset);
    v("npc.animation_fps", "npc", n.animation_fps);
    v("npc.sprite_dir", "npc", n.sprite_dir);
    v("npc.sprite_paths", "npc", n.sprite_paths);
    v("npc.sprite_path", "npc", n.sprite_path);
    v("npc.sticky_enabled", "npc", n.sticky_enabled);
    v("npc.min_sticky_count", "npc", n.min_sticky_count);
    v("npc.max_sticky_count", "npc", n.max_sticky_count);
    v("npc.sticky_sprite_dir", "npc", n.sticky_sprite_dir);
    v("npc.sticky_sprite_dirs", "npc", n.sticky_sprite_dirs);
    v("npc.sticky_sprite_path", "npc", n.sticky_sprite_path);
    v("npc.sticky_can_jump", "npc", n.sticky_can_jump);
    v("npc.sticky_jump_probability", "npc", n.sticky_jump_probability);
    v("npc.sticky_y_min_offset", "npc", n.sticky_y_min_offset);
    v("npc.sticky_y_max_offset", "npc", n.sticky_y_max_offset);
    v("npc.sticky_x_offsets", "npc", n.sticky_x_offsets);
    v("npc.sticky_x_min", "npc", n.sticky_x_min);
    v("npc.sticky_x_max", "npc", n.sticky_x_max);

    auto& d = c.distractors;
    v("distractors.enabled", "distractors", d.enabled);
    v("distractors.count", "distractors", d.count);
    v("distractors.shape_types", "distractors", d.shape_types);
    v("distractors.shape_colors", "distractors", d.shape_colors);
    v("distractors.can_move", "distractors", d.can_move);
    v("distractors.min_speed", "distractors", d.min_speed);
    v("distractors.max_speed", "distractors", d.max_speed);
    v("distractors.can_rotate", "distractors", d.can_rotate);
    v("distractors.min_rotation_speed", "distractors", d.min_rotation_speed);
    v("distractors.max_rotation_speed", "distractors", d.max_rotation_speed);
    v("distractors.min_size", "distractors", d.min_size);
    v("distractors.max_size", "distractors", d.max_size);

    auto& f = c.filters;
    v("filters.brightness", "filters", f.brightness);
    v("filters.contrast", "filters", f.contrast);
    v("filters.gamma", "filters", f.gamma);
    v("filters.saturation", "filters", f.saturation);
    v("filters.hue_shift", "filters", f.hue_shift);
    v("filters.color_temp", "filters", f.color_temp);
    v("filters.color_jitter_std", "filters", f.color_jitter_std);
    v("filters.gaussian_noise_std", "filters", f.gaussian_noise_std);
    v("filters.poisson_noise_scale", "filters", f.poisson_noise_scale);
    v("filters.blur_sigma", "filters", f.blur_sigma);
    v("filters.sharpen_amount", "filters", f.sharpen_amount);
    v("filters.pixelate_factor", "filters", f.pixelate_factor);
    v("filters.vignette_strength", "filters", f.vignette_strength);
    v("filters.radial_light_strength", "filters", f.radial_light_strength);
    v("filters.pop_filter_list", "filters", f.pop_filter_list);

    auto& e = c.effects;
    v("effects.point_light_enabled", "effects", e.point_light_enabled);
    v("effects.point_light_intensity", "effects", e.point_light_intensity);
    v("effects.point_light_radius", "effects", e.point_light_radius);
    v("effects.point_light_falloff", "effects", e.point_light_falloff);
    v("effects.point_light_count", "effects", e.point_light_count);
    v("effects.point_light_color_names", "effects", e.point_light_color_names);

    auto& l = c.layout;
    v("layout.length", "layout", l.length);
    v("layout.height_px", "layout", l.height_px);
    v("layout.base_ground_y", "layout", l.base_ground_y);
    v("layout.pix_per_unit", "layout", l.pix_per_unit);
    v("layout.ground_thickness", "layout", l.ground_thickness);
    v("layout.run_width", "layout", l.run_width);
    v("layout.p_change", "layout", l.p_change);
    v("layout.p_up_given_change", "layout", l.p_up_given_change);
    v("layout.min_step_height", "layout", l.min_step_height);
    v("layout.max_step_height", "layout", l.max_step_height);
    v("layout.layout_colors", "layout", l.layout_colors);

    auto& p = c.physics;
    v("physics.gravity", "physics", p.gravity);
    v("physics.move_speed", "physics", p.move_speed);
    v("physics.jump_force", "physics", p.jump_force);
    v("physics.ground_friction", "physics", p.ground_friction);
    v("physics.air_resistance", "physics", p.air_resistance);
    v("physics.max_fall_speed", "physics", p.max_fall_speed);
}

struct FieldEntry {
    std::string path;
    std::string group;
    FieldValue value;
    friend bool operator==(const FieldEntry&, const FieldEntry&) = default;
};

// All fields of a config as (path, group, value) in canonical order.
std::vector<FieldEntry> flatten(const EnvConfig& config);

// Assigns one field by canonical path. Throws ValidationError on an unknown
// path or a value of the wrong kind.
void set_field(EnvConfig& config, std::string_view path, const FieldValue& value);

// Throws ValidationError naming the first offending path.
void validate(const EnvConfig& config);

struct FieldDiff {
    std::string path;
    FieldValue a;
    FieldValue b;
    friend bool operator==(const FieldDiff&, const FieldDiff&) = default;
};

std::vector<FieldDiff> diff_configs(const EnvConfig& a, const EnvConfig& b);

inline constexpr std::string_view kVisualGroups[] = {
    "background", "character", "npc", "distractors", "filters", "effects", "layout"};

bool is_visual_group(std::string_view group);

struct AxisSplit {
    std::string axis_group;
    std::vector<FieldEntry> axis_fields;
    std::vector<FieldEntry> rest;
};

AxisSplit split_axis(const EnvConfig& config, std::string_view axis_group);
EnvConfig merge_axis(const AxisSplit& split);

struct LoadResult {
    EnvConfig config;
    std::vector<std::string> warnings;
};

// Parses one YAML document, fills defaults, validates. Unknown keys become
// warnings.
LoadResult load_config(std::string_view document);
LoadResult load_config_file(const std::string& path);
std::string dump_config(const EnvConfig& config);

}  // namespace kage
