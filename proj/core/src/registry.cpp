#include "kage/registry.hpp"

#include <functional>

#include "kage/errors.hpp"

namespace kage {

namespace {

using Edit = std::function<void(EnvConfig&)>;

void shape_agent(EnvConfig& c, const char* shape, const char* color) {
    c.character.use_sprites = false;
    c.character.use_shape = true;
    c.character.shape_types = {shape};
    c.character.shape_colors = {color};
}

void sprite_agent(EnvConfig& c, const char* skin) {
    c.character.use_shape = false;
    c.character.use_sprites = true;
    c.character.sprite_path = std::string("builtin:") + skin;
}

void color_bg(EnvConfig& c, std::vector<std::string> names) {
    c.background.mode = "color";
    c.background.color_names = std::move(names);
}

void image_bg(EnvConfig& c, const char* item) {
    c.background.mode = "image";
    c.background.image_path = std::string("builtin:") + item;
}

void images_bg(EnvConfig& c, std::vector<std::string> items) {
    c.background.mode = "image";
    for (auto& i : items) c.background.image_paths.push_back("builtin:" + i);
}

struct Row {
    std::string suite;
    std::string description;
    std::vector<std::string> groups;
    Edit both;
    Edit train;
    Edit eval;
    std::string note;
};

std::vector<BenchmarkPair> build() {
    const Edit none = [](EnvConfig&) {};
    const Edit skeleton = [](EnvConfig& c) { sprite_agent(c, "skeleton"); };
    const Edit teal_circle = [](EnvConfig& c) { shape_agent(c, "circle", "teal"); };
    const std::vector<std::string> chr{"character"};
    const std::vector<std::string> bgr{"background"};
    const std::vector<std::string> dis{"npc", "distractors"};
    const std::vector<std::string> eff{"effects"};
    const std::vector<std::string> fil{"filters"};
    const std::vector<std::string> lay{"layout"};
    const std::string one_image = "one image = builtin:bg-1, another image = builtin:bg-2";
    const std::string three_images = "3 images = builtin:bg-1, bg-64, bg-128; another image = builtin:bg-2";

    const std::vector<Row> rows{
        {"agent", "teal circle ag & line teal ag", chr, none, teal_circle,
         [](EnvConfig& c) { shape_agent(c, "line", "teal"); }, ""},
        {"agent", "circle teal ag & circle pink ag", chr, none, teal_circle,
         [](EnvConfig& c) { shape_agent(c, "circle", "pink"); }, ""},
        {"agent", "circle teal ag & line pink ag", chr, none, teal_circle,
         [](EnvConfig& c) { shape_agent(c, "line", "pink"); }, ""},
        {"agent", "circle teal ag & skelet ag", chr, none, teal_circle, skeleton, ""},
        {"agent", "skelet ag & clown ag", chr, none, skeleton,
         [](EnvConfig& c) { sprite_agent(c, "clown"); }, ""},

        {"background", "black bg & noise bg", bgr, none, none,
         [](EnvConfig& c) { c.background.mode = "noise"; }, ""},
        {"background", "black bg & purple bg", bgr, none, none,
         [](EnvConfig& c) { color_bg(c, {"purple"}); }, ""},
        {"background", "black bg & purple, lime, indigo bg", bgr, none, none,
         [](EnvConfig& c) { color_bg(c, {"purple", "lime", "indigo"}); }, ""},
        {"background", "red, green, blue bg & purple, lime, indigo bg", bgr, none,
         [](EnvConfig& c) { color_bg(c, {"red", "green", "blue"}); },
         [](EnvConfig& c) { color_bg(c, {"purple", "lime", "indigo"}); }, ""},
        {"background", "black bg & 128 images bg", bgr, none, none,
         [](EnvConfig& c) {
             c.background.mode = "image";
             c.background.image_dir = "builtin";
         },
         "128 images = all built-in placeholder backgrounds"},
        {"background", "one image bg & another image bg", bgr, none,
         [](EnvConfig& c) { image_bg(c, "bg-1"); }, [](EnvConfig& c) { image_bg(c, "bg-2"); }, one_image},
        {"background", "3 images bg & another image bg", bgr, none,
         [](EnvConfig& c) { images_bg(c, {"bg-1", "bg-64", "bg-128"}); },
         [](EnvConfig& c) { image_bg(c, "bg-2"); }, three_images},
        {"background", "black bg, skelet ag & purple bg, skelet ag", bgr, skeleton, none,
         [](EnvConfig& c) { color_bg(c, {"purple"}); }, ""},
        {"background", "one image bg, skelet ag & another image bg, skelet ag", bgr, skeleton,
         [](EnvConfig& c) { image_bg(c, "bg-1"); }, [](EnvConfig& c) { image_bg(c, "bg-2"); }, one_image},
        {"background", "3 images bg, skelet ag & another image bg, skelet ag", bgr, skeleton,
         [](EnvConfig& c) { images_bg(c, {"bg-1", "bg-64", "bg-128"}); },
         [](EnvConfig& c) { image_bg(c, "bg-2"); }, three_images},

        {"distractors", "no dist., skelet ag & NPC skelets, skelet ag", dis, skeleton, none,
         [](EnvConfig& c) {
             c.npc.enabled = true;
             c.npc.sprite_path = "builtin:skeleton";
         },
         ""},
        {"distractors", "no dist., skelet ag & NPC 27 sprites, skelet ag", dis, skeleton, none,
         [](EnvConfig& c) {
             c.npc.enabled = true;
             c.npc.sprite_dir = "builtin";
         },
         ""},
        {"distractors", "no dist., skelet ag & sticky NPC skelets, skelet ag", dis, skeleton, none,
         [](EnvConfig& c) {
             c.npc.sticky_enabled = true;
             c.npc.sticky_sprite_path = "builtin:skeleton";
         },
         ""},
        {"distractors", "no dist., skelet ag & sticky NPC 27 sprites, skelet ag", dis, skeleton, none,
         [](EnvConfig& c) {
             c.npc.sticky_enabled = true;
             c.npc.sticky_sprite_dir = "builtin";
         },
         ""},
        {"distractors", "no dist., circle teal ag & 7 same-as-ag shapes, circle teal ag", dis,
         teal_circle, none,
         [](EnvConfig& c) {
             c.distractors.enabled = true;
             c.distractors.count = 7;
             c.distractors.shape_types = {"circle"};
             c.distractors.shape_colors = {"teal"};
         },
         ""},
        {"distractors", "no dist., circle teal ag & circle indigo dist., circle teal ag", dis,
         teal_circle, none,
         [](EnvConfig& c) {
             c.distractors.enabled = true;
             c.distractors.shape_types = {"circle"};
             c.distractors.shape_colors = {"indigo"};
         },
         "distractor count left at the default 5"},

        {"effects", "no effects & light intensity 0.5", eff, none, none,
         [](EnvConfig& c) {
             c.effects.point_light_enabled = true;
             c.effects.point_light_intensity = 0.5;
         },
         ""},
        {"effects", "no effects & light falloff 4.0", eff, none, none,
         [](EnvConfig& c) {
             c.effects.point_light_enabled = true;
             c.effects.point_light_falloff = 4.0;
         },
         ""},
        {"effects", "no effects & light count 4", eff, none, none,
         [](EnvConfig& c) {
             c.effects.point_light_enabled = true;
             c.effects.point_light_count = 4;
         },
         ""},

        {"filters", "no filters & brightness 1", fil, none, none, [](EnvConfig& c) { c.filters.brightness = 1.0; }, ""},
        {"filters", "no filters & contrast 128", fil, none, none, [](EnvConfig& c) { c.filters.contrast = 128.0; }, ""},
        {"filters", "no filters & saturation 0.0", fil, none, none, [](EnvConfig& c) { c.filters.saturation = 0.0; }, ""},
        {"filters", "no filters & hue shift 180", fil, none, none, [](EnvConfig& c) { c.filters.hue_shift = 180.0; }, ""},
        {"filters", "no filters & color jitter std 2.0", fil, none, none,
         [](EnvConfig& c) { c.filters.color_jitter_std = 2.0; }, ""},
        {"filters", "no filters & gaussian noise std 100", fil, none, none,
         [](EnvConfig& c) { c.filters.gaussian_noise_std = 100.0; }, ""},
        {"filters", "no filters & pixelate factor 3", fil, none, none,
         [](EnvConfig& c) { c.filters.pixelate_factor = 3; }, ""},
        {"filters", "no filters & vignette strength 10", fil, none, none,
         [](EnvConfig& c) { c.filters.vignette_strength = 10.0; }, ""},
        {"filters", "no filters & radial light strength 1", fil, none, none,
         [](EnvConfig& c) { c.filters.radial_light_strength = 1.0; }, ""},

        {"layout", "cyan layout & red layout", lay, none, none,
         [](EnvConfig& c) { c.layout.layout_colors = {"red"}; }, ""},
    };

    std::vector<BenchmarkPair> out;
    std::string suite;
    int id = 0;
    for (const auto& r : rows) {
        id = r.suite == suite ? id + 1 : 1;
        suite = r.suite;
        BenchmarkPair p;
        p.suite = r.suite;
        p.id = id;
        p.description = r.description;
        p.axis_groups = r.groups;
        p.note = r.note;
        p.train = registry_base_config();
        r.both(p.train);
        p.eval = p.train;
        r.train(p.train);
        r.eval(p.eval);
        validate(p.train);
        validate(p.eval);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

EnvConfig registry_base_config() {
    EnvConfig c;
    c.npc.enabled = false;
    return c;
}

const std::vector<BenchmarkPair>& suite_registry() {
    static const std::vector<BenchmarkPair> pairs = build();
    return pairs;
}

const BenchmarkPair& find_pair(std::string_view key) {
    for (const auto& p : suite_registry())
        if (p.key() == key) return p;
    throw UnknownPair("unknown benchmark pair '" + std::string(key) + "'");
}

}  // namespace kage
