#include "kage/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "kage/palette.hpp"
#include "kage/raster.hpp"

namespace kage {

Renderer::Renderer(EnvConfig config, AssetLibrary assets)
    : config_(std::move(config)), assets_(std::move(assets)) {
    has_post_ = config_.effects.point_light_enabled || !is_identity(config_.filters);
}

Renderer::Renderer(EnvConfig config, const AssetOptions& options)
    : Renderer(config, load_assets(config, options)) {}

int Renderer::animation_frame(double phase_ticks, double fps, int frame_count) {
    if (frame_count <= 0) return 0;
    const auto k = static_cast<long long>(std::floor(phase_ticks * fps / kTicksPerSecond));
    return static_cast<int>(((k % frame_count) + frame_count) % frame_count);
}

void Renderer::draw_background(const LatentState& state, FrameView out) const {
    const auto& bg = config_.background;
    if (bg.mode == "color") {
        fill_rect(out, 0, 0, out.width, out.height, state.visuals.background_color);
        return;
    }
    if (bg.mode == "noise" && state.visuals.noise) {
        std::memcpy(out.pixels.data(), state.visuals.noise->pixels().data(), out.pixels.size());
        return;
    }
    std::fill(out.pixels.begin(), out.pixels.end(), std::uint8_t{0});
    if (bg.mode != "image" || assets_.backgrounds.empty()) return;

    const Frame& img = *assets_.backgrounds[static_cast<std::size_t>(state.visuals.background_index) %
                                            assets_.backgrounds.size()];
    const long long offset = static_cast<long long>(std::floor(state.camera_x * bg.parallax_factor));
    const long long bw = img.width();
    const int rows = std::min(out.height, img.height());
    for (int x = 0; x < out.width; ++x) {
        long long sx = x + offset;
        if (bg.tile_horizontal) sx = ((sx % bw) + bw) % bw;
        else if (sx < 0 || sx >= bw) continue;
        for (int y = 0; y < rows; ++y) out.set(y, x, img.at(y, static_cast<int>(sx)));
    }
}

void Renderer::draw_agent(const LatentState& state, FrameView out) const {
    const auto& ch = config_.character;
    const auto& a = state.agent;
    const double sx = a.x - std::floor(state.camera_x);
    if (ch.use_shape) {
        const auto shape = *parse_shape(ch.shape_types[static_cast<std::size_t>(state.visuals.agent_shape)]);
        const Rgb color =
            *find_color(shape_palette(), ch.shape_colors[static_cast<std::size_t>(state.visuals.agent_color)]);
        const double angle =
            ch.shape_rotate ? std::fmod(state.t * ch.shape_rotation_speed / kTicksPerSecond, 360.0) : 0.0;
        rasterize_shape(out, shape, color, sx, a.y - ch.height / 2.0, std::min(ch.width, ch.height), angle);
        return;
    }
    if (assets_.agent_skins.empty()) return;
    const SpriteSet& skin = *assets_.agent_skins[static_cast<std::size_t>(state.visuals.agent_skin) %
                                                 assets_.agent_skins.size()];
    const int n = static_cast<int>(skin.frames.size());
    int frame = 0;
    if (ch.enable_animation)
        frame = a.idle ? ch.idle_sprite_idx % n : animation_frame(a.anim_phase, ch.animation_fps, n);
    const RgbaImage& img = skin.frames[static_cast<std::size_t>(frame)];
    blit_sprite(out, img, round_px(sx) - img.width() / 2, round_px(a.y) - img.height(), a.facing_left);
}

void Renderer::render_scene(const LatentState& state, FrameView out) const {
    draw_background(state, out);

    const Heightfield& hf = *state.heightfield;
    const int cam = static_cast<int>(std::floor(state.camera_x));
    const int length = static_cast<int>(hf.ground_y.size());
    for (int x = 0; x < out.width; ++x) {
        const int wx = cam + x;
        if (wx < 0 || wx >= length) continue;
        const int gy = hf.ground_y[static_cast<std::size_t>(wx)];
        for (int y = std::max(0, gy); y < std::min(out.height, gy + hf.thickness); ++y)
            out.set(y, x, hf.color);
    }

    for (const auto& npc : state.npcs) {
        if (assets_.npc_skins.empty()) break;
        const SpriteSet& skin = *assets_.npc_skins[static_cast<std::size_t>(npc.skin) % assets_.npc_skins.size()];
        const RgbaImage& img = skin.frames[static_cast<std::size_t>(
            animation_frame(npc.anim_phase, config_.npc.animation_fps, static_cast<int>(skin.frames.size())))];
        const int left = round_px(npc.x) - cam - img.width() / 2;
        if (left >= out.width || left + img.width() <= 0) continue;
        blit_sprite(out, img, left, round_px(npc.y) - img.height(), false);
    }

    for (const auto& d : state.distractors) {
        const auto shape = *parse_shape(config_.distractors.shape_types[static_cast<std::size_t>(d.shape)]);
        const Rgb color =
            *find_color(shape_palette(), config_.distractors.shape_colors[static_cast<std::size_t>(d.color)]);
        rasterize_shape(out, shape, color, d.x, d.y, d.size, d.angle);
    }

    for (const auto& s : state.sticky) {
        if (assets_.sticky_skins.empty()) break;
        const SpriteSet& skin =
            *assets_.sticky_skins[static_cast<std::size_t>(s.skin) % assets_.sticky_skins.size()];
        const RgbaImage& img = skin.frames[static_cast<std::size_t>(
            animation_frame(s.anim_phase, config_.npc.animation_fps, static_cast<int>(skin.frames.size())))];
        const int cx = out.width / 2 + s.x_offset;
        const int ground = ground_height_at(hf, cam + cx);
        const int feet = ground + s.y_offset + round_px(s.jump_y);
        blit_sprite(out, img, cx - img.width() / 2, feet - img.height(), false);
    }

    draw_agent(state, out);
}

Frame Renderer::render_scene(const LatentState& state) const {
    Frame out(height(), width());
    render_scene(state, out.view());
    return out;
}

void Renderer::render(const LatentState& state, RngKey key, FrameView out) const {
    render_scene(state, out);
    if (!has_post_) return;
    FloatImage img = FloatImage::from(ConstFrameView{out.pixels, out.height, out.width});
    if (config_.effects.point_light_enabled)
        apply_point_lights(img, config_.effects, state.visuals.lights);
    apply_filters(img, config_.filters, key);
    img.quantize_into(out);
}

Frame Renderer::render(const LatentState& state, RngKey key) const {
    Frame out(height(), width());
    render(state, key, out.view());
    return out;
}

}  // namespace kage
