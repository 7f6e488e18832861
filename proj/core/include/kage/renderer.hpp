#pragma once

#include "kage/assets.hpp"
#include "kage/config.hpp"
#include "kage/dynamics.hpp"
#include "kage/image.hpp"
#include "kage/postfx.hpp"
#include "kage/rng.hpp"

namespace kage {

// Simulation ticks per second, used to turn animation_fps and
// shape_rotation_speed into per-step quantities.
inline constexpr double kTicksPerSecond = 30.0;

// The observation kernel: scene compositing, point lights, then filters.
// Holds the configuration and resolved assets; rendering is const and
// thread-safe.
class Renderer {
public:
    Renderer(EnvConfig config, AssetLibrary assets);
    explicit Renderer(EnvConfig config, const AssetOptions& options = {});

    const EnvConfig& config() const noexcept { return config_; }
    const AssetLibrary& assets() const noexcept { return assets_; }
    int height() const noexcept { return config_.screen.H; }
    int width() const noexcept { return config_.screen.W; }

    // Layers: background, terrain band, world NPCs, distractors, sticky NPCs,
    // agent.
    void render_scene(const LatentState& state, FrameView out) const;
    Frame render_scene(const LatentState& state) const;

    void render(const LatentState& state, RngKey key, FrameView out) const;
    Frame render(const LatentState& state, RngKey key) const;

    // Sprite frame index for an animation phase measured in ticks.
    static int animation_frame(double phase_ticks, double fps, int frame_count);

private:
    void draw_background(const LatentState& state, FrameView out) const;
    void draw_agent(const LatentState& state, FrameView out) const;

    EnvConfig config_;
    AssetLibrary assets_;
    bool has_post_ = false;
};

}  // namespace kage
