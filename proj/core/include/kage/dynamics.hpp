#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "kage/config.hpp"
#include "kage/image.hpp"
#include "kage/layout.hpp"
#include "kage/rng.hpp"

namespace kage {

enum ActionBit : int { kLeft = 1, kRight = 2, kJump = 4 };

inline bool valid_action(int bits) { return bits >= 0 && bits <= 7; }

// World-space agent spawn column.
inline constexpr double kSpawnX = 16.0;

struct AgentKinematics {
    double x = 0;
    double y = 0;  // feet row, screen convention
    double vx = 0;
    double vy = 0;
    bool grounded = false;
    bool facing_left = false;
    bool idle = true;
    // Simulation ticks spent walking; the renderer maps it to sprite frames.
    double anim_phase = 0;

    friend bool operator==(const AgentKinematics&, const AgentKinematics&) = default;
};

struct NpcState {
    double x = 0;  // world column of the sprite center
    double y = 0;  // feet row
    int skin = 0;
    double anim_phase = 0;
    friend bool operator==(const NpcState&, const NpcState&) = default;
};

struct StickyNpcState {
    int x_offset = 0;     // from the screen center column
    int y_offset = 0;     // from the local ground, negative is higher
    double jump_y = 0;    // extra vertical displacement, <= 0
    double vy = 0;
    int skin = 0;
    double anim_phase = 0;
    friend bool operator==(const StickyNpcState&, const StickyNpcState&) = default;
};

struct DistractorState {
    double x = 0;  // screen coordinates
    double y = 0;
    double vx = 0;
    double vy = 0;
    double angle = 0;  // degrees
    double angular_velocity = 0;
    int shape = 0;
    int color = 0;
    int size = 1;
    friend bool operator==(const DistractorState&, const DistractorState&) = default;
};

struct PointLight {
    double cx = 0;
    double cy = 0;
    Rgb color;
    friend bool operator==(const PointLight&, const PointLight&) = default;
};

// Per-episode appearance choices. They never feed back into the agent.
struct EpisodeVisuals {
    int background_index = 0;
    Rgb background_color;
    std::shared_ptr<const Frame> noise;
    int agent_skin = 0;
    int agent_shape = 0;
    int agent_color = 0;
    std::vector<PointLight> lights;

    friend bool operator==(const EpisodeVisuals& a, const EpisodeVisuals& b) {
        const bool same_noise =
            a.noise == b.noise || (a.noise && b.noise && *a.noise == *b.noise);
        return a.background_index == b.background_index &&
               a.background_color == b.background_color && same_noise &&
               a.agent_skin == b.agent_skin && a.agent_shape == b.agent_shape &&
               a.agent_color == b.agent_color && a.lights == b.lights;
    }
};

struct LatentState {
    AgentKinematics agent;
    double x_init = 0;
    double x_max = 0;
    std::shared_ptr<const Heightfield> heightfield;
    std::vector<NpcState> npcs;
    std::vector<StickyNpcState> sticky;
    std::vector<DistractorState> distractors;
    double camera_x = 0;
    int t = 0;
    RngKey key;  // episode key; every stochastic update derives from it
    EpisodeVisuals visuals;

    friend bool operator==(const LatentState& a, const LatentState& b) {
        const bool same_hf = a.heightfield == b.heightfield ||
                             (a.heightfield && b.heightfield && *a.heightfield == *b.heightfield);
        return a.agent == b.agent && a.x_init == b.x_init && a.x_max == b.x_max && same_hf &&
               a.npcs == b.npcs && a.sticky == b.sticky && a.distractors == b.distractors &&
               a.camera_x == b.camera_x && a.t == b.t && a.key == b.key &&
               a.visuals == b.visuals;
    }
};

// Sub-pixel to pixel rounding used for collision and the idle test.
inline int round_px(double v) { return static_cast<int>(std::floor(v + 0.5)); }

// Agent-only transition: input, jump, gravity, damping, integrate, collide.
AgentKinematics agent_step(const AgentKinematics& agent, int action, const PhysicsParams& physics,
                           const Heightfield& hf);

// Full latent transition. Throws EpisodeFinished when t >= episode_length and
// InvalidAction for bits outside [0, 7].
LatentState physics_step(const LatentState& state, int action, const EnvConfig& config);

struct RewardParams {
    double forward_reward_scale = 0.2;
    double jump_penalty = 10.0;
    double timestep_penalty = 0.1;
    double idle_penalty = 5.0;
};

RewardParams reward_params(const EnvConfig& config);

double compute_reward(const LatentState& prev, const LatentState& next, int action,
                      const RewardParams& params);

bool is_truncated(const LatentState& state, int episode_length);

double camera_target(double camera_x, double agent_x, const EnvConfig& config);

// Seeds the per-step entity streams.
enum class Stream : std::uint64_t {
    Layout = 1,
    Background = 2,
    Skin = 3,
    Npc = 4,
    Sticky = 5,
    Distractors = 6,
    Lights = 7,
    StickyStep = 8,
    BackgroundSwitch = 9,
    Render = 10,
    AgentLook = 11,
};

RngKey stream_key(RngKey episode, Stream s);
RngKey step_key(RngKey episode, Stream s, int t);

}  // namespace kage
