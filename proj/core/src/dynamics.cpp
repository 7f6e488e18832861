#include "kage/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kage/errors.hpp"

namespace kage {

AgentKinematics agent_step(const AgentKinematics& agent, int action, const PhysicsParams& physics,
                           const Heightfield& hf) {
    AgentKinematics a = agent;
    const int dir = ((action & kRight) ? 1 : 0) - ((action & kLeft) ? 1 : 0);
    a.vx = static_cast<double>(physics.move_speed * dir);
    if (dir != 0) a.facing_left = dir < 0;

    // grounded changes only at collision, so a take-off step is still damped
    // by ground friction.
    if ((action & kJump) && a.grounded) a.vy = physics.jump_force;
    a.vy = std::min(a.vy + physics.gravity, physics.max_fall_speed);
    a.vx *= a.grounded ? physics.ground_friction : physics.air_resistance;

    const double max_x = static_cast<double>(hf.ground_y.size()) - 1.0;
    a.x = std::clamp(a.x + a.vx, 0.0, max_x);
    a.y += a.vy;

    const double ground = ground_height_at(hf, round_px(a.x));
    if (a.y >= ground) {
        a.y = ground;
        a.vy = 0;
        a.grounded = true;
    } else {
        a.grounded = false;
    }

    a.idle = round_px(a.x) == round_px(agent.x);
    a.anim_phase = a.idle ? 0.0 : agent.anim_phase + 1.0;
    return a;
}

double camera_target(double camera_x, double agent_x, const EnvConfig& config) {
    const double margin = config.screen.W / 4.0;
    const double max_cam = std::max(0.0, static_cast<double>(config.layout.length - config.screen.W));
    return std::clamp(std::max(camera_x, agent_x - margin), 0.0, max_cam);
}

RngKey stream_key(RngKey episode, Stream s) {
    return fold_in(episode, static_cast<std::uint64_t>(s));
}

RngKey step_key(RngKey episode, Stream s, int t) {
    return fold_in(stream_key(episode, s), static_cast<std::uint64_t>(t));
}

LatentState physics_step(const LatentState& state, int action, const EnvConfig& config) {
    if (!valid_action(action)) throw InvalidAction("action " + std::to_string(action) + " outside [0, 7]");
    if (state.t >= config.episode.episode_length)
        throw EpisodeFinished("episode finished at t=" + std::to_string(state.t));

    LatentState next = state;
    next.agent = agent_step(state.agent, action, config.physics, *state.heightfield);
    next.x_max = std::max(state.x_max, next.agent.x);
    next.t = state.t + 1;
    next.camera_x = camera_target(state.camera_x, next.agent.x, config);

    for (auto& n : next.npcs) n.anim_phase += 1.0;

    if (!next.sticky.empty()) {
        RngStream rng(step_key(state.key, Stream::StickyStep, state.t));
        for (auto& s : next.sticky) {
            s.anim_phase += 1.0;
            if (!config.npc.sticky_can_jump) continue;
            const bool airborne = s.jump_y < 0 || s.vy != 0;
            const bool jump = rng.bernoulli(config.npc.sticky_jump_probability);
            if (!airborne && jump) s.vy = config.physics.jump_force;
            if (s.jump_y < 0 || s.vy != 0) {
                s.vy = std::min(s.vy + config.physics.gravity, config.physics.max_fall_speed);
                s.jump_y += s.vy;
                if (s.jump_y >= 0) {
                    s.jump_y = 0;
                    s.vy = 0;
                }
            }
        }
    }

    const double max_x = config.screen.W - 1;
    const double max_y = config.screen.H - 1;
    for (auto& d : next.distractors) {
        if (config.distractors.can_move) {
            d.x += d.vx;
            d.y += d.vy;
            if (d.x < 0) { d.x = -d.x; d.vx = -d.vx; }
            if (d.x > max_x) { d.x = 2 * max_x - d.x; d.vx = -d.vx; }
            if (d.y < 0) { d.y = -d.y; d.vy = -d.vy; }
            if (d.y > max_y) { d.y = 2 * max_y - d.y; d.vy = -d.vy; }
            d.x = std::clamp(d.x, 0.0, max_x);
            d.y = std::clamp(d.y, 0.0, max_y);
        }
        if (config.distractors.can_rotate) d.angle = std::fmod(d.angle + d.angular_velocity, 360.0);
    }
    return next;
}

RewardParams reward_params(const EnvConfig& config) {
    return {config.episode.forward_reward_scale, config.episode.jump_penalty,
            config.episode.timestep_penalty, config.episode.idle_penalty};
}

double compute_reward(const LatentState& prev, const LatentState& next, int action,
                      const RewardParams& params) {
    const double progress = std::max(0.0, next.agent.x - prev.x_max);
    const bool jump = (action & kJump) != 0;
    const bool idle = round_px(next.agent.x) == round_px(prev.agent.x);
    return params.forward_reward_scale * progress -
           (params.jump_penalty * (jump ? 1.0 : 0.0) + params.timestep_penalty +
            params.idle_penalty * (idle ? 1.0 : 0.0));
}

bool is_truncated(const LatentState& state, int episode_length) {
    return state.t >= episode_length;
}

}  // namespace kage
