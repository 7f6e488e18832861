#include "kage/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kage/errors.hpp"
#include "kage/numeric.hpp"
#include "kage/palette.hpp"

namespace kage {

namespace {

constexpr std::uint64_t kNextEpisodeTag = 0x4e455854'45504953ULL;
constexpr std::uint64_t kPolicyTag = 0x504f4c49'4359ULL;

int pick(RngStream& rng, std::size_t n) {
    return static_cast<int>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
}

std::shared_ptr<const Frame> white_noise(RngKey key, int h, int w) {
    auto f = std::make_shared<Frame>(h, w);
    RngStream rng(key);
    auto px = f->pixels();
    for (std::size_t i = 0; i < px.size(); i += 4) {
        const std::uint32_t v = rng.next_u32();
        for (std::size_t k = 0; k < 4 && i + k < px.size(); ++k)
            px[i + k] = static_cast<std::uint8_t>(v >> (8 * k));
    }
    return f;
}

void sample_visuals(const Renderer& renderer, LatentState& s) {
    const EnvConfig& c = renderer.config();
    const AssetLibrary& assets = renderer.assets();
    const Heightfield& hf = *s.heightfield;
    const int H = c.screen.H;
    const int W = c.screen.W;

    {
        RngStream rng(stream_key(s.key, Stream::Background));
        if (c.background.mode == "color") {
            const int i = pick(rng, c.background.color_names.size());
            s.visuals.background_color = *find_color(scene_palette(), c.background.color_names[static_cast<std::size_t>(i)]);
        } else if (c.background.mode == "image" && !assets.backgrounds.empty()) {
            s.visuals.background_index = pick(rng, assets.backgrounds.size());
        } else if (c.background.mode == "noise") {
            s.visuals.noise = white_noise(fold_in(stream_key(s.key, Stream::Background), 1), H, W);
        }
    }
    {
        RngStream rng(stream_key(s.key, Stream::AgentLook));
        if (!assets.agent_skins.empty()) s.visuals.agent_skin = pick(rng, assets.agent_skins.size());
        s.visuals.agent_shape = pick(rng, c.character.shape_types.size());
        s.visuals.agent_color = pick(rng, c.character.shape_colors.size());
    }
    if (c.npc.enabled && !assets.npc_skins.empty()) {
        RngStream rng(stream_key(s.key, Stream::Npc));
        const int count = static_cast<int>(rng.uniform_int(c.npc.min_npc_count, c.npc.max_npc_count));
        // The first NPC stands inside the spawn view; the rest are stratified
        // over the remainder of the level.
        const double length = static_cast<double>(hf.ground_y.size());
        const double view = std::min(length, static_cast<double>(W));
        for (int i = 0; i < count; ++i) {
            NpcState n;
            n.x = i == 0 ? view * rng.uniform()
                         : view + (length - view) * (i - 1 + rng.uniform()) / (count - 1);
            n.y = ground_height_at(hf, round_px(n.x)) - c.npc.spawn_y_offset;
            n.skin = pick(rng, assets.npc_skins.size());
            n.anim_phase = static_cast<double>(rng.uniform_int(0, 29));
            s.npcs.push_back(n);
        }
    }
    if (c.npc.sticky_enabled && !assets.sticky_skins.empty()) {
        RngStream rng(stream_key(s.key, Stream::Sticky));
        const int count = static_cast<int>(rng.uniform_int(c.npc.min_sticky_count, c.npc.max_sticky_count));
        const auto& offsets = c.npc.sticky_x_offsets;
        for (int i = 0; i < count; ++i) {
            StickyNpcState n;
            n.x_offset = offsets.empty() ? static_cast<int>(rng.uniform_int(c.npc.sticky_x_min, c.npc.sticky_x_max))
                                         : static_cast<int>(offsets[static_cast<std::size_t>(i) % offsets.size()]);
            n.y_offset = static_cast<int>(rng.uniform_int(c.npc.sticky_y_min_offset, c.npc.sticky_y_max_offset));
            n.skin = pick(rng, assets.sticky_skins.size());
            n.anim_phase = static_cast<double>(rng.uniform_int(0, 29));
            s.sticky.push_back(n);
        }
    }
    if (c.distractors.enabled) {
        RngStream rng(stream_key(s.key, Stream::Distractors));
        const auto& d = c.distractors;
        for (int i = 0; i < d.count; ++i) {
            DistractorState ds;
            ds.x = rng.uniform(0.0, W);
            ds.y = rng.uniform(0.0, H);
            const double speed = rng.uniform(d.min_speed, d.max_speed);
            const double dir = rng.uniform(0.0, 2.0 * std::numbers::pi);
            if (d.can_move) {
                ds.vx = speed * std::cos(dir);
                ds.vy = speed * std::sin(dir);
            }
            const double omega = rng.uniform(d.min_rotation_speed, d.max_rotation_speed);
            ds.angle = rng.uniform(0.0, 360.0);
            if (d.can_rotate) ds.angular_velocity = omega;
            ds.shape = pick(rng, d.shape_types.size());
            ds.color = pick(rng, d.shape_colors.size());
            ds.size = static_cast<int>(rng.uniform_int(d.min_size, d.max_size));
            s.distractors.push_back(ds);
        }
    }
    if (c.effects.point_light_enabled) {
        RngStream rng(stream_key(s.key, Stream::Lights));
        for (int i = 0; i < c.effects.point_light_count; ++i) {
            PointLight l;
            l.cx = rng.uniform(0.0, W);
            l.cy = rng.uniform(0.0, H);
            const int ci = pick(rng, c.effects.point_light_color_names.size());
            l.color = *find_color(light_palette(), c.effects.point_light_color_names[static_cast<std::size_t>(ci)]);
            s.visuals.lights.push_back(l);
        }
    }
}

}  // namespace

StepInfo metrics(const LatentState& state, const EnvConfig& config) {
    StepInfo info;
    info.distance = state.agent.x - state.x_init;
    info.progress = info.distance / config.episode.dist_to_success;
    info.success = state.x_max - state.x_init >= config.episode.dist_to_success;
    info.x = state.agent.x;
    info.t = state.t;
    return info;
}

Environment::Environment(EnvConfig config, const AssetOptions& options, bool auto_reset)
    : renderer_(std::make_shared<const Renderer>(std::move(config), options)), auto_reset_(auto_reset) {}

Environment::Environment(std::shared_ptr<const Renderer> renderer, bool auto_reset)
    : renderer_(std::move(renderer)), auto_reset_(auto_reset) {}

RngKey Environment::next_episode_key(RngKey key) { return fold_in(key, kNextEpisodeTag); }

LatentState Environment::initial_state(RngKey key) const {
    const EnvConfig& c = config();
    LatentState s;
    s.key = key;
    s.heightfield = std::make_shared<const Heightfield>(generate_layout(c, stream_key(key, Stream::Layout)));
    const double max_x = static_cast<double>(c.layout.length - 1);
    s.agent.x = std::min(kSpawnX, max_x);
    s.agent.y = ground_height_at(*s.heightfield, round_px(s.agent.x));
    s.agent.grounded = true;
    s.x_init = s.agent.x;
    s.x_max = s.agent.x;
    s.camera_x = camera_target(0.0, s.agent.x, c);
    sample_visuals(*renderer_, s);
    return s;
}

void Environment::reset_into(RngKey key, LatentState& state, FrameView obs) const {
    state = initial_state(key);
    renderer_->render(state, step_key(key, Stream::Render, 0), obs);
}

std::pair<Frame, LatentState> Environment::reset(RngKey key) const {
    Frame obs(height(), width());
    LatentState state;
    reset_into(key, state, obs.view());
    return {std::move(obs), std::move(state)};
}

void Environment::advance_visuals(LatentState& s) const {
    const auto& bg = config().background;
    if (bg.switch_frequency <= 0.0) return;
    const bool image = bg.mode == "image" && renderer_->assets().backgrounds.size() > 1;
    const bool color = bg.mode == "color" && bg.color_names.size() > 1;
    if (!image && !color) return;
    RngStream rng(step_key(s.key, Stream::BackgroundSwitch, s.t));
    if (!rng.bernoulli(bg.switch_frequency)) return;
    if (image) {
        s.visuals.background_index = pick(rng, renderer_->assets().backgrounds.size());
    } else {
        const int i = pick(rng, bg.color_names.size());
        s.visuals.background_color = *find_color(scene_palette(), bg.color_names[static_cast<std::size_t>(i)]);
    }
}

StepOutcome Environment::step_into(LatentState& state, int action, FrameView obs) const {
    const EnvConfig& c = config();
    if (!valid_action(action)) throw InvalidAction("action " + std::to_string(action) + " outside [0, 7]");
    LatentState next = physics_step(state, action, c);
    advance_visuals(next);

    StepOutcome out;
    out.reward = compute_reward(state, next, action, reward_params(c));
    out.truncated = is_truncated(next, c.episode.episode_length);
    out.info = metrics(next, c);

    if (out.truncated && auto_reset_) {
        reset_into(next_episode_key(state.key), state, obs);
        return out;
    }
    state = std::move(next);
    renderer_->render(state, step_key(state.key, Stream::Render, state.t), obs);
    return out;
}

StepResult Environment::step(const LatentState& state, int action) const {
    StepResult r;
    r.state = state;
    r.obs = Frame(height(), width());
    const StepOutcome out = step_into(r.state, action, r.obs.view());
    r.reward = out.reward;
    r.terminated = out.terminated;
    r.truncated = out.truncated;
    r.info = out.info;
    return r;
}

std::vector<EpisodeSummary> Environment::rollout(const Policy& policy, RngKey key, int n_episodes,
                                                 double gamma) const {
    if (n_episodes < 1) throw ValidationError("n_episodes", "must be >= 1");
    const Environment single(renderer_, false);
    std::vector<EpisodeSummary> out;
    Frame obs(height(), width());
    for (int e = 0; e < n_episodes; ++e) {
        const RngKey ek = fold_in(key, static_cast<std::uint64_t>(e));
        LatentState state;
        single.reset_into(ek, state, obs.view());
        CompensatedSum ret;
        CompensatedSum disc;
        double discount = 1.0;
        StepInfo info = metrics(state, config());
        while (!is_truncated(state, config().episode.episode_length)) {
            const RngKey pk = fold_in(fold_in(ek, kPolicyTag), static_cast<std::uint64_t>(state.t));
            const int action = policy(std::as_const(obs).view(), pk);
            const StepOutcome o = single.step_into(state, action, obs.view());
            ret.add(o.reward);
            disc.add(discount * o.reward);
            discount *= gamma;
            info = o.info;
        }
        out.push_back({info.distance, info.progress, info.success, ret.value(), disc.value()});
    }
    return out;
}

}  // namespace kage
