#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace kage::oracle {

namespace {

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5)); }

template <class F>
Frame per_channel(const Frame& f, F&& fn) {
    Frame out = f;
    auto px = out.pixels();
    for (auto& p : px) p = to_byte(fn(static_cast<double>(p)));
    return out;
}

template <class F>
Frame per_pixel_scale(const Frame& f, F&& fn) {
    Frame out = f;
    const int h = f.height(), w = f.width();
    const double cx = w / 2.0, cy = h / 2.0, corner = std::hypot(cx, cy);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy) / corner;
            const Rgb c = f.at(y, x);
            out.set(y, x, {to_byte(fn(c.r, d)), to_byte(fn(c.g, d)), to_byte(fn(c.b, d))});
        }
    return out;
}

}  // namespace

Body step_body(Body b, int action, const PhysicsParams& p, const std::vector<int>& ground) {
    const bool left = action & 1, right = action & 2, jump = action & 4;
    b.vx = p.move_speed * ((right ? 1.0 : 0.0) - (left ? 1.0 : 0.0));
    if (jump && b.grounded) b.vy = p.jump_force;
    b.vy = std::min(b.vy + p.gravity, p.max_fall_speed);
    if (b.grounded) b.vx = b.vx * p.ground_friction;
    else b.vx = b.vx * p.air_resistance;
    b.x = std::min(std::max(b.x + b.vx, 0.0), static_cast<double>(ground.size()) - 1.0);
    b.y = b.y + b.vy;
    const int col = std::clamp(static_cast<int>(std::floor(b.x + 0.5)), 0, static_cast<int>(ground.size()) - 1);
    if (b.y >= ground[static_cast<std::size_t>(col)]) {
        b.y = ground[static_cast<std::size_t>(col)];
        b.vy = 0;
        b.grounded = true;
    } else {
        b.grounded = false;
    }
    return b;
}

double reward(double x_prev, double x_next, double x_max_prev, int action, const RewardParams& a) {
    const double progress = x_next > x_max_prev ? x_next - x_max_prev : 0.0;
    const double jump = (action & 4) ? 1.0 : 0.0;
    const double idle = std::floor(x_next + 0.5) == std::floor(x_prev + 0.5) ? 1.0 : 0.0;
    return a.forward_reward_scale * progress - (a.jump_penalty * jump + a.timestep_penalty + a.idle_penalty * idle);
}

Rollout always_right_flat(const EnvConfig& c) {
    const std::vector<int> ground(static_cast<std::size_t>(c.layout.length), c.layout.base_ground_y);
    const RewardParams a{c.episode.forward_reward_scale, c.episode.jump_penalty, c.episode.timestep_penalty,
                         c.episode.idle_penalty};
    Body b{16.0, static_cast<double>(c.layout.base_ground_y), 0, 0, true};
    double x_max = b.x;
    std::vector<double> rewards;
    for (int t = 0; t < c.episode.episode_length; ++t) {
        const Body next = step_body(b, 2, c.physics, ground);
        rewards.push_back(reward(b.x, next.x, x_max, 2, a));
        x_max = std::max(x_max, next.x);
        b = next;
    }
    // Exact-ish sum: sort by magnitude to keep the oracle independent of the
    // library's compensated summation.
    std::sort(rewards.begin(), rewards.end(), [](double l, double r) { return std::abs(l) < std::abs(r); });
    long double total = 0;
    for (double r : rewards) total += r;
    return {b.x - 16.0, static_cast<double>(total), x_max - 16.0 >= c.episode.dist_to_success};
}

Frame brightness(const Frame& f, double b) {
    return per_channel(f, [&](double v) { return v + 255.0 * b; });
}

Frame contrast(const Frame& f, double c) {
    return per_channel(f, [&](double v) { return (v - 128.0) * c + 128.0; });
}

Frame gamma(const Frame& f, double g) {
    return per_channel(f, [&](double v) { return 255.0 * std::pow(v / 255.0, g); });
}

Frame saturation_hue(const Frame& f, double saturation, double hue_deg) {
    Frame out = f;
    for (int y = 0; y < f.height(); ++y)
        for (int x = 0; x < f.width(); ++x) {
            const Rgb px = f.at(y, x);
            const double rgb[3] = {double(px.r), double(px.g), double(px.b)};
            const double mx = std::max({rgb[0], rgb[1], rgb[2]});
            const double mn = std::min({rgb[0], rgb[1], rgb[2]});
            const double chroma = mx - mn;
            double hue = 0;
            if (chroma > 0) {
                // Hue from the position of the dominant channel on the hexcone.
                if (mx == rgb[0]) hue = (rgb[1] - rgb[2]) / chroma;
                else if (mx == rgb[1]) hue = 2.0 + (rgb[2] - rgb[0]) / chroma;
                else hue = 4.0 + (rgb[0] - rgb[1]) / chroma;
                hue *= 60.0;
            }
            double sat = mx > 0 ? chroma / mx : 0.0;
            sat = std::clamp(sat * saturation, 0.0, 1.0);
            hue = std::fmod(std::fmod(hue + hue_deg, 360.0) + 360.0, 360.0);
            // Back to RGB via the k-form: f(n) = v - v s max(0, min(k, 4 - k, 1)).
            auto channel = [&](double n) {
                const double k = std::fmod(n + hue / 60.0, 6.0);
                return mx - mx * sat * std::max(0.0, std::min({k, 4.0 - k, 1.0}));
            };
            out.set(y, x, {to_byte(channel(5)), to_byte(channel(3)), to_byte(channel(1))});
        }
    return out;
}

Frame color_temp(const Frame& f, double t) {
    Frame out = f;
    for (int y = 0; y < f.height(); ++y)
        for (int x = 0; x < f.width(); ++x) {
            const Rgb c = f.at(y, x);
            out.set(y, x, {to_byte(c.r + 64.0 * t), c.g, to_byte(c.b - 64.0 * t)});
        }
    return out;
}

Frame vignette(const Frame& f, double strength) {
    return per_pixel_scale(f, [&](double v, double d) { return v * std::max(0.0, 1.0 - strength * d * d); });
}

Frame radial_light(const Frame& f, double strength) {
    return per_pixel_scale(f, [&](double v, double d) { return v + strength * 255.0 * std::max(0.0, 1.0 - d); });
}

double enumerate_return(const theory::TabularPOMDP& m, const theory::PixelPolicy& pi) {
    double total = 0;
    std::function<void(int, int, double, double, double)> go = [&](int t, int s, double p, double ret, double disc) {
        if (t == m.horizon) {
            total += p * ret;
            return;
        }
        for (int o = 0; o < m.O.n_obs; ++o)
            for (int a = 0; a < m.n_actions; ++a) {
                const double poa = p * m.O(s, o) * pi(o, a);
                if (poa == 0) continue;
                for (int s2 = 0; s2 < m.n_states; ++s2)
                    go(t + 1, s2, poa * m.trans(s, a, s2), ret + disc * m.reward(s, a), disc * m.gamma);
            }
    };
    for (int s = 0; s < m.n_states; ++s) go(0, s, m.rho0[static_cast<std::size_t>(s)], 0.0, 1.0);
    return total;
}

namespace {

template <class ActionProb>
std::map<std::vector<int>, double> state_action_law(const theory::TabularPOMDP& m, ActionProb&& action_prob) {
    std::map<std::vector<int>, double> law;
    std::vector<int> seq;
    std::function<void(int, int, double)> go = [&](int t, int s, double p) {
        seq.push_back(s);
        if (t == m.horizon) {
            law[seq] += p;
        } else {
            for (int a = 0; a < m.n_actions; ++a) {
                seq.push_back(a);
                const double pa = action_prob(s, a);
                for (int s2 = 0; s2 < m.n_states; ++s2) go(t + 1, s2, p * pa * m.trans(s, a, s2));
                seq.pop_back();
            }
        }
        seq.pop_back();
    };
    for (int s = 0; s < m.n_states; ++s) go(0, s, m.rho0[static_cast<std::size_t>(s)]);
    return law;
}

}  // namespace

std::map<std::vector<int>, double> enumerate_state_action_law(const theory::TabularPOMDP& m,
                                                              const theory::PixelPolicy& pi) {
    return state_action_law(m, [&](int s, int a) {
        double p = 0;
        for (int o = 0; o < m.O.n_obs; ++o) p += m.O(s, o) * pi(o, a);
        return p;
    });
}

std::map<std::vector<int>, double> enumerate_state_action_law(const theory::TabularPOMDP& m,
                                                              const theory::StatePolicy& pi_s) {
    return state_action_law(m, [&](int s, int a) { return pi_s(s, a); });
}

}  // namespace kage::oracle
