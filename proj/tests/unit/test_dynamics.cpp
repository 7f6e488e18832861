#include <doctest.h>

#include <cmath>

#include "kage/dynamics.hpp"
#include "kage/env.hpp"
#include "kage/errors.hpp"
#include "kage/layout.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kage;

namespace {

Heightfield flat(int length = 2048, int y = 96) {
    Heightfield hf;
    hf.ground_y.assign(static_cast<std::size_t>(length), y);
    return hf;
}

AgentKinematics grounded_at(double x, double y = 96) {
    AgentKinematics a;
    a.x = x;
    a.y = y;
    a.grounded = true;
    return a;
}

LatentState state_at(double x, double x_max, const EnvConfig& c) {
    LatentState s;
    s.heightfield = std::make_shared<const Heightfield>(flat(c.layout.length));
    s.agent = grounded_at(x);
    s.x_init = 16;
    s.x_max = x_max;
    return s;
}

}  // namespace

TEST_CASE("hand-traced single steps") {
    const PhysicsParams p;
    const auto hf = flat();
    const auto right = agent_step(grounded_at(20), kRight, p, hf);
    CHECK(right.vx == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(right.x == doctest::Approx(20.8).epsilon(1e-15));
    CHECK(right.grounded);

    const auto jump = agent_step(grounded_at(20), kJump, p, hf);
    CHECK(jump.vy == -6.75);
    CHECK_FALSE(jump.grounded);
    CHECK(jump.y == 96 - 6.75);

    // Airborne: JUMP does nothing new.
    const auto again = agent_step(jump, kJump, p, hf);
    CHECK(again.vy == -6.75 + 0.75);
}

TEST_CASE("left and right cancel; facing follows input") {
    const auto hf = flat();
    const auto both = agent_step(grounded_at(20), kLeft | kRight, PhysicsParams{}, hf);
    CHECK(both.x == 20);
    CHECK(both.vx == 0);
    const auto left = agent_step(grounded_at(20), kLeft, PhysicsParams{}, hf);
    CHECK(left.facing_left);
    CHECK(left.x < 20);
}

TEST_CASE("agent_step matches the physics oracle on random terrain and actions") {
    EnvConfig c;
    RngStream r(make_key(17));
    for (int trial = 0; trial < 20; ++trial) {
        const auto hf = generate_layout(c, make_key(static_cast<std::uint64_t>(trial)));
        AgentKinematics a = grounded_at(16, hf.ground_y[16]);
        oracle::Body b{a.x, a.y, 0, 0, true};
        for (int t = 0; t < 500; ++t) {
            const int action = static_cast<int>(r.uniform_int(0, 7));
            a = agent_step(a, action, c.physics, hf);
            b = oracle::step_body(b, action, c.physics, hf.ground_y);
            REQUIRE(a.x == b.x);
            REQUIRE(a.y == b.y);
            REQUIRE(a.vx == b.vx);
            REQUIRE(a.vy == b.vy);
            REQUIRE(a.grounded == b.grounded);
            REQUIRE(a.vy <= c.physics.max_fall_speed);
        }
    }
}

TEST_CASE("horizontal speed never exceeds move_speed") {
    const auto hf = flat();
    RngStream r(make_key(3));
    AgentKinematics a = grounded_at(30);
    for (int t = 0; t < 300; ++t) {
        a = agent_step(a, static_cast<int>(r.uniform_int(0, 7)), PhysicsParams{}, hf);
        REQUIRE(std::abs(a.vx) <= 1.0);
    }
}

TEST_CASE("x is clamped to the level") {
    const auto hf = flat(100);
    AgentKinematics a = grounded_at(0.2);
    for (int t = 0; t < 5; ++t) a = agent_step(a, kLeft, PhysicsParams{}, hf);
    CHECK(a.x == 0);
    a = grounded_at(98.9);
    for (int t = 0; t < 5; ++t) a = agent_step(a, kRight, PhysicsParams{}, hf);
    CHECK(a.x == 99);
}

TEST_CASE("reward closed forms") {
    const EnvConfig c;
    const auto rp = reward_params(c);
    auto reward_for = [&](double x0, double x_max, double x1, int action) {
        LatentState prev = state_at(x0, x_max, c), next = prev;
        next.agent.x = x1;
        return compute_reward(prev, next, action, rp);
    };
    CHECK(reward_for(20, 20, 21, kRight) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(reward_for(20, 20, 20, kJump) == doctest::Approx(-15.1).epsilon(1e-12));
    CHECK(reward_for(20, 20, 19, kLeft) == doctest::Approx(-0.1).epsilon(1e-12));
    // Progress only counts beyond the furthest point so far.
    CHECK(reward_for(20, 30, 21, kRight) == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(reward_for(20.2, 20.2, 20.4, kRight) == doctest::Approx(0.2 * 0.2 - 5.1).epsilon(1e-12));
}

TEST_CASE("reward agrees with the oracle and respects the per-step bound on rollouts") {
    const EnvConfig c = testing::flat_config();
    const auto rp = reward_params(c);
    const Environment env(c);
    RngStream r(make_key(8));
    for (int ep = 0; ep < 5; ++ep) {
        auto [obs, s] = env.reset(make_key(static_cast<std::uint64_t>(ep)));
        (void)obs;
        EnvConfig gen = c;
        gen.layout.p_change = 0.7;
        s.heightfield = std::make_shared<const Heightfield>(generate_layout(gen, make_key(static_cast<std::uint64_t>(ep))));
        for (int t = 0; t < 500; ++t) {
            const int action = static_cast<int>(r.uniform_int(0, 7));
            const auto next = physics_step(s, action, c);
            const double rw = compute_reward(s, next, action, rp);
            REQUIRE(rw == oracle::reward(s.agent.x, next.agent.x, s.x_max, action, rp));
            REQUIRE(rw <= rp.forward_reward_scale * c.physics.move_speed);
            REQUIRE(next.x_max >= s.x_max);
            REQUIRE(next.x_max == std::max(s.x_max, next.agent.x));
            s = next;
        }
    }
}

TEST_CASE("truncation only by time limit") {
    LatentState s;
    s.t = 499;
    CHECK_FALSE(is_truncated(s, 500));
    s.t = 500;
    CHECK(is_truncated(s, 500));
    const EnvConfig c;
    LatentState end = state_at(2047, 2047, c);
    end.t = 10;
    CHECK_FALSE(is_truncated(end, 500));
}

TEST_CASE("physics_step errors") {
    const EnvConfig c = testing::flat_config();
    LatentState s = state_at(16, 16, c);
    CHECK_THROWS_AS(physics_step(s, 9, c), InvalidAction);
    CHECK_THROWS_AS(physics_step(s, -1, c), InvalidAction);
    s.t = 500;
    CHECK_THROWS_AS(physics_step(s, 0, c), EpisodeFinished);
}

TEST_CASE("push-scrolling camera never moves back") {
    const EnvConfig c;
    CHECK(camera_target(0, 16, c) == 0);
    CHECK(camera_target(0, 100, c) == 100 - 32);
    CHECK(camera_target(68, 50, c) == 68);
    CHECK(camera_target(0, 2047, c) == 2048 - 128);
}
