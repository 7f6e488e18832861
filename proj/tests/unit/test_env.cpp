#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "kage/env.hpp"
#include "kage/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kage;

namespace {

std::map<std::string, double> read_golden() {
    std::ifstream in(testing::test_data_path("always_right_golden.txt"));
    REQUIRE(in.good());
    std::map<std::string, double> out;
    std::string key;
    while (in >> key) {
        if (key[0] == '#') {
            std::getline(in, key);
            continue;
        }
        double v = 0;
        in >> v;
        out[key] = v;
    }
    return out;
}

int always(ConstFrameView, RngKey) { return kRight; }

}  // namespace

TEST_CASE("reset is a pure function of the key") {
    const Environment env(EnvConfig{});
    const auto [o1, s1] = env.reset(make_key(42));
    const auto [o2, s2] = env.reset(make_key(42));
    const auto [o3, s3] = env.reset(make_key(43));
    CHECK(o1 == o2);
    CHECK(s1 == s2);
    CHECK_FALSE(s1 == s3);
    CHECK(o1.height() == 128);
    CHECK(o1.width() == 128);
    CHECK(s1.t == 0);
    CHECK(s1.agent.x == kSpawnX);
    CHECK(s1.x_init == kSpawnX);
    CHECK(s1.agent.grounded);
    CHECK(s1.agent.y == s1.heightfield->ground_y[16]);
}

TEST_CASE("metrics follow the definitions") {
    EnvConfig c;
    LatentState s;
    s.x_init = 16;
    s.agent.x = 16 + 980;
    s.x_max = s.agent.x;
    s.t = 7;
    const StepInfo i = metrics(s, c);
    CHECK(i.distance == 980);
    CHECK(i.progress == doctest::Approx(2.0));  // not clamped
    CHECK(i.success);
    s.agent.x = 20;  // walked back: success is sticky through x_max
    CHECK(metrics(s, c).success);
    CHECK(metrics(s, c).distance == 4);
    s.x_max = 16 + 489.9;
    CHECK_FALSE(metrics(s, c).success);
    s.agent.x = 10;
    CHECK(metrics(s, c).distance == -6);
}

TEST_CASE("success triggers exactly at the distance threshold") {
    EnvConfig c = testing::flat_config();
    c.episode.dist_to_success = 40;
    const Environment env(c, {}, false);
    auto [obs, s] = env.reset(make_key(1));
    int t_success = -1;
    for (int t = 0; t < 100 && t_success < 0; ++t) {
        const auto r = env.step(s, kRight);
        if (r.info.success) t_success = r.info.t;
        s = r.state;
    }
    // 0.8 px per step from x = 16: x_max - x_init >= 40 first at t = 50,
    // give or take accumulated rounding in the running sum.
    CHECK(t_success >= 50);
    CHECK(t_success <= 51);
}

TEST_CASE("always-RIGHT on flat ground matches the oracle and the frozen fixture") {
    const EnvConfig c = testing::flat_config();
    const auto golden = read_golden();
    const auto ref = oracle::always_right_flat(c);
    CHECK(ref.distance == doctest::Approx(golden.at("distance")).epsilon(1e-12));
    CHECK(ref.episode_return == doctest::Approx(golden.at("episode_return")).epsilon(1e-12));
    CHECK(ref.success == (golden.at("success") != 0));

    const Environment env(c);
    const auto runs = env.rollout(always, make_key(5), 2);
    for (const auto& r : runs) {
        CHECK(r.distance == doctest::Approx(golden.at("distance")).epsilon(1e-12));
        CHECK(r.episode_return == doctest::Approx(golden.at("episode_return")).epsilon(1e-12));
        CHECK(r.success == (golden.at("success") != 0));
        CHECK(r.progress == doctest::Approx(r.distance / c.episode.dist_to_success));
    }
}

TEST_CASE("idle policy return is the per-step penalty times the horizon") {
    const Environment env(EnvConfig{});
    const auto runs = env.rollout([](ConstFrameView, RngKey) { return 0; }, make_key(9), 3, 0.9);
    for (const auto& r : runs) {
        CHECK(r.episode_return == doctest::Approx(-5.1 * 500));
        CHECK(r.discounted_return == doctest::Approx(-5.1 * (1 - std::pow(0.9, 500)) / 0.1));
        CHECK(r.distance == 0);
        CHECK_FALSE(r.success);
    }
}

TEST_CASE("rollout validation and policy keys") {
    const Environment env(testing::flat_config());
    CHECK_THROWS_AS(env.rollout(always, make_key(1), 0), ValidationError);
    CHECK_THROWS_AS(env.rollout([](ConstFrameView, RngKey) { return 8; }, make_key(1), 1), InvalidAction);
    // A key-driven policy is reproducible.
    auto random = [](ConstFrameView, RngKey k) { return static_cast<int>(RngStream(k).uniform_int(0, 7)); };
    CHECK(env.rollout(random, make_key(2), 2) == env.rollout(random, make_key(2), 2));
}

TEST_CASE("auto-reset hands over the next episode") {
    EnvConfig c = testing::flat_config();
    c.episode.episode_length = 5;
    const Environment env(c);
    auto [obs, s] = env.reset(make_key(3));
    for (int t = 0; t < 4; ++t) s = env.step(s, kRight).state;
    const auto last = env.step(s, kRight);
    CHECK(last.truncated);
    CHECK_FALSE(last.terminated);
    CHECK(last.info.t == 5);
    CHECK(last.state.t == 0);
    CHECK(last.state.key == Environment::next_episode_key(make_key(3)));
    CHECK(last.obs == env.reset(Environment::next_episode_key(make_key(3))).first);

    const Environment manual(c, {}, false);
    auto [o2, s2] = manual.reset(make_key(3));
    for (int t = 0; t < 5; ++t) s2 = manual.step(s2, kRight).state;
    CHECK(s2.t == 5);
    CHECK_THROWS_AS(manual.step(s2, kRight), EpisodeFinished);
}

TEST_CASE("step rejects invalid actions without touching the state") {
    const Environment env(testing::flat_config());
    auto [obs, s] = env.reset(make_key(3));
    LatentState copy = s;
    Frame buf(128, 128);
    CHECK_THROWS_AS(env.step_into(copy, 12, buf.view()), InvalidAction);
    CHECK(copy == s);
}

TEST_CASE("world NPCs: first one inside the spawn view") {
    EnvConfig c;
    const Environment env(c);
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto s = env.reset(make_key(k)).second;
        REQUIRE(s.npcs.size() >= static_cast<std::size_t>(c.npc.min_npc_count));
        REQUIRE(s.npcs.size() <= static_cast<std::size_t>(c.npc.max_npc_count));
        CHECK(s.npcs[0].x < c.screen.W);
        for (std::size_t i = 1; i < s.npcs.size(); ++i) CHECK(s.npcs[i].x >= c.screen.W);
    }
}

TEST_CASE("background switching is keyed by episode and step") {
    EnvConfig c = testing::flat_config();
    c.background.mode = "color";
    c.background.switch_frequency = 0.5;
    const Environment env(c);
    auto [obs, s] = env.reset(make_key(8));
    int switches = 0;
    for (int t = 0; t < 100; ++t) {
        const auto r = env.step(s, 0);
        switches += r.state.visuals.background_color != s.visuals.background_color;
        s = r.state;
    }
    CHECK(switches > 10);
    c.background.switch_frequency = 0.0;
    const Environment still(c);
    auto [o2, s2] = still.reset(make_key(8));
    const Rgb first = s2.visuals.background_color;
    for (int t = 0; t < 50; ++t) s2 = still.step(s2, 0).state;
    CHECK(s2.visuals.background_color == first);
}
