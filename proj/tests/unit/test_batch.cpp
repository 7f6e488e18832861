#include <doctest.h>

#include <cstring>

#include "kage/env.hpp"
#include "kage/errors.hpp"
#include "support/fixtures.hpp"

using namespace kage;

namespace {

std::vector<RngKey> keys_for(std::size_t n, std::uint64_t seed) {
    std::vector<RngKey> k;
    for (std::size_t i = 0; i < n; ++i) k.push_back(fold_in(make_key(seed), i));
    return k;
}

std::vector<int> actions_at(std::size_t n, int t) {
    std::vector<int> a(n);
    RngStream r(fold_in(make_key(1234), static_cast<std::uint64_t>(t)));
    for (auto& v : a) v = static_cast<int>(r.uniform_int(0, 7));
    return a;
}

EnvConfig busy_config() {
    EnvConfig c;
    c.episode.episode_length = 40;  // crosses an auto-reset
    c.distractors.enabled = true;
    c.distractors.count = 3;
    c.npc.sticky_enabled = true;
    return c;
}

}  // namespace

TEST_CASE("batch of 64 equals 64 scalar environments and two batches of 32") {
    const auto env = std::make_shared<const Environment>(busy_config());
    constexpr std::size_t n = 64;
    const auto keys = keys_for(n, 7);

    BatchEnv big(env, n), lo(env, 32), hi(env, 32);
    big.reset(keys);
    lo.reset(std::span(keys).first(32));
    hi.reset(std::span(keys).subspan(32));

    std::vector<LatentState> scalar(n);
    std::vector<Frame> scalar_obs(n);
    for (std::size_t i = 0; i < n; ++i) std::tie(scalar_obs[i], scalar[i]) = env->reset(keys[i]);

    for (int t = 0; t < 60; ++t) {
        const auto a = actions_at(n, t);
        big.step(a);
        lo.step(std::span(a).first(32));
        hi.step(std::span(a).subspan(32));
        REQUIRE(big.errors().empty());
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = env->step(scalar[i], a[i]);
            scalar[i] = r.state;
            const BatchEnv& half = i < 32 ? lo : hi;
            const std::size_t j = i % 32;
            REQUIRE(big.rewards()[i] == r.reward);
            REQUIRE(half.rewards()[j] == r.reward);
            REQUIRE(bool(big.truncated()[i]) == r.truncated);
            REQUIRE(big.x()[i] == r.info.x);
            REQUIRE(big.t()[i] == r.info.t);
            REQUIRE(big.distance()[i] == r.info.distance);
            REQUIRE(big.progress()[i] == r.info.progress);
            REQUIRE(bool(big.success()[i]) == r.info.success);
            REQUIRE(big.states()[i] == r.state);
            const auto view = big.observation(i);
            REQUIRE(std::memcmp(view.pixels.data(), r.obs.pixels().data(), r.obs.size_bytes()) == 0);
            const auto hv = half.observation(j);
            REQUIRE(std::memcmp(hv.pixels.data(), r.obs.pixels().data(), r.obs.size_bytes()) == 0);
        }
    }
}

TEST_CASE("observations form one contiguous N x H x W x 3 buffer") {
    const auto env = std::make_shared<const Environment>(testing::flat_config());
    BatchEnv b(env, 5);
    b.reset(keys_for(5, 3));
    const auto all = b.observations();
    CHECK(all.size() == 5u * 128u * 128u * 3u);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto v = b.observation(i);
        CHECK(v.pixels.data() == all.data() + i * 128 * 128 * 3);
        CHECK(v.height == 128);
        CHECK(v.width == 128);
    }
    CHECK(b.t()[0] == 0);
    CHECK(b.x()[0] == kSpawnX);
}

TEST_CASE("invalid actions are reported per index and leave that env untouched") {
    const auto env = std::make_shared<const Environment>(testing::flat_config());
    BatchEnv b(env, 4);
    b.reset(keys_for(4, 9));
    const auto before = b.states();
    std::vector<std::uint8_t> obs_before(b.observations().begin(), b.observations().end());
    b.step(std::vector<int>{kRight, 9, -3, kRight});
    REQUIRE(b.errors().size() == 2);
    CHECK(b.errors()[0].index == 1);
    CHECK(b.errors()[1].index == 2);
    CHECK(b.states()[1] == before[1]);
    CHECK(b.states()[2] == before[2]);
    CHECK(b.states()[0].t == 1);
    CHECK(b.states()[3].t == 1);
    const std::size_t bytes = 128 * 128 * 3;
    CHECK(std::memcmp(b.observations().data() + bytes, obs_before.data() + bytes, 2 * bytes) == 0);

    CHECK_THROWS_AS(b.step(std::vector<int>{0, 0}), DimensionMismatch);
    CHECK_THROWS_AS(b.reset(keys_for(3, 1)), DimensionMismatch);
}

TEST_CASE("elementwise batched helpers") {
    const Environment env(busy_config());
    const auto keys = keys_for(6, 2);
    auto [obs, states] = batched_reset(env, keys);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto [o, s] = env.reset(keys[i]);
        CHECK(obs[i] == o);
        CHECK(states[i] == s);
    }
    std::vector<int> actions{0, 1, 2, 3, 4, 11};
    const auto out = batched_step(env, states, actions);
    REQUIRE(out.errors.size() == 1);
    CHECK(out.errors[0].index == 5);
    CHECK_FALSE(out.results[5].has_value());
    for (std::size_t i = 0; i < 5; ++i) {
        const auto r = env.step(states[i], actions[i]);
        REQUIRE(out.results[i].has_value());
        CHECK(out.results[i]->state == r.state);
        CHECK(out.results[i]->obs == r.obs);
        CHECK(out.results[i]->reward == r.reward);
    }
    CHECK_THROWS_AS(batched_step(env, states, std::vector<int>{0}), DimensionMismatch);
}
