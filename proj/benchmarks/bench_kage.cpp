#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "kage/config.hpp"
#include "kage/env.hpp"
#include "kage/layout.hpp"
#include "kage/postfx.hpp"
#include "kage/theory.hpp"

namespace {

using namespace kage;

// Configs and their assets are built once per process.
const std::shared_ptr<const Environment>& shared_env(const std::string& name) {
    static std::shared_ptr<const Environment> easy, hard;
    auto& slot = name == "hard" ? hard : easy;
    if (!slot) {
        const auto loaded = load_config_file(std::string(KAGE_DATA_DIR) + "/configs/" + name + ".yaml");
        slot = std::make_shared<const Environment>(loaded.config);
    }
    return slot;
}

std::vector<int> random_actions(std::size_t n, std::uint64_t seed) {
    RngStream rng(make_key(seed));
    std::vector<int> a(n);
    for (auto& v : a) v = static_cast<int>(rng.uniform_int(0, 7));
    return a;
}

void BM_PhysicsStep(benchmark::State& st) {
    const auto& env = shared_env("easy");
    LatentState s = env->initial_state(make_key(1));
    const auto actions = random_actions(1024, 2);
    std::size_t i = 0;
    for (auto _ : st) {
        s = physics_step(s, actions[i++ & 1023], env->config());
        if (s.t >= env->config().episode.episode_length) s = env->initial_state(make_key(i));
        benchmark::DoNotOptimize(s.x_max);
    }
}
BENCHMARK(BM_PhysicsStep);

void BM_BatchStep(benchmark::State& st, const std::string& name) {
    const auto& env = shared_env(name);
    const auto n = static_cast<std::size_t>(st.range(0));
    BatchEnv batch(env, n);
    batch.reset(split(make_key(3), n));
    const auto actions = random_actions(n, 4);
    for (auto _ : st) {
        batch.step(actions);
        benchmark::DoNotOptimize(batch.observations().data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK_CAPTURE(BM_BatchStep, easy, std::string("easy"))->RangeMultiplier(4)->Range(1, 256)->UseRealTime();
BENCHMARK_CAPTURE(BM_BatchStep, hard, std::string("hard"))->Arg(1)->Arg(16)->UseRealTime();

void BM_RenderScene(benchmark::State& st) {
    const auto& env = shared_env("easy");
    const LatentState s = env->initial_state(make_key(5));
    Frame out(env->height(), env->width());
    for (auto _ : st) {
        env->renderer().render_scene(s, out.view());
        benchmark::DoNotOptimize(out.pixels().data());
    }
}
BENCHMARK(BM_RenderScene);

void BM_FilterPreset(benchmark::State& st, const std::string& preset) {
    const FilterParams params = preset_bundle(preset);
    const auto& env = shared_env("easy");
    const Frame src = env->renderer().render_scene(env->initial_state(make_key(6)));
    Frame out = src;
    std::uint64_t k = 0;
    for (auto _ : st) {
        out = src;
        apply_filters(out.view(), params, make_key(k++));
        benchmark::DoNotOptimize(out.pixels().data());
    }
}
BENCHMARK_CAPTURE(BM_FilterPreset, noir, std::string("noir"));
BENCHMARK_CAPTURE(BM_FilterPreset, vintage, std::string("vintage"));

void BM_Layout(benchmark::State& st) {
    const auto& env = shared_env("easy");
    std::uint64_t k = 0;
    for (auto _ : st) benchmark::DoNotOptimize(generate_layout(env->config(), make_key(k++)));
}
BENCHMARK(BM_Layout);

void BM_TheoryVerification(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(theory::run_verification(10, 7, 1e-12));
}
BENCHMARK(BM_TheoryVerification)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
