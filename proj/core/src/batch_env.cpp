#include <tbb/parallel_for.h>

#include "kage/env.hpp"
#include "kage/errors.hpp"

namespace kage {

std::pair<std::vector<Frame>, std::vector<LatentState>> batched_reset(const Environment& env,
                                                                      std::span<const RngKey> keys) {
    std::vector<Frame> obs(keys.size(), Frame(env.height(), env.width()));
    std::vector<LatentState> states(keys.size());
    tbb::parallel_for(std::size_t{0}, keys.size(),
                      [&](std::size_t i) { env.reset_into(keys[i], states[i], obs[i].view()); });
    return {std::move(obs), std::move(states)};
}

BatchedStepResults batched_step(const Environment& env, std::span<const LatentState> states,
                                std::span<const int> actions) {
    if (states.size() != actions.size())
        throw DimensionMismatch("batched_step: " + std::to_string(states.size()) + " states but " +
                                std::to_string(actions.size()) + " actions");
    BatchedStepResults out;
    out.results.resize(states.size());
    std::vector<std::string> messages(states.size());
    tbb::parallel_for(std::size_t{0}, states.size(), [&](std::size_t i) {
        try {
            out.results[i] = env.step(states[i], actions[i]);
        } catch (const Error& e) {
            messages[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < states.size(); ++i)
        if (!out.results[i]) out.errors.push_back({i, messages[i]});
    return out;
}

BatchEnv::BatchEnv(std::shared_ptr<const Environment> env, std::size_t n)
    : env_(std::move(env)),
      states_(n),
      obs_(n * static_cast<std::size_t>(env_->height()) * static_cast<std::size_t>(env_->width()) * 3u),
      rewards_(n),
      terminated_(n),
      truncated_(n),
      distance_(n),
      progress_(n),
      success_(n),
      x_(n),
      t_(n) {}

FrameView BatchEnv::frame(std::size_t i) {
    const std::size_t bytes = static_cast<std::size_t>(height()) * width() * 3u;
    return {std::span<std::uint8_t>(obs_).subspan(i * bytes, bytes), height(), width()};
}

ConstFrameView BatchEnv::observation(std::size_t i) const {
    const std::size_t bytes = static_cast<std::size_t>(height()) * width() * 3u;
    return {std::span<const std::uint8_t>(obs_).subspan(i * bytes, bytes), height(), width()};
}

void BatchEnv::store(std::size_t i, const StepOutcome& out) {
    rewards_[i] = out.reward;
    terminated_[i] = out.terminated;
    truncated_[i] = out.truncated;
    distance_[i] = out.info.distance;
    progress_[i] = out.info.progress;
    success_[i] = out.info.success;
    x_[i] = out.info.x;
    t_[i] = out.info.t;
}

void BatchEnv::reset(std::span<const RngKey> keys) {
    if (keys.size() != size())
        throw DimensionMismatch("BatchEnv::reset: expected " + std::to_string(size()) + " keys");
    errors_.clear();
    tbb::parallel_for(std::size_t{0}, size(), [&](std::size_t i) {
        env_->reset_into(keys[i], states_[i], frame(i));
        StepOutcome o;
        o.info = metrics(states_[i], env_->config());
        store(i, o);
    });
}

void BatchEnv::step(std::span<const int> actions) {
    if (actions.size() != size())
        throw DimensionMismatch("BatchEnv::step: expected " + std::to_string(size()) + " actions");
    errors_.clear();
    std::vector<std::string> messages(size());
    tbb::parallel_for(std::size_t{0}, size(), [&](std::size_t i) {
        try {
            store(i, env_->step_into(states_[i], actions[i], frame(i)));
        } catch (const Error& e) {
            messages[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < size(); ++i)
        if (!messages[i].empty()) errors_.push_back({i, messages[i]});
}

}  // namespace kage
