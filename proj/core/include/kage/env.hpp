#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kage/config.hpp"
#include "kage/dynamics.hpp"
#include "kage/image.hpp"
#include "kage/renderer.hpp"
#include "kage/rng.hpp"

namespace kage {

struct StepInfo {
    double distance = 0;  // x_t - x_init
    double progress = 0;  // distance / dist_to_success, unclamped
    bool success = false; // furthest distance reached D at some step
    double x = 0;
    int t = 0;
    friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

// Outcome of one step without the observation or state, which the caller
// owns.
struct StepOutcome {
    double reward = 0;
    bool terminated = false;  // there are no terminal states
    bool truncated = false;
    StepInfo info;
    friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

struct StepResult {
    Frame obs;
    double reward = 0;
    bool terminated = false;
    bool truncated = false;
    StepInfo info;
    LatentState state;
};

struct EpisodeSummary {
    double distance = 0;
    double progress = 0;
    bool success = false;
    double episode_return = 0;
    double discounted_return = 0;
    friend bool operator==(const EpisodeSummary&, const EpisodeSummary&) = default;
};

// A policy sees one observation and a per-step key for its own sampling.
using Policy = std::function<int(ConstFrameView obs, RngKey key)>;

StepInfo metrics(const LatentState& state, const EnvConfig& config);

class Environment {
public:
    explicit Environment(EnvConfig config, const AssetOptions& options = {}, bool auto_reset = true);
    Environment(std::shared_ptr<const Renderer> renderer, bool auto_reset = true);

    const EnvConfig& config() const noexcept { return renderer_->config(); }
    const Renderer& renderer() const noexcept { return *renderer_; }
    bool auto_reset() const noexcept { return auto_reset_; }
    int height() const noexcept { return renderer_->height(); }
    int width() const noexcept { return renderer_->width(); }

    LatentState initial_state(RngKey key) const;
    std::pair<Frame, LatentState> reset(RngKey key) const;
    void reset_into(RngKey key, LatentState& state, FrameView obs) const;

    // Throws InvalidAction; with auto-reset disabled, EpisodeFinished once
    // truncated. With auto-reset, a truncating step returns the next
    // episode's first observation and state and the finished episode's info.
    StepResult step(const LatentState& state, int action) const;
    StepOutcome step_into(LatentState& state, int action, FrameView obs) const;

    // Full episodes without auto-reset. Episode i uses fold_in(key, i).
    std::vector<EpisodeSummary> rollout(const Policy& policy, RngKey key, int n_episodes,
                                        double gamma = 1.0) const;

    static RngKey next_episode_key(RngKey key);

private:
    void advance_visuals(LatentState& state) const;

    std::shared_ptr<const Renderer> renderer_;
    bool auto_reset_;
};

struct IndexedError {
    std::size_t index = 0;
    std::string message;
};

// Elementwise batch helpers: index i equals the scalar call on element i.
std::pair<std::vector<Frame>, std::vector<LatentState>> batched_reset(const Environment& env,
                                                                      std::span<const RngKey> keys);

struct BatchedStepResults {
    std::vector<std::optional<StepResult>> results;
    std::vector<IndexedError> errors;
};

BatchedStepResults batched_step(const Environment& env, std::span<const LatentState> states,
                                std::span<const int> actions);

// N environments over contiguous buffers: observations are N x H x W x 3
// uint8, row-major; per-env scalars are parallel arrays.
class BatchEnv {
public:
    BatchEnv(std::shared_ptr<const Environment> env, std::size_t n);

    std::size_t size() const noexcept { return states_.size(); }
    int height() const noexcept { return env_->height(); }
    int width() const noexcept { return env_->width(); }
    const Environment& env() const noexcept { return *env_; }

    void reset(std::span<const RngKey> keys);
    // Invalid actions leave that index untouched and are reported in errors().
    void step(std::span<const int> actions);

    std::span<const std::uint8_t> observations() const noexcept { return obs_; }
    ConstFrameView observation(std::size_t i) const;
    std::span<const double> rewards() const noexcept { return rewards_; }
    std::span<const std::uint8_t> terminated() const noexcept { return terminated_; }
    std::span<const std::uint8_t> truncated() const noexcept { return truncated_; }
    std::span<const double> distance() const noexcept { return distance_; }
    std::span<const double> progress() const noexcept { return progress_; }
    std::span<const std::uint8_t> success() const noexcept { return success_; }
    std::span<const double> x() const noexcept { return x_; }
    std::span<const std::int32_t> t() const noexcept { return t_; }
    const std::vector<IndexedError>& errors() const noexcept { return errors_; }
    const std::vector<LatentState>& states() const noexcept { return states_; }

private:
    FrameView frame(std::size_t i);
    void store(std::size_t i, const StepOutcome& out);

    std::shared_ptr<const Environment> env_;
    std::vector<LatentState> states_;
    std::vector<std::uint8_t> obs_;
    std::vector<double> rewards_;
    std::vector<std::uint8_t> terminated_;
    std::vector<std::uint8_t> truncated_;
    std::vector<double> distance_;
    std::vector<double> progress_;
    std::vector<std::uint8_t> success_;
    std::vector<double> x_;
    std::vector<std::int32_t> t_;
    std::vector<IndexedError> errors_;
};

}  // namespace kage
