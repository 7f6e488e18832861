#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kage/env.hpp"

namespace kage::cli {

struct ThroughputRow {
    int n_envs = 0;
    double steps_per_second = 0;
    double wall_seconds = 0;  // median measured wall time
    std::string config_label;
    std::string note;
};

struct ThroughputOptions {
    int min_envs_pow = 0;
    int max_envs_pow = 8;
    int steps_per_point = 100;  // batched steps; warmup is a tenth of this
    int repetitions = 3;
    std::uint64_t seed = 0;
};

// Median over repetitions of n_envs * steps / wall time, random actions.
ThroughputRow measure_point(const std::shared_ptr<const Environment>& env, int n_envs,
                            const ThroughputOptions& options, const std::string& label);

// Sweeps n_envs = 2^min_envs_pow ... 2^max_envs_pow. A point that runs out of
// memory is reported in the note of the last row and ends the sweep.
std::vector<ThroughputRow> sweep_throughput(const std::shared_ptr<const Environment>& env,
                                            const ThroughputOptions& options, const std::string& label);

std::string hardware_note();
std::string throughput_csv(const std::vector<ThroughputRow>& rows);
std::string throughput_json(const std::vector<ThroughputRow>& rows);

}  // namespace kage::cli
