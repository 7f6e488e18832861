#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kage/config.hpp"

namespace kage {

struct BenchmarkPair {
    std::string suite;  // agent, background, distractors, effects, filters, layout
    int id = 0;
    std::string description;
    // Config groups the train/eval difference may touch.
    std::vector<std::string> axis_groups;
    // How under-specified table rows were resolved.
    std::string note;
    EnvConfig train;
    EnvConfig eval;

    std::string key() const { return suite + "/" + std::to_string(id); }
};

inline constexpr std::string_view kSuites[] = {"agent", "background", "distractors",
                                               "effects", "filters", "layout"};

// The 34 known-axis train/eval pairs, in suite order.
const std::vector<BenchmarkPair>& suite_registry();

// "suite/id", e.g. "filters/4". Throws UnknownPair.
const BenchmarkPair& find_pair(std::string_view key);

// Shared base of every pair: defaults with world NPCs disabled.
EnvConfig registry_base_config();

}  // namespace kage
