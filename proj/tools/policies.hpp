#pragma once

#include <string>
#include <vector>

#include "kage/env.hpp"

namespace kage::cli {

// Trivial policies that ignore the observation.
Policy idle_policy();
Policy right_policy();
Policy random_policy();
Policy named_policy(const std::string& name);  // idle, right or random

// Stateless stochastic checkpoint: {"action_probs": [p0, ..., p7]}.
Policy load_checkpoint(const std::string& path);
// Every *.json file in dir, sorted by name.
std::vector<Policy> load_checkpoint_dir(const std::string& dir);

}  // namespace kage::cli
