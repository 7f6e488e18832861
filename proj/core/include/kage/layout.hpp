#pragma once

#include <vector>

#include "kage/config.hpp"
#include "kage/image.hpp"
#include "kage/rng.hpp"

namespace kage {

// Stair-stepped ground: one ground y per world column (larger y = lower).
struct Heightfield {
    std::vector<int> ground_y;
    int run_width = 1;
    int thickness = 1;
    int color_index = 0;
    Rgb color;

    friend bool operator==(const Heightfield&, const Heightfield&) = default;
};

Heightfield generate_layout(const EnvConfig& config, RngKey key);

// Columns outside [0, length) clamp to the nearest end column.
int ground_height_at(const Heightfield& hf, int x);

}  // namespace kage
