#pragma once

#include <array>
#include <string>
#include <vector>

#include "kage/config.hpp"
#include "kage/image.hpp"
#include "kage/rng.hpp"

namespace kage::testing {

std::string test_data_path(const std::string& name);
std::string source_data_path(const std::string& name);

// One row of the reference per-configuration table, values as printed.
struct ReferenceRow {
    std::string suite;
    int id = 0;
    std::array<std::string, 8> inputs;  // train d/p/sr/ret, eval d/p/sr/ret
    std::array<std::string, 4> gaps;    // dist %, prog %, sr %, ret abs
};

std::vector<ReferenceRow> reference_gaps();

// Digits after the decimal point in a printed number.
int printed_decimals(const std::string& text);

// Uniform random RGB frame.
Frame random_frame(RngKey key, int height, int width);

// Defaults with world NPCs off and flat terrain.
EnvConfig flat_config();

}  // namespace kage::testing
