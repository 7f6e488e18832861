#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kage::testing {

std::string test_data_path(const std::string& name) { return std::string(KAGE_TEST_DATA_DIR) + "/" + name; }

std::string source_data_path(const std::string& name) { return std::string(KAGE_SOURCE_DATA_DIR) + "/" + name; }

std::vector<ReferenceRow> reference_gaps() {
    std::ifstream in(test_data_path("reference_gaps.csv"));
    if (!in) throw std::runtime_error("missing reference_gaps.csv");
    std::string line;
    std::getline(in, line);
    std::vector<ReferenceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        if (cells.size() != 14) throw std::runtime_error("bad row: " + line);
        ReferenceRow r;
        r.suite = cells[0];
        r.id = std::stoi(cells[1]);
        for (int i = 0; i < 8; ++i) r.inputs[i] = cells[2 + i];
        for (int i = 0; i < 4; ++i) r.gaps[i] = cells[10 + i];
        rows.push_back(r);
    }
    return rows;
}

int printed_decimals(const std::string& text) {
    const auto dot = text.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

Frame random_frame(RngKey key, int height, int width) {
    Frame f(height, width);
    RngStream rng(key);
    for (auto& b : f.pixels()) b = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    return f;
}

EnvConfig flat_config() {
    EnvConfig c;
    c.npc.enabled = false;
    c.layout.p_change = 0.0;
    return c;
}

}  // namespace kage::testing
