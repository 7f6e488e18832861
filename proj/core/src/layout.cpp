#include "kage/layout.hpp"

#include <algorithm>

#include "kage/palette.hpp"

namespace kage {

namespace {
constexpr std::uint64_t kHeightsStream = 1;
constexpr std::uint64_t kColorStream = 2;
}  // namespace

Heightfield generate_layout(const EnvConfig& config, RngKey key) {
    const auto& p = config.layout;
    Heightfield hf;
    hf.run_width = p.run_width;
    hf.thickness = p.ground_thickness;
    hf.ground_y.resize(static_cast<std::size_t>(p.length));

    const int hi = std::max(0, p.height_px - p.ground_thickness);
    int y = std::clamp(p.base_ground_y, 0, hi);
    const int full_runs = std::max(1, p.length / p.run_width);

    RngStream rng(fold_in(key, kHeightsStream));
    for (int run = 0; run < full_runs; ++run) {
        if (run > 0 && rng.bernoulli(p.p_change)) {
            const bool up = rng.bernoulli(p.p_up_given_change);
            const int step =
                static_cast<int>(rng.uniform_int(p.min_step_height, p.max_step_height)) *
                p.pix_per_unit;
            y = std::clamp(up ? y - step : y + step, 0, hi);
        }
        const int begin = run * p.run_width;
        const int end = run + 1 == full_runs ? p.length : std::min(p.length, begin + p.run_width);
        std::fill(hf.ground_y.begin() + begin, hf.ground_y.begin() + end, y);
    }

    RngStream color_rng(fold_in(key, kColorStream));
    hf.color_index = static_cast<int>(
        color_rng.uniform_int(0, static_cast<std::int64_t>(p.layout_colors.size()) - 1));
    hf.color = *find_color(scene_palette(), p.layout_colors[hf.color_index]);
    return hf;
}

int ground_height_at(const Heightfield& hf, int x) {
    const int n = static_cast<int>(hf.ground_y.size());
    return hf.ground_y[static_cast<std::size_t>(std::clamp(x, 0, n - 1))];
}

}  // namespace kage
