#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kage/config.hpp"
#include "kage/dynamics.hpp"
#include "kage/image.hpp"
#include "kage/rng.hpp"

namespace kage {

inline constexpr double kBrightnessScale = 255.0;
inline constexpr double kColorTempScale = 64.0;
inline constexpr double kJitterScale = 0.01;

// Interleaved H x W x 3 float working buffer, values in [0, 255].
struct FloatImage {
    int height = 0;
    int width = 0;
    std::vector<float> data;

    static FloatImage from(ConstFrameView frame);
    // Round-half-up quantization with clamping.
    void quantize_into(FrameView out) const;
};

bool is_identity(const FilterParams& params);

// Runs the filter stages in fixed order (brightness, contrast, gamma,
// saturation, hue_shift, color_temp, color_jitter, gaussian_noise,
// poisson_noise, blur, sharpen, pixelate, vignette, radial_light), then each
// preset in pop_filter_list. Every stage clamps to [0, 255].
void apply_filters(FloatImage& img, const FilterParams& params, RngKey key);
void apply_filters(FrameView frame, const FilterParams& params, RngKey key);
Frame apply_filters(const Frame& frame, const FilterParams& params, RngKey key);

// Additive lights: intensity * color * max(0, 1 - d/R)^falloff with
// R = radius * min(H, W).
void apply_point_lights(FloatImage& img, const EffectParams& params,
                        std::span<const PointLight> lights);
Frame apply_point_lights(const Frame& frame, const EffectParams& params,
                         std::span<const PointLight> lights);

// Box radii whose three-pass composition approximates a Gaussian of `sigma`.
std::vector<int> box_radii_for_gauss(double sigma, int passes = 3);

// Named preset bundles. Fields left at defaults are untouched by the preset.
struct PresetTable {
    int version = 0;
    std::vector<std::pair<std::string, FilterParams>> bundles;
};

// Parses the fixture text format:
//   version = <int>
//   [name]
//   <filters field> = <number>
PresetTable parse_presets(std::string_view text);
const PresetTable& builtin_presets();
FilterParams preset_bundle(std::string_view name);

// Closed-form composition of two bundles that each touch at most one and the
// same composable field (brightness, contrast, gamma, saturation, hue_shift,
// color_temp). Returns nullopt otherwise.
std::optional<FilterParams> compose_bundles(const FilterParams& first, const FilterParams& second);

}  // namespace kage
