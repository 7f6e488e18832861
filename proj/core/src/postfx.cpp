#include "kage/postfx.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace kage {

namespace {

constexpr float kMax = 255.0f;

inline float clampf(float v) { return std::clamp(v, 0.0f, kMax); }

template <class F>
void per_value(FloatImage& img, F&& f) {
    for (auto& v : img.data) v = clampf(f(v));
}

void rgb_to_hsv(float r, float g, float b, float& h, float& s, float& v) {
    const float mx = std::max({r, g, b});
    const float mn = std::min({r, g, b});
    const float d = mx - mn;
    v = mx;
    s = mx > 0 ? d / mx : 0;
    if (d <= 0) {
        h = 0;
        return;
    }
    if (mx == r) h = 60.0f * std::fmod((g - b) / d, 6.0f);
    else if (mx == g) h = 60.0f * ((b - r) / d + 2.0f);
    else h = 60.0f * ((r - g) / d + 4.0f);
    if (h < 0) h += 360.0f;
}

void hsv_to_rgb(float h, float s, float v, float& r, float& g, float& b) {
    const float c = v * s;
    const float hp = h / 60.0f;
    const float x = c * (1 - std::abs(std::fmod(hp, 2.0f) - 1));
    float r1 = 0, g1 = 0, b1 = 0;
    switch (static_cast<int>(hp) % 6) {
        case 0: r1 = c; g1 = x; break;
        case 1: r1 = x; g1 = c; break;
        case 2: g1 = c; b1 = x; break;
        case 3: g1 = x; b1 = c; break;
        case 4: r1 = x; b1 = c; break;
        default: r1 = c; b1 = x; break;
    }
    const float m = v - c;
    r = r1 + m;
    g = g1 + m;
    b = b1 + m;
}

void hsv_stage(FloatImage& img, double saturation, double hue_shift) {
    const float sat = static_cast<float>(saturation);
    float shift = static_cast<float>(std::fmod(hue_shift, 360.0));
    if (shift < 0) shift += 360.0f;
    for (std::size_t i = 0; i < img.data.size(); i += 3) {
        float h, s, v;
        rgb_to_hsv(img.data[i], img.data[i + 1], img.data[i + 2], h, s, v);
        s = std::clamp(s * sat, 0.0f, 1.0f);
        h += shift;
        if (h >= 360.0f) h -= 360.0f;
        hsv_to_rgb(h, s, v, img.data[i], img.data[i + 1], img.data[i + 2]);
        for (int c = 0; c < 3; ++c) img.data[i + c] = clampf(img.data[i + c]);
    }
}

// Clamp-to-edge box blur along one axis using a running sum.
void box_pass(const std::vector<float>& src, std::vector<float>& dst, int h, int w, int r,
              bool horizontal) {
    const int n = horizontal ? w : h;
    const int lines = horizontal ? h : w;
    const float inv = 1.0f / static_cast<float>(2 * r + 1);
    auto idx = [&](int line, int k, int c) -> std::size_t {
        const int y = horizontal ? line : k;
        const int x = horizontal ? k : line;
        return (static_cast<std::size_t>(y) * w + x) * 3 + c;
    };
    for (int line = 0; line < lines; ++line) {
        for (int c = 0; c < 3; ++c) {
            double sum = 0;
            for (int k = -r; k <= r; ++k) sum += src[idx(line, std::clamp(k, 0, n - 1), c)];
            for (int k = 0; k < n; ++k) {
                dst[idx(line, k, c)] = static_cast<float>(sum) * inv;
                sum += src[idx(line, std::min(k + r + 1, n - 1), c)];
                sum -= src[idx(line, std::max(k - r, 0), c)];
            }
        }
    }
}

void box_blur(FloatImage& img, int r) {
    if (r <= 0) return;
    std::vector<float> tmp(img.data.size());
    box_pass(img.data, tmp, img.height, img.width, r, true);
    box_pass(tmp, img.data, img.height, img.width, r, false);
}

double normalized_center_distance(int y, int x, int h, int w) {
    const double cx = w / 2.0;
    const double cy = h / 2.0;
    const double dx = x + 0.5 - cx;
    const double dy = y + 0.5 - cy;
    return std::sqrt(dx * dx + dy * dy) / std::sqrt(cx * cx + cy * cy);
}

void run_stages(FloatImage& img, const FilterParams& p, RngKey key) {
    if (p.brightness != 0.0) {
        const float add = static_cast<float>(kBrightnessScale * p.brightness);
        per_value(img, [&](float v) { return v + add; });
    }
    if (p.contrast != 1.0) {
        const float c = static_cast<float>(p.contrast);
        per_value(img, [&](float v) { return (v - 128.0f) * c + 128.0f; });
    }
    if (p.gamma != 1.0) {
        const double g = p.gamma;
        per_value(img, [&](float v) { return static_cast<float>(255.0 * std::pow(v / 255.0, g)); });
    }
    if (p.saturation != 1.0 || p.hue_shift != 0.0) hsv_stage(img, p.saturation, p.hue_shift);
    if (p.color_temp != 0.0) {
        const float d = static_cast<float>(kColorTempScale * p.color_temp);
        for (std::size_t i = 0; i < img.data.size(); i += 3) {
            img.data[i] = clampf(img.data[i] + d);
            img.data[i + 2] = clampf(img.data[i + 2] - d);
        }
    }
    if (p.color_jitter_std > 0.0) {
        RngStream rng(fold_in(key, 1));
        std::array<float, 9> m{};
        for (int i = 0; i < 9; ++i)
            m[i] = static_cast<float>((i % 4 == 0 ? 1.0 : 0.0) +
                                      rng.normal(0.0, p.color_jitter_std * kJitterScale));
        for (std::size_t i = 0; i < img.data.size(); i += 3) {
            const float r = img.data[i], g = img.data[i + 1], b = img.data[i + 2];
            for (int c = 0; c < 3; ++c)
                img.data[i + c] = clampf(m[c * 3] * r + m[c * 3 + 1] * g + m[c * 3 + 2] * b);
        }
    }
    if (p.gaussian_noise_std > 0.0) {
        RngStream rng(fold_in(key, 2));
        for (auto& v : img.data) v = clampf(v + static_cast<float>(rng.normal(0.0, p.gaussian_noise_std)));
    }
    if (p.poisson_noise_scale > 0.0) {
        RngStream rng(fold_in(key, 3));
        const double s = p.poisson_noise_scale;
        for (auto& v : img.data) v = clampf(static_cast<float>(rng.poisson(v * s) / s));
    }
    if (p.blur_sigma > 0.0)
        for (int r : box_radii_for_gauss(p.blur_sigma)) box_blur(img, r);
    if (p.sharpen_amount > 0.0) {
        FloatImage blurred = img;
        box_blur(blurred, 1);
        const float a = static_cast<float>(p.sharpen_amount);
        for (std::size_t i = 0; i < img.data.size(); ++i)
            img.data[i] = clampf(img.data[i] + a * (img.data[i] - blurred.data[i]));
    }
    if (p.pixelate_factor > 1) {
        const int f = p.pixelate_factor;
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                const std::size_t src = (static_cast<std::size_t>(y / f * f) * img.width + x / f * f) * 3;
                const std::size_t dst = (static_cast<std::size_t>(y) * img.width + x) * 3;
                for (int c = 0; c < 3; ++c) img.data[dst + c] = img.data[src + c];
            }
    }
    if (p.vignette_strength > 0.0) {
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                const double d = normalized_center_distance(y, x, img.height, img.width);
                const float k = static_cast<float>(std::max(0.0, 1.0 - p.vignette_strength * d * d));
                const std::size_t i = (static_cast<std::size_t>(y) * img.width + x) * 3;
                for (int c = 0; c < 3; ++c) img.data[i + c] = clampf(img.data[i + c] * k);
            }
    }
    if (p.radial_light_strength > 0.0) {
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                const double d = normalized_center_distance(y, x, img.height, img.width);
                const float add = static_cast<float>(p.radial_light_strength * 255.0 * std::max(0.0, 1.0 - d));
                const std::size_t i = (static_cast<std::size_t>(y) * img.width + x) * 3;
                for (int c = 0; c < 3; ++c) img.data[i + c] = clampf(img.data[i + c] + add);
            }
    }
}

}  // namespace

FloatImage FloatImage::from(ConstFrameView frame) {
    FloatImage img;
    img.height = frame.height;
    img.width = frame.width;
    img.data.assign(frame.pixels.begin(), frame.pixels.end());
    return img;
}

void FloatImage::quantize_into(FrameView out) const {
    for (std::size_t i = 0; i < data.size(); ++i)
        out.pixels[i] = static_cast<std::uint8_t>(std::floor(clampf(data[i]) + 0.5f));
}

bool is_identity(const FilterParams& params) { return params == FilterParams{}; }

std::vector<int> box_radii_for_gauss(double sigma, int passes) {
    const double ideal = std::sqrt(12.0 * sigma * sigma / passes + 1.0);
    int wl = static_cast<int>(std::floor(ideal));
    if (wl % 2 == 0) --wl;
    const int wu = wl + 2;
    const double m_ideal =
        (12.0 * sigma * sigma - passes * wl * wl - 4.0 * passes * wl - 3.0 * passes) / (-4.0 * wl - 4.0);
    const long m = std::lround(m_ideal);
    std::vector<int> radii;
    for (int i = 0; i < passes; ++i) radii.push_back(((i < m ? wl : wu) - 1) / 2);
    return radii;
}

void apply_filters(FloatImage& img, const FilterParams& params, RngKey key) {
    if (is_identity(params)) return;
    run_stages(img, params, key);
    for (std::size_t i = 0; i < params.pop_filter_list.size(); ++i)
        run_stages(img, preset_bundle(params.pop_filter_list[i]), fold_in(key, 100 + i));
}

void apply_filters(FrameView frame, const FilterParams& params, RngKey key) {
    if (is_identity(params)) return;
    FloatImage img = FloatImage::from(ConstFrameView{frame.pixels, frame.height, frame.width});
    apply_filters(img, params, key);
    img.quantize_into(frame);
}

Frame apply_filters(const Frame& frame, const FilterParams& params, RngKey key) {
    Frame out = frame;
    apply_filters(out.view(), params, key);
    return out;
}

void apply_point_lights(FloatImage& img, const EffectParams& params,
                        std::span<const PointLight> lights) {
    const double radius = params.point_light_radius * std::min(img.height, img.width);
    for (const auto& light : lights) {
        const std::array<double, 3> color{light.color.r / 255.0, light.color.g / 255.0,
                                          light.color.b / 255.0};
        const int x0 = std::max(0, static_cast<int>(std::floor(light.cx - radius)));
        const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(light.cx + radius)));
        const int y0 = std::max(0, static_cast<int>(std::floor(light.cy - radius)));
        const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(light.cy + radius)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const double dx = x + 0.5 - light.cx;
                const double dy = y + 0.5 - light.cy;
                const double d = std::sqrt(dx * dx + dy * dy);
                if (d >= radius) continue;
                const double k = params.point_light_intensity * 255.0 *
                                 std::pow(1.0 - d / radius, params.point_light_falloff);
                const std::size_t i = (static_cast<std::size_t>(y) * img.width + x) * 3;
                for (int c = 0; c < 3; ++c)
                    img.data[i + c] = clampf(img.data[i + c] + static_cast<float>(k * color[c]));
            }
    }
}

Frame apply_point_lights(const Frame& frame, const EffectParams& params,
                         std::span<const PointLight> lights) {
    Frame out = frame;
    FloatImage img = FloatImage::from(frame.view());
    apply_point_lights(img, params, lights);
    img.quantize_into(out.view());
    return out;
}

}  // namespace kage
