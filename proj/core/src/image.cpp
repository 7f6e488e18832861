#include "kage/image.hpp"

#include <array>

namespace kage {

Frame::Frame(int height, int width, Rgb fill)
    : height_(height), width_(width),
      pixels_(static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * 3u) {
    if (fill != Rgb{}) {
        for (std::size_t i = 0; i < pixels_.size(); i += 3) {
            pixels_[i] = fill.r;
            pixels_[i + 1] = fill.g;
            pixels_[i + 2] = fill.b;
        }
    }
}

RgbaImage::RgbaImage(int height, int width)
    : height_(height), width_(width),
      pixels_(static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * 4u) {}

Frame resize_nearest(const Frame& src, int height, int width) {
    if (src.height() == height && src.width() == width) return src;
    Frame out(height, width);
    for (int y = 0; y < height; ++y) {
        const int sy = static_cast<int>(static_cast<long long>(y) * src.height() / height);
        for (int x = 0; x < width; ++x) {
            const int sx = static_cast<int>(static_cast<long long>(x) * src.width() / width);
            out.set(y, x, src.at(sy, sx));
        }
    }
    return out;
}

RgbaImage resize_nearest(const RgbaImage& src, int height, int width) {
    if (src.height() == height && src.width() == width) return src;
    RgbaImage out(height, width);
    for (int y = 0; y < height; ++y) {
        const int sy = static_cast<int>(static_cast<long long>(y) * src.height() / height);
        for (int x = 0; x < width; ++x) {
            const int sx = static_cast<int>(static_cast<long long>(x) * src.width() / width);
            const std::uint8_t* s = src.pixel(sy, sx);
            std::uint8_t* d = out.pixel(y, x);
            for (int c = 0; c < 4; ++c) d[c] = s[c];
        }
    }
    return out;
}

std::array<double, 3> mean_rgb(const Frame& frame) {
    std::array<double, 3> sum{};
    const auto px = frame.pixels();
    for (std::size_t i = 0; i < px.size(); i += 3)
        for (int c = 0; c < 3; ++c) sum[c] += px[i + c];
    const double n = static_cast<double>(px.size() / 3);
    for (auto& s : sum) s /= n > 0 ? n : 1.0;
    return sum;
}

std::array<double, 3> mean_rgb(const RgbaImage& image) {
    std::array<double, 3> sum{};
    double n = 0;
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            const std::uint8_t* p = image.pixel(y, x);
            if (p[3] < 128) continue;
            for (int c = 0; c < 3; ++c) sum[c] += p[c];
            n += 1;
        }
    for (auto& s : sum) s /= n > 0 ? n : 1.0;
    return sum;
}

}  // namespace kage
