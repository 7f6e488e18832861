#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

namespace kage {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Non-owning H x W x 3 row-major 8-bit view. This is the observation layout
// handed across the batch API.
template <class Byte>
struct BasicFrameView {
    std::span<Byte> pixels;
    int height = 0;
    int width = 0;

    std::size_t index(int y, int x) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)) * 3u;
    }
    bool contains(int y, int x) const { return y >= 0 && y < height && x >= 0 && x < width; }

    Rgb at(int y, int x) const {
        const std::size_t i = index(y, x);
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
    void set(int y, int x, Rgb c) const
        requires(!std::is_const_v<Byte>)
    {
        const std::size_t i = index(y, x);
        pixels[i] = c.r;
        pixels[i + 1] = c.g;
        pixels[i + 2] = c.b;
    }
};

using FrameView = BasicFrameView<std::uint8_t>;
using ConstFrameView = BasicFrameView<const std::uint8_t>;

// Owning RGB image: the observation o_t.
class Frame {
public:
    Frame() = default;
    Frame(int height, int width, Rgb fill = {});

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    std::size_t size_bytes() const noexcept { return pixels_.size(); }

    std::span<std::uint8_t> pixels() noexcept { return pixels_; }
    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

    FrameView view() noexcept { return {pixels_, height_, width_}; }
    ConstFrameView view() const noexcept { return {pixels_, height_, width_}; }

    Rgb at(int y, int x) const { return view().at(y, x); }
    void set(int y, int x, Rgb c) { view().set(y, x, c); }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> pixels_;
};

// RGBA image used for sprite frames.
class RgbaImage {
public:
    RgbaImage() = default;
    RgbaImage(int height, int width);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }

    const std::uint8_t* pixel(int y, int x) const {
        return pixels_.data() + (static_cast<std::size_t>(y) * width_ + x) * 4u;
    }
    std::uint8_t* pixel(int y, int x) {
        return pixels_.data() + (static_cast<std::size_t>(y) * width_ + x) * 4u;
    }
    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

    friend bool operator==(const RgbaImage&, const RgbaImage&) = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> pixels_;
};

Frame resize_nearest(const Frame& src, int height, int width);
RgbaImage resize_nearest(const RgbaImage& src, int height, int width);

// Mean RGB over the whole frame.
std::array<double, 3> mean_rgb(const Frame& frame);
// Mean RGB over pixels with alpha >= 128.
std::array<double, 3> mean_rgb(const RgbaImage& image);

}  // namespace kage
