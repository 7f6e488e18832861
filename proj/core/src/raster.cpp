#include "kage/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace kage {

namespace {

struct Pt {
    double x;
    double y;
};

template <std::size_t N>
bool in_polygon(const std::array<Pt, N>& poly, double x, double y) {
    bool inside = false;
    for (std::size_t i = 0, j = N - 1; i < N; j = i++) {
        const Pt& a = poly[i];
        const Pt& b = poly[j];
        if ((a.y > y) != (b.y > y) && x < (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x)
            inside = !inside;
    }
    return inside;
}

template <std::size_t N>
std::array<Pt, N> regular(double radius, double phase) {
    std::array<Pt, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        const double t = phase + 2.0 * std::numbers::pi * static_cast<double>(i) / N;
        out[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return out;
}

std::array<Pt, 10> star(double outer) {
    std::array<Pt, 10> out{};
    for (std::size_t i = 0; i < 10; ++i) {
        const double r = i % 2 == 0 ? outer : outer * 0.4;
        const double t = -std::numbers::pi / 2 + std::numbers::pi * static_cast<double>(i) / 5;
        out[i] = {r * std::cos(t), r * std::sin(t)};
    }
    return out;
}

}  // namespace

bool shape_contains(ShapeType shape, double h, double x, double y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    switch (shape) {
        case ShapeType::Circle: return x * x + y * y <= h * h;
        case ShapeType::Square: return ax <= h && ay <= h;
        case ShapeType::Diamond: return ax + ay <= h;
        case ShapeType::Ellipse: {
            const double ry = 0.6 * h;
            return (x * x) / (h * h) + (y * y) / (ry * ry) <= 1.0;
        }
        case ShapeType::Cross: {
            const double arm = std::max(0.5, h / 3.0);
            return (ax <= arm && ay <= h) || (ay <= arm && ax <= h);
        }
        case ShapeType::Line: return ax <= h && ay <= std::max(0.5, h / 5.0);
        case ShapeType::Triangle: {
            const std::array<Pt, 3> tri{{{0, -h}, {h, h}, {-h, h}}};
            return in_polygon(tri, x, y);
        }
        case ShapeType::Polygon: return in_polygon(regular<6>(h, 0.0), x, y);
        case ShapeType::Star: return in_polygon(star(h), x, y);
    }
    return false;
}

void rasterize_shape(FrameView canvas, ShapeType shape, Rgb color, double cx, double cy,
                     int size, double angle) {
    const double h = size / 2.0;
    const double reach = h * std::numbers::sqrt2 + 1.0;
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - reach)));
    const int x1 = std::min(canvas.width - 1, static_cast<int>(std::ceil(cx + reach)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - reach)));
    const int y1 = std::min(canvas.height - 1, static_cast<int>(std::ceil(cy + reach)));
    if (x0 > x1 || y0 > y1) return;

    const bool rotated = shape != ShapeType::Circle && std::fmod(angle, 360.0) != 0.0;
    const double rad = -angle * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    for (int py = y0; py <= y1; ++py) {
        for (int px = x0; px <= x1; ++px) {
            double dx = px + 0.5 - cx;
            double dy = py + 0.5 - cy;
            if (rotated) {
                const double rx = c * dx - s * dy;
                const double ry = s * dx + c * dy;
                dx = rx;
                dy = ry;
            }
            if (shape_contains(shape, h, dx, dy)) canvas.set(py, px, color);
        }
    }
}

void blit_sprite(FrameView canvas, const RgbaImage& sprite, int left, int top, bool mirror) {
    const int w = sprite.width();
    const int x0 = std::max(0, -left);
    const int x1 = std::min(w, canvas.width - left);
    const int y0 = std::max(0, -top);
    const int y1 = std::min(sprite.height(), canvas.height - top);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const std::uint8_t* p = sprite.pixel(y, mirror ? w - 1 - x : x);
            if (p[3] >= 128) canvas.set(top + y, left + x, {p[0], p[1], p[2]});
        }
    }
}

void fill_rect(FrameView canvas, int left, int top, int width, int height, Rgb color) {
    const int x0 = std::max(0, left);
    const int x1 = std::min(canvas.width, left + width);
    const int y0 = std::max(0, top);
    const int y1 = std::min(canvas.height, top + height);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) canvas.set(y, x, color);
}

}  // namespace kage
