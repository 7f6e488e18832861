#pragma once

#include "kage/image.hpp"
#include "kage/palette.hpp"

namespace kage {

// Fills every pixel whose center lies inside the shape, rotated by `angle`
// degrees about (cx, cy). `size` is the shape's extent in pixels. Pixels
// outside the canvas are clipped.
void rasterize_shape(FrameView canvas, ShapeType shape, Rgb color, double cx, double cy,
                     int size, double angle);

inline Frame rasterize_shape(Frame canvas, ShapeType shape, Rgb color, double cx, double cy,
                             int size, double angle) {
    rasterize_shape(canvas.view(), shape, color, cx, cy, size, angle);
    return canvas;
}

// Point-in-shape test in the shape's unrotated local frame.
bool shape_contains(ShapeType shape, double half_size, double x, double y);

// Draws pixels with alpha >= 128; mirrored horizontally when `mirror`.
void blit_sprite(FrameView canvas, const RgbaImage& sprite, int left, int top, bool mirror);

void fill_rect(FrameView canvas, int left, int top, int width, int height, Rgb color);

}  // namespace kage
