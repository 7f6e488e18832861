#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kage/image.hpp"

namespace kage {

// PNG or JPEG, chosen by file signature. Alpha is dropped.
Frame read_image(const std::string& path);
// PNG or JPEG; JPEG and alpha-less PNG come back fully opaque.
RgbaImage read_rgba_image(const std::string& path);

std::vector<std::uint8_t> encode_png(const Frame& frame);
void write_png(const std::string& path, const Frame& frame);
void write_png(const std::string& path, const RgbaImage& image);

// Raw frame dump: H, W, N as little-endian uint32, then N*H*W*3 bytes.
void write_raw(const std::string& path, std::span<const Frame> frames);
std::vector<Frame> read_raw(const std::string& path);

}  // namespace kage
