#include "kage/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>

// jpeglib.h needs FILE and size_t declared first.
#include <jpeglib.h>

#include "kage/errors.hpp"

namespace kage {

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_png(const std::vector<std::uint8_t>& bytes) {
    return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

bool is_jpeg(const std::vector<std::uint8_t>& bytes) {
    return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

RgbaImage decode_png(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    png_image img;
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size()))
        throw IoError("cannot decode PNG '" + path + "': " + img.message);
    img.format = PNG_FORMAT_RGBA;
    RgbaImage out(static_cast<int>(img.height), static_cast<int>(img.width));
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
        png_image_free(&img);
        throw IoError("cannot decode PNG '" + path + "': " + img.message);
    }
    std::memcpy(out.pixel(0, 0), buf.data(), buf.size());
    return out;
}

struct JpegErrorMgr {
    jpeg_error_mgr base;
    char message[JMSG_LENGTH_MAX];
};

[[noreturn]] void jpeg_throw(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    throw IoError(std::string("JPEG decode failed: ") + err->message);
}

RgbaImage decode_jpeg(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_throw;
    jpeg_create_decompress(&cinfo);
    std::unique_ptr<jpeg_decompress_struct, void (*)(jpeg_decompress_struct*)> guard(
        &cinfo, [](jpeg_decompress_struct* c) { jpeg_destroy_decompress(c); });
    try {
        jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
        jpeg_read_header(&cinfo, TRUE);
        cinfo.out_color_space = JCS_RGB;
        jpeg_start_decompress(&cinfo);
        RgbaImage out(static_cast<int>(cinfo.output_height), static_cast<int>(cinfo.output_width));
        std::vector<std::uint8_t> row(static_cast<std::size_t>(cinfo.output_width) * 3u);
        while (cinfo.output_scanline < cinfo.output_height) {
            const int y = static_cast<int>(cinfo.output_scanline);
            JSAMPROW rows[1] = {row.data()};
            jpeg_read_scanlines(&cinfo, rows, 1);
            for (int x = 0; x < out.width(); ++x) {
                std::uint8_t* p = out.pixel(y, x);
                p[0] = row[x * 3u];
                p[1] = row[x * 3u + 1];
                p[2] = row[x * 3u + 2];
                p[3] = 255;
            }
        }
        jpeg_finish_decompress(&cinfo);
        return out;
    } catch (const IoError& e) {
        throw IoError("'" + path + "': " + e.what());
    }
}

void png_write_vec(png_structp png, png_bytep data, png_size_t len) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + len);
}

std::vector<std::uint8_t> encode(const std::uint8_t* pixels, int height, int width, int channels) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    std::vector<std::uint8_t> out;
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encode failed");
    }
    png_set_write_fn(png, &out, png_write_vec, nullptr);
    // Fixed settings keep the encoded bytes a pure function of the pixels.
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 channels == 4 ? PNG_COLOR_TYPE_RGBA : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    for (int y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(pixels + y * stride));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to '" + path + "'");
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

}  // namespace

RgbaImage read_rgba_image(const std::string& path) {
    const auto bytes = read_file(path);
    if (is_png(bytes)) return decode_png(bytes, path);
    if (is_jpeg(bytes)) return decode_jpeg(bytes, path);
    throw IoError("'" + path + "' is neither PNG nor JPEG");
}

Frame read_image(const std::string& path) {
    const RgbaImage rgba = read_rgba_image(path);
    Frame out(rgba.height(), rgba.width());
    for (int y = 0; y < rgba.height(); ++y)
        for (int x = 0; x < rgba.width(); ++x) {
            const std::uint8_t* p = rgba.pixel(y, x);
            out.set(y, x, {p[0], p[1], p[2]});
        }
    return out;
}

std::vector<std::uint8_t> encode_png(const Frame& frame) {
    return encode(frame.pixels().data(), frame.height(), frame.width(), 3);
}

void write_png(const std::string& path, const Frame& frame) { write_bytes(path, encode_png(frame)); }

void write_png(const std::string& path, const RgbaImage& image) {
    write_bytes(path, encode(image.pixels().data(), image.height(), image.width(), 4));
}

void write_raw(const std::string& path, std::span<const Frame> frames) {
    std::vector<std::uint8_t> out;
    const int h = frames.empty() ? 0 : frames.front().height();
    const int w = frames.empty() ? 0 : frames.front().width();
    put_u32(out, static_cast<std::uint32_t>(h));
    put_u32(out, static_cast<std::uint32_t>(w));
    put_u32(out, static_cast<std::uint32_t>(frames.size()));
    for (const auto& f : frames) {
        if (f.height() != h || f.width() != w) throw IoError("raw dump frames differ in size");
        out.insert(out.end(), f.pixels().begin(), f.pixels().end());
    }
    write_bytes(path, out);
}

std::vector<Frame> read_raw(const std::string& path) {
    const auto bytes = read_file(path);
    if (bytes.size() < 12) throw IoError("'" + path + "' is too short for a raw header");
    const auto h = get_u32(bytes.data());
    const auto w = get_u32(bytes.data() + 4);
    const auto n = get_u32(bytes.data() + 8);
    const std::size_t frame_bytes = std::size_t(h) * w * 3;
    if (bytes.size() != 12 + frame_bytes * n) throw IoError("'" + path + "' has a bad raw length");
    std::vector<Frame> out;
    for (std::uint32_t i = 0; i < n; ++i) {
        Frame f(static_cast<int>(h), static_cast<int>(w));
        std::memcpy(f.pixels().data(), bytes.data() + 12 + i * frame_bytes, frame_bytes);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace kage
