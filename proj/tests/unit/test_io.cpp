#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "kage/errors.hpp"
#include "kage/image_io.hpp"
#include "support/fixtures.hpp"

using namespace kage;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "kage-test-io";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("png round trip is lossless") {
    const Frame f = testing::random_frame(make_key(1), 37, 53);
    const auto path = scratch("frame.png").string();
    write_png(path, f);
    CHECK(read_image(path) == f);
    const RgbaImage rgba = read_rgba_image(path);
    CHECK(rgba.height() == 37);
    CHECK(rgba.pixel(3, 4)[3] == 255);
    CHECK(rgba.pixel(3, 4)[0] == f.at(3, 4).r);
    const auto bytes = encode_png(f);
    REQUIRE(bytes.size() > 8);
    CHECK(bytes[1] == 'P');
}

TEST_CASE("rgba png keeps alpha") {
    RgbaImage img(2, 3);
    img.pixel(1, 2)[0] = 200;
    img.pixel(1, 2)[3] = 255;
    const auto path = scratch("sprite.png").string();
    write_png(path, img);
    CHECK(read_rgba_image(path) == img);
}

TEST_CASE("raw dump round trip") {
    std::vector<Frame> frames;
    for (std::uint64_t k = 0; k < 3; ++k) frames.push_back(testing::random_frame(make_key(k), 8, 6));
    const auto path = scratch("frames.raw").string();
    write_raw(path, frames);
    CHECK(read_raw(path) == frames);
    CHECK(fs::file_size(path) == 12 + 3 * 8 * 6 * 3);
    write_raw(path, std::vector<Frame>{});
    CHECK(read_raw(path).empty());
}

TEST_CASE("unreadable files raise IoError") {
    CHECK_THROWS_AS(read_image(scratch("missing.png").string()), IoError);
    const auto junk = scratch("junk.png");
    std::ofstream(junk) << "not an image";
    CHECK_THROWS_AS(read_image(junk.string()), IoError);
    const auto shortraw = scratch("short.raw");
    std::ofstream(shortraw, std::ios::binary) << "abc";
    CHECK_THROWS_AS(read_raw(shortraw.string()), IoError);
}
