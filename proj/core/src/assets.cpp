#include "kage/assets.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <optional>

#include "kage/errors.hpp"
#include "kage/image_io.hpp"

namespace kage {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 27> kSkinNames{
    "boy",          "chibi",     "clown",  "cowboy",  "cowboy_2", "dark_knight", "dark_knight_2",
    "dark_skeleton", "dog",      "elder_skeleton", "elf", "enchanter", "farmer", "girl",
    "girl_2",       "girl_3",    "knight", "man",     "robot",    "scientist",   "skeleton",
    "spy",          "thief",     "warrior", "woman",  "woman_2",  "woman_wizard"};

constexpr std::uint64_t kBuiltinSeed = 0x6b616765'61737374ULL;
constexpr std::string_view kBuiltin = "builtin";

// Value noise on a lattice of `cell` pixels, smoothstep-interpolated.
class ValueNoise {
public:
    ValueNoise(RngStream& rng, int height, int width, int cell)
        : cell_(cell), cols_(width / cell + 2), rows_(height / cell + 2) {
        values_.resize(static_cast<std::size_t>(cols_) * rows_);
        for (auto& v : values_) v = rng.uniform(-1.0, 1.0);
    }
    double at(int y, int x) const {
        const int cx = x / cell_;
        const int cy = y / cell_;
        const double fx = smooth(static_cast<double>(x % cell_) / cell_);
        const double fy = smooth(static_cast<double>(y % cell_) / cell_);
        const double a = v(cy, cx) + (v(cy, cx + 1) - v(cy, cx)) * fx;
        const double b = v(cy + 1, cx) + (v(cy + 1, cx + 1) - v(cy + 1, cx)) * fx;
        return a + (b - a) * fy;
    }

private:
    static double smooth(double t) { return t * t * (3 - 2 * t); }
    double v(int r, int c) const { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
    int cell_;
    int cols_;
    int rows_;
    std::vector<double> values_;
};

Frame make_background(RngStream& rng, std::array<int, 3> mean) {
    const int h = kPlaceholderBackgroundHeight;
    const int w = kPlaceholderBackgroundWidth;
    Frame out(h, w);
    std::array<std::vector<ValueNoise>, 3> octaves;
    constexpr std::array<int, 3> kCells{32, 16, 8};
    constexpr std::array<double, 3> kWeights{0.55, 0.3, 0.15};
    for (auto& ch : octaves)
        for (int cell : kCells) ch.emplace_back(rng, h, w, cell);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::array<std::uint8_t, 3> px{};
            for (int c = 0; c < 3; ++c) {
                double n = 0;
                for (std::size_t o = 0; o < kCells.size(); ++o) n += kWeights[o] * octaves[c][o].at(y, x);
                px[c] = static_cast<std::uint8_t>(std::clamp(std::lround(mean[c] + 30.0 * n), 0L, 255L));
            }
            out.set(y, x, {px[0], px[1], px[2]});
        }
    return out;
}

Rgb hsv_to_rgb(double h, double s, double v) {
    const double c = v * s;
    const double hp = std::fmod(h, 360.0) / 60.0;
    const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = v - c;
    auto q = [&](double u) { return static_cast<std::uint8_t>(std::lround((u + m) * 255.0)); };
    return {q(r), q(g), q(b)};
}

void paint(RgbaImage& img, int y, int x, Rgb c) {
    if (y < 0 || y >= img.height() || x < 0 || x >= img.width()) return;
    std::uint8_t* p = img.pixel(y, x);
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
    p[3] = 255;
}

Rgb shade(Rgb c, double f) {
    auto s = [&](std::uint8_t u) { return static_cast<std::uint8_t>(std::lround(u * f)); };
    return {s(c.r), s(c.g), s(c.b)};
}

// A 16x24 figure: round head, torso, swinging arms and legs.
SpriteSet make_skin(std::string name, Rgb body, int style) {
    SpriteSet set;
    set.name = std::move(name);
    constexpr std::array<int, kPlaceholderWalkFrames> kSwing{0, 2, 0, -2};
    const Rgb limb = shade(body, 0.7);
    const Rgb eye{20, 20, 20};
    for (int f = 0; f < kPlaceholderWalkFrames; ++f) {
        RgbaImage img(kPlaceholderSpriteHeight, kPlaceholderSpriteWidth);
        for (int y = 0; y < 7; ++y)
            for (int x = 4; x < 12; ++x) {
                const double dx = x + 0.5 - 8.0;
                const double dy = y + 0.5 - 3.5;
                if (dx * dx + dy * dy <= 12.5 + style % 3) paint(img, y + 1, x, body);
            }
        paint(img, 3, 9, eye);
        paint(img, 3, 11, eye);
        for (int y = 8; y < 16; ++y)
            for (int x = 5; x < 11; ++x) paint(img, y, x, body);
        const int swing = kSwing[f];
        for (int y = 9; y < 15; ++y) {
            paint(img, y + (swing > 0 ? -1 : 0), 3 + (y - 9) * swing / 6, limb);
            paint(img, y + (swing < 0 ? -1 : 0), 12 - (y - 9) * swing / 6, limb);
        }
        for (int y = 16; y < 24; ++y) {
            const int step = (y - 16) * swing / 7;
            paint(img, y, 6 + step, limb);
            paint(img, y, 7 + step, limb);
            paint(img, y, 8 - step, limb);
            paint(img, y, 9 - step, limb);
        }
        set.frames.push_back(std::move(img));
    }
    return set;
}

bool has_image_ext(const fs::path& p) {
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool want_dirs) {
    std::vector<fs::path> out;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return out;
    for (const auto& e : fs::directory_iterator(dir, ec)) {
        if (want_dirs ? e.is_directory() : (e.is_regular_file() && has_image_ext(e.path())))
            out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_builtin(std::string_view s) { return s == kBuiltin; }

std::optional<std::string_view> builtin_item(std::string_view s) {
    if (s.size() > kBuiltin.size() + 1 && s.substr(0, kBuiltin.size()) == kBuiltin &&
        s[kBuiltin.size()] == ':')
        return s.substr(kBuiltin.size() + 1);
    return std::nullopt;
}

const std::vector<std::shared_ptr<const Frame>>& all_builtin_backgrounds() {
    static const auto ptrs = [] {
        std::vector<std::shared_ptr<const Frame>> out;
        for (const auto& f : builtin_backgrounds()) out.push_back(std::make_shared<const Frame>(f));
        return out;
    }();
    return ptrs;
}

const std::vector<std::shared_ptr<const SpriteSet>>& all_builtin_skins() {
    static const auto ptrs = [] {
        std::vector<std::shared_ptr<const SpriteSet>> out;
        for (const auto& s : builtin_skins()) out.push_back(std::make_shared<const SpriteSet>(s));
        return out;
    }();
    return ptrs;
}

std::shared_ptr<const Frame> builtin_background(std::string_view item) {
    const auto& all = all_builtin_backgrounds();
    if (item.substr(0, 3) == "bg-") {
        const std::string num(item.substr(3));
        char* end = nullptr;
        const long idx = std::strtol(num.c_str(), &end, 10);
        if (end && *end == '\0' && idx >= 1 && idx <= static_cast<long>(all.size()))
            return all[static_cast<std::size_t>(idx - 1)];
    }
    throw AssetError("unknown built-in background '" + std::string(item) + "'");
}

std::shared_ptr<const SpriteSet> builtin_skin(std::string_view item) {
    for (const auto& s : all_builtin_skins())
        if (s->name == item) return s;
    throw AssetError("unknown built-in skin '" + std::string(item) + "'");
}

std::vector<std::shared_ptr<const Frame>> resolve_backgrounds(const BackgroundParams& bg,
                                                              const AssetOptions& options) {
    std::vector<std::shared_ptr<const Frame>> out;
    auto add_one = [&](const std::string& src) {
        if (auto item = builtin_item(src)) out.push_back(builtin_background(*item));
        else if (is_builtin(src)) {
            const auto& all = all_builtin_backgrounds();
            out.insert(out.end(), all.begin(), all.end());
        } else out.push_back(std::make_shared<const Frame>(read_image(src)));
    };
    std::string described;
    if (!bg.image_dir.empty()) {
        described = "background.image_dir '" + bg.image_dir + "'";
        if (is_builtin(bg.image_dir)) add_one(bg.image_dir);
        else
            for (const auto& p : sorted_entries(bg.image_dir, false)) add_one(p.string());
    } else if (!bg.image_paths.empty()) {
        described = "background.image_paths";
        for (const auto& p : bg.image_paths) add_one(p);
    } else if (!bg.image_path.empty()) {
        described = "background.image_path '" + bg.image_path + "'";
        add_one(bg.image_path);
    } else {
        described = "background (no image source)";
    }
    if (out.empty()) {
        if (!options.allow_placeholders)
            throw AssetError(described + " resolved to zero usable images");
        out = all_builtin_backgrounds();
    }
    return out;
}

std::vector<std::shared_ptr<const SpriteSet>> resolve_skins(const std::string& dir,
                                                            const std::vector<std::string>& paths,
                                                            const std::string& single,
                                                            const std::string& what,
                                                            const AssetOptions& options) {
    std::vector<std::shared_ptr<const SpriteSet>> out;
    auto add_skin_dir = [&](const std::string& src) {
        if (auto item = builtin_item(src)) out.push_back(builtin_skin(*item));
        else if (is_builtin(src)) {
            const auto& all = all_builtin_skins();
            out.insert(out.end(), all.begin(), all.end());
        } else {
            SpriteSet s = load_sprite_dir(src);
            if (!s.frames.empty()) out.push_back(std::make_shared<const SpriteSet>(std::move(s)));
        }
    };
    std::string described;
    if (!dir.empty()) {
        described = what + " directory '" + dir + "'";
        if (is_builtin(dir) || builtin_item(dir)) add_skin_dir(dir);
        else
            for (const auto& p : sorted_entries(dir, true)) add_skin_dir(p.string());
    } else if (!paths.empty()) {
        described = what + " path list";
        for (const auto& p : paths) add_skin_dir(p);
    } else if (!single.empty()) {
        described = what + " path '" + single + "'";
        add_skin_dir(single);
    } else {
        described = what + " (no sprite source)";
    }
    if (out.empty()) {
        if (!options.allow_placeholders)
            throw AssetError(described + " resolved to zero usable sprites");
        out = all_builtin_skins();
    }
    return out;
}

std::shared_ptr<const SpriteSet> fit_skin(const std::shared_ptr<const SpriteSet>& s, int h, int w) {
    if (s->frames.front().height() == h && s->frames.front().width() == w) return s;
    SpriteSet out;
    out.name = s->name;
    for (const auto& f : s->frames) out.frames.push_back(resize_nearest(f, h, w));
    return std::make_shared<const SpriteSet>(std::move(out));
}

}  // namespace

PlaceholderAssets generate_placeholder_assets(RngKey key, int n_backgrounds, int n_skins) {
    PlaceholderAssets out;
    constexpr std::array<int, 6> kLevels{40, 76, 112, 148, 184, 220};
    std::vector<std::array<int, 3>> lattice;
    for (int r : kLevels)
        for (int g : kLevels)
            for (int b : kLevels) lattice.push_back({r, g, b});
    RngStream order(fold_in(key, 0));
    for (std::size_t i = lattice.size() - 1; i > 0; --i)
        std::swap(lattice[i], lattice[static_cast<std::size_t>(order.uniform_int(0, static_cast<std::int64_t>(i)))]);

    for (int i = 0; i < n_backgrounds; ++i) {
        RngStream rng(fold_in(fold_in(key, 1), static_cast<std::uint64_t>(i)));
        out.backgrounds.push_back(make_background(rng, lattice[static_cast<std::size_t>(i) % lattice.size()]));
    }
    for (int i = 0; i < n_skins; ++i) {
        const double hue = 360.0 * i / std::max(1, n_skins);
        const double value = i % 2 == 0 ? 0.95 : 0.7;
        const std::string name = i < static_cast<int>(kSkinNames.size())
                                     ? std::string(kSkinNames[static_cast<std::size_t>(i)])
                                     : "skin-" + std::to_string(i);
        out.skins.push_back(make_skin(name, hsv_to_rgb(hue, 0.8, value), i));
    }
    return out;
}

std::span<const std::string_view> builtin_skin_names() { return kSkinNames; }

const std::vector<Frame>& builtin_backgrounds() {
    static const std::vector<Frame> bgs =
        generate_placeholder_assets(make_key(kBuiltinSeed), kBuiltinBackgroundCount, 0).backgrounds;
    return bgs;
}

const std::vector<SpriteSet>& builtin_skins() {
    static const std::vector<SpriteSet> skins =
        generate_placeholder_assets(make_key(kBuiltinSeed), 0, static_cast<int>(kSkinNames.size())).skins;
    return skins;
}

SpriteSet load_sprite_dir(const std::string& dir) {
    SpriteSet out;
    out.name = fs::path(dir).filename().string();
    for (const auto& p : sorted_entries(dir, false)) out.frames.push_back(read_rgba_image(p.string()));
    for (auto& f : out.frames)
        if (f.height() != out.frames.front().height() || f.width() != out.frames.front().width())
            f = resize_nearest(f, out.frames.front().height(), out.frames.front().width());
    return out;
}

AssetLibrary load_assets(const EnvConfig& config, const AssetOptions& options) {
    AssetLibrary lib;
    if (config.background.mode == "image") {
        for (auto& bg : resolve_backgrounds(config.background, options)) {
            const int h = config.screen.H;
            const int w = std::max(1, static_cast<int>(std::lround(static_cast<double>(bg->width()) * h / bg->height())));
            if (bg->height() != h) bg = std::make_shared<const Frame>(resize_nearest(*bg, h, w));
            lib.backgrounds.push_back(std::move(bg));
        }
    }
    const auto& ch = config.character;
    if (!ch.use_shape) {
        for (const auto& s : resolve_skins(ch.sprite_dir, ch.sprite_paths, ch.sprite_path,
                                           "character sprite", options))
            lib.agent_skins.push_back(fit_skin(s, ch.height, ch.width));
    }
    const auto& n = config.npc;
    if (n.enabled)
        lib.npc_skins = resolve_skins(n.sprite_dir, n.sprite_paths, n.sprite_path, "npc sprite", options);
    if (n.sticky_enabled)
        lib.sticky_skins = resolve_skins(n.sticky_sprite_dir, n.sticky_sprite_dirs,
                                         n.sticky_sprite_path, "sticky npc sprite", options);
    return lib;
}

}  // namespace kage
