#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kage/config.hpp"
#include "kage/image.hpp"
#include "kage/rng.hpp"

namespace kage {

struct SpriteSet {
    std::string name;
    std::vector<RgbaImage> frames;
};

struct PlaceholderAssets {
    std::vector<Frame> backgrounds;
    std::vector<SpriteSet> skins;
};

inline constexpr int kPlaceholderBackgroundHeight = 128;
inline constexpr int kPlaceholderBackgroundWidth = 256;
inline constexpr int kPlaceholderSpriteHeight = 24;
inline constexpr int kPlaceholderSpriteWidth = 16;
inline constexpr int kPlaceholderWalkFrames = 4;

// Multi-octave value-noise backgrounds and articulated walk-cycle sprites.
// Background means sit on a lattice with spacing 36, so any two of the first
// 216 backgrounds differ in mean color.
PlaceholderAssets generate_placeholder_assets(RngKey key, int n_backgrounds, int n_skins);

// The 27 built-in skin names, in index order.
std::span<const std::string_view> builtin_skin_names();
inline constexpr int kBuiltinBackgroundCount = 128;

// Built-in placeholder library, generated once per process.
const std::vector<Frame>& builtin_backgrounds();
const std::vector<SpriteSet>& builtin_skins();

struct AssetOptions {
    bool allow_placeholders = true;
};

// Assets resolved for one configuration. Source strings "builtin" select the
// whole built-in set; "builtin:<name>" selects one item (bg-1 .. bg-128 for
// backgrounds, a skin name for sprites). Anything else is a filesystem path.
struct AssetLibrary {
    std::vector<std::shared_ptr<const Frame>> backgrounds;
    std::vector<std::shared_ptr<const SpriteSet>> agent_skins;
    std::vector<std::shared_ptr<const SpriteSet>> npc_skins;
    std::vector<std::shared_ptr<const SpriteSet>> sticky_skins;
};

AssetLibrary load_assets(const EnvConfig& config, const AssetOptions& options = {});

SpriteSet load_sprite_dir(const std::string& dir);

}  // namespace kage
