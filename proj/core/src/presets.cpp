#include <charconv>
#include <cmath>
#include <sstream>

#include "kage/errors.hpp"
#include "kage/postfx.hpp"

namespace kage {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(std::string_view text, int line) {
    double v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError("preset fixture line " + std::to_string(line) + ": bad number '" +
                         std::string(text) + "'");
    return v;
}

constexpr char kFixture[] =
#include "kage/preset_fixture.inc"
    ;

}  // namespace

PresetTable parse_presets(std::string_view text) {
    PresetTable table;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    EnvConfig scratch;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ParseError("preset fixture line " + std::to_string(line) + ": bad section");
            table.bundles.emplace_back(std::string(trim(s.substr(1, s.size() - 2))), FilterParams{});
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("preset fixture line " + std::to_string(line) + ": expected key = value");
        const std::string key(trim(s.substr(0, eq)));
        const double value = parse_number(trim(s.substr(eq + 1)), line);
        if (table.bundles.empty()) {
            if (key != "version")
                throw ParseError("preset fixture line " + std::to_string(line) + ": key outside a section");
            table.version = static_cast<int>(value);
            continue;
        }
        scratch.filters = table.bundles.back().second;
        const std::string path = "filters." + key;
        try {
            if (key == "pixelate_factor") set_field(scratch, path, static_cast<std::int64_t>(value));
            else set_field(scratch, path, value);
        } catch (const ValidationError& e) {
            throw ParseError("preset fixture line " + std::to_string(line) + ": " + e.what());
        }
        table.bundles.back().second = scratch.filters;
    }
    return table;
}

const PresetTable& builtin_presets() {
    static const PresetTable table = parse_presets(kFixture);
    return table;
}

FilterParams preset_bundle(std::string_view name) {
    for (const auto& [n, params] : builtin_presets().bundles)
        if (n == name) return params;
    throw UnknownPreset("unknown preset '" + std::string(name) + "'");
}

std::optional<FilterParams> compose_bundles(const FilterParams& first, const FilterParams& second) {
    const FilterParams id;
    const auto touched = [&](const FilterParams& p) {
        std::vector<std::string> out;
        EnvConfig ca;
        EnvConfig cb;
        ca.filters = p;
        cb.filters = id;
        const auto a = flatten(ca);
        const auto b = flatten(cb);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].value != b[i].value) out.push_back(a[i].path);
        return out;
    };
    const auto ta = touched(first);
    const auto tb = touched(second);
    if (ta.size() > 1 || tb.size() > 1) return std::nullopt;
    if (ta.empty()) return second;
    if (tb.empty()) return first;
    if (ta[0] != tb[0]) return std::nullopt;
    FilterParams out;
    const std::string& f = ta[0];
    if (f == "filters.brightness") out.brightness = first.brightness + second.brightness;
    else if (f == "filters.contrast") out.contrast = first.contrast * second.contrast;
    else if (f == "filters.gamma") out.gamma = first.gamma * second.gamma;
    else if (f == "filters.saturation") out.saturation = first.saturation * second.saturation;
    else if (f == "filters.hue_shift") {
        double h = std::fmod(first.hue_shift + second.hue_shift, 360.0);
        if (h > 180.0) h -= 360.0;
        if (h < -180.0) h += 360.0;
        out.hue_shift = h;
    } else if (f == "filters.color_temp") out.color_temp = first.color_temp + second.color_temp;
    else return std::nullopt;
    return out;
}

}  // namespace kage
