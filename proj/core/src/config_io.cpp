#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "kage/config.hpp"
#include "kage/errors.hpp"

namespace kage {

namespace {

std::string key_of(std::string_view path) {
    const auto dot = path.find('.');
    return std::string(dot == std::string_view::npos ? path : path.substr(dot + 1));
}

std::string group_key_of(std::string_view path) {
    const auto dot = path.find('.');
    return dot == std::string_view::npos ? std::string() : std::string(path.substr(0, dot));
}

template <class T>
void read_field(const YAML::Node& node, std::string_view path, T& field) {
    try {
        if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::string> ||
                      std::is_same_v<T, double>) {
            if (!node.IsScalar()) throw YAML::Exception(YAML::Mark::null_mark(), "not a scalar");
            field = node.as<T>();
        } else if constexpr (std::is_same_v<T, int>) {
            if (!node.IsScalar()) throw YAML::Exception(YAML::Mark::null_mark(), "not a scalar");
            field = node.as<int>();
        } else {
            T out;
            if (!node.IsNull()) {
                if (!node.IsSequence())
                    throw YAML::Exception(YAML::Mark::null_mark(), "not a sequence");
                for (const auto& item : node) {
                    if (!item.IsScalar())
                        throw YAML::Exception(YAML::Mark::null_mark(), "not a scalar");
                    out.push_back(item.as<typename T::value_type>());
                }
            }
            field = std::move(out);
        }
    } catch (const YAML::Exception&) {
        const char* kind = std::is_same_v<T, bool>          ? "a boolean"
                           : std::is_same_v<T, int>         ? "an integer"
                           : std::is_same_v<T, double>      ? "a number"
                           : std::is_same_v<T, std::string> ? "a string"
                                                            : "a list";
        throw ValidationError(std::string(path), std::string("expected ") + kind);
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

template <class T>
void emit_field(YAML::Emitter& out, const T& field) {
    if constexpr (std::is_same_v<T, bool>) out << field;
    else if constexpr (std::is_same_v<T, int>) out << field;
    else if constexpr (std::is_same_v<T, double>) out << format_double(field);
    else if constexpr (std::is_same_v<T, std::string>) out << YAML::DoubleQuoted << field;
    else {
        out << YAML::Flow << YAML::BeginSeq;
        for (const auto& item : field) {
            if constexpr (std::is_same_v<typename T::value_type, std::string>)
                out << YAML::DoubleQuoted << item;
            else out << item;
        }
        out << YAML::EndSeq;
    }
}

}  // namespace

LoadResult load_config(std::string_view document) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(document));
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("malformed YAML: ") + e.what());
    }
    LoadResult result;
    if (root.IsNull()) {
        validate(result.config);
        return result;
    }
    if (!root.IsMap()) throw ParseError("top-level YAML node must be a mapping");

    std::set<std::string> known_top;
    std::set<std::string> known_paths;
    visit_fields(result.config, [&](std::string_view path, std::string_view, auto&) {
        known_paths.insert(std::string(path));
        const auto g = group_key_of(path);
        known_top.insert(g.empty() ? std::string(path) : g);
    });

    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known_top.count(key)) {
            result.warnings.push_back("unknown key '" + key + "'");
            continue;
        }
        if (known_paths.count(key)) continue;
        if (!kv.second.IsMap() && !kv.second.IsNull())
            throw ValidationError(key, "expected a mapping");
        if (kv.second.IsMap())
            for (const auto& sub : kv.second) {
                const auto path = key + "." + sub.first.as<std::string>();
                if (!known_paths.count(path))
                    result.warnings.push_back("unknown key '" + path + "'");
            }
    }

    visit_fields(result.config, [&](std::string_view path, std::string_view, auto& field) {
        const auto group = group_key_of(path);
        const YAML::Node& top = root;
        if (group.empty()) {
            const YAML::Node node = top[std::string(path)];
            if (node) read_field(node, path, field);
            return;
        }
        const YAML::Node g = top[group];
        if (!g || !g.IsMap()) return;
        const YAML::Node node = g[key_of(path)];
        if (node) read_field(node, path, field);
    });

    validate(result.config);
    return result;
}

LoadResult load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::string dump_config(const EnvConfig& config) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    std::string open_group;
    visit_fields(config, [&](std::string_view path, std::string_view, const auto& field) {
        const auto group = group_key_of(path);
        if (group != open_group) {
            if (!open_group.empty()) out << YAML::EndMap;
            if (!group.empty()) out << YAML::Key << group << YAML::Value << YAML::BeginMap;
            open_group = group;
        }
        out << YAML::Key << key_of(path) << YAML::Value;
        emit_field(out, field);
    });
    if (!open_group.empty()) out << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace kage
