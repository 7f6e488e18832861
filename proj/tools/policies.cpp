#include "policies.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>

#include "kage/dynamics.hpp"
#include "kage/errors.hpp"

namespace kage::cli {

namespace fs = std::filesystem;

Policy idle_policy() {
    return [](ConstFrameView, RngKey) { return 0; };
}

Policy right_policy() {
    return [](ConstFrameView, RngKey) { return kRight; };
}

Policy random_policy() {
    return [](ConstFrameView, RngKey key) { return static_cast<int>(RngStream(key).uniform_int(0, 7)); };
}

Policy named_policy(const std::string& name) {
    if (name == "idle") return idle_policy();
    if (name == "right") return right_policy();
    if (name == "random") return random_policy();
    throw ValidationError("policy", "unknown policy '" + name + "'");
}

Policy load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open checkpoint " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!doc.contains("action_probs") || !doc["action_probs"].is_array() || doc["action_probs"].size() != 8)
        throw ValidationError(path, "expected action_probs with 8 entries");
    auto cdf = std::make_shared<std::vector<double>>();
    double total = 0;
    for (const auto& p : doc["action_probs"]) {
        if (!p.is_number() || p.get<double>() < 0) throw ValidationError(path, "action_probs must be >= 0");
        total += p.get<double>();
        cdf->push_back(total);
    }
    if (total <= 0) throw ValidationError(path, "action_probs must not all be zero");
    for (auto& c : *cdf) c /= total;
    return [cdf](ConstFrameView, RngKey key) {
        const double u = RngStream(key).uniform();
        const auto it = std::upper_bound(cdf->begin(), cdf->end(), u);
        return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf->begin(), 7));
    };
}

std::vector<Policy> load_checkpoint_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no *.json checkpoints in " + dir);
    std::vector<Policy> out;
    for (const auto& f : files) out.push_back(load_checkpoint(f.string()));
    return out;
}

}  // namespace kage::cli
