#include "throughput.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <new>
#include <sstream>
#include <thread>

#include "kage/rng.hpp"

namespace kage::cli {

namespace {

void run_steps(BatchEnv& batch, RngStream& rng, std::vector<int>& actions, int steps) {
    for (int s = 0; s < steps; ++s) {
        for (auto& a : actions) a = static_cast<int>(rng.uniform_int(0, 7));
        batch.step(actions);
    }
}

}  // namespace

ThroughputRow measure_point(const std::shared_ptr<const Environment>& env, int n_envs,
                            const ThroughputOptions& options, const std::string& label) {
    const RngKey key = make_key(options.seed);
    BatchEnv batch(env, static_cast<std::size_t>(n_envs));
    batch.reset(split(fold_in(key, 1), static_cast<std::size_t>(n_envs)));
    RngStream rng(fold_in(key, 2));
    std::vector<int> actions(static_cast<std::size_t>(n_envs));
    run_steps(batch, rng, actions, options.steps_per_point / 10);

    std::vector<double> walls;
    for (int r = 0; r < std::max(1, options.repetitions); ++r) {
        const auto start = std::chrono::steady_clock::now();
        run_steps(batch, rng, actions, options.steps_per_point);
        walls.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(walls.begin(), walls.end());
    ThroughputRow row;
    row.n_envs = n_envs;
    row.wall_seconds = walls[walls.size() / 2];
    row.steps_per_second = static_cast<double>(n_envs) * options.steps_per_point / std::max(row.wall_seconds, 1e-12);
    row.config_label = label;
    row.note = hardware_note();
    return row;
}

std::vector<ThroughputRow> sweep_throughput(const std::shared_ptr<const Environment>& env,
                                            const ThroughputOptions& options, const std::string& label) {
    std::vector<ThroughputRow> rows;
    for (int p = options.min_envs_pow; p <= options.max_envs_pow; ++p) {
        try {
            rows.push_back(measure_point(env, 1 << p, options, label));
        } catch (const std::bad_alloc&) {
            if (!rows.empty()) rows.back().note += "; out of memory at n_envs=" + std::to_string(1 << p);
            break;
        }
    }
    return rows;
}

std::string hardware_note() {
    return "hardware_threads=" + std::to_string(std::thread::hardware_concurrency());
}

std::string throughput_csv(const std::vector<ThroughputRow>& rows) {
    std::ostringstream out;
    out.precision(10);
    out << "n_envs,steps_per_second,wall_seconds,config_label\n";
    for (const auto& r : rows)
        out << r.n_envs << ',' << r.steps_per_second << ',' << r.wall_seconds << ',' << r.config_label << '\n';
    return out.str();
}

std::string throughput_json(const std::vector<ThroughputRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"n_envs", r.n_envs},
                       {"steps_per_second", r.steps_per_second},
                       {"wall_seconds", r.wall_seconds},
                       {"config_label", r.config_label},
                       {"hardware_note", r.note}});
    return nlohmann::json{{"schema", "kage-throughput/1"}, {"rows", arr}}.dump(2) + "\n";
}

}  // namespace kage::cli
