#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kage/assets.hpp"
#include "kage/env.hpp"
#include "kage/registry.hpp"
#include "kage/rng.hpp"

namespace kage {

// Plain metric values: one evaluation, one seed, or a reference table row.
struct MetricValues {
    double distance = 0;
    double progress = 0;
    double success_rate = 0;
    double ret = 0;
    friend bool operator==(const MetricValues&, const MetricValues&) = default;
};

struct Stat {
    double mean = 0;
    double sem = 0;
    friend bool operator==(const Stat&, const Stat&) = default;
};

struct MetricRecord {
    Stat distance;
    Stat progress;
    Stat success_rate;
    Stat ret;

    MetricValues means() const { return {distance.mean, progress.mean, success_rate.mean, ret.mean}; }
    friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

// Percent gaps are undefined (nullopt) when the train value is zero.
struct GapRecord {
    std::optional<double> d_dist_pct;
    std::optional<double> d_prog_pct;
    std::optional<double> d_sr_pct;
    double d_ret_abs = 0;
    friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

// (train - eval) / train * 100. Throws DegenerateBaseline when train == 0.
double percent_gap(double train, double eval);
GapRecord gap(const MetricValues& train, const MetricValues& eval);
GapRecord gap(const MetricRecord& train, const MetricRecord& eval);

// Half-away-from-zero rounding for display, robust to representation error
// just below a tie.
double round_display(double value, int decimals = 1);

// Mean and standard error (n - 1 denominator); sem is 0 for n == 1.
Stat mean_sem(std::span<const double> values);
MetricRecord aggregate(std::span<const MetricValues> per_seed);

// Per-metric maximum over checkpoints; metrics are maximized independently.
MetricValues max_over_checkpoints(std::span<const MetricValues> checkpoints);

// Mean metrics over n_episodes full episodes.
MetricValues evaluate_policy(const Environment& env, const Policy& policy, RngKey key, int n_episodes);

struct PairResult {
    std::string suite;
    int id = 0;
    std::string description;
    MetricRecord train;
    MetricRecord eval;
    GapRecord gaps;

    std::string key() const { return suite + "/" + std::to_string(id); }
    friend bool operator==(const PairResult&, const PairResult&) = default;
};

// For each seed and checkpoint, evaluates on both configs; per seed takes the
// per-metric max over checkpoints; aggregates over seeds; gaps come from the
// aggregated means.
PairResult evaluate_pair(const BenchmarkPair& pair, std::span<const Policy> checkpoints,
                         std::span<const RngKey> seeds, int episodes_per_eval,
                         const AssetOptions& options = {});

// Unweighted mean across configurations; sem across configurations. A single
// record passes through unchanged.
MetricRecord expected_performance(std::span<const MetricRecord> records);

struct AxisResult {
    std::string suite;
    MetricRecord train;
    MetricRecord eval;
    GapRecord gaps_from_means;
    // Mean of the per-pair gaps; undefined if any pair's gap is undefined.
    GapRecord mean_of_gaps;
    friend bool operator==(const AxisResult&, const AxisResult&) = default;
};

std::vector<AxisResult> axis_summary(std::span<const PairResult> results);

// Report schema "kage-bench-report/1".
std::string report_json(std::span<const PairResult> results);
std::vector<PairResult> parse_report_json(const std::string& text);
std::string report_table(std::span<const PairResult> results);
void write_report(const std::string& path, std::span<const PairResult> results);

}  // namespace kage
