#include "kage/benchkit.hpp"

#include <algorithm>
#include <cmath>

#include "kage/errors.hpp"

namespace kage {

double percent_gap(double train, double eval) {
    if (train == 0.0) throw DegenerateBaseline("percent gap undefined for a zero train value");
    return (train - eval) / train * 100.0;
}

namespace {
std::optional<double> maybe_gap(double train, double eval) {
    if (train == 0.0) return std::nullopt;
    return percent_gap(train, eval);
}
}  // namespace

GapRecord gap(const MetricValues& train, const MetricValues& eval) {
    return {maybe_gap(train.distance, eval.distance), maybe_gap(train.progress, eval.progress),
            maybe_gap(train.success_rate, eval.success_rate), std::abs(train.ret - eval.ret)};
}

GapRecord gap(const MetricRecord& train, const MetricRecord& eval) {
    return gap(train.means(), eval.means());
}

double round_display(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double mag = std::floor(std::abs(value) * scale + 0.5 + 1e-9) / scale;
    return value < 0 ? -mag : mag;
}

Stat mean_sem(std::span<const double> values) {
    Stat s;
    if (values.empty()) return s;
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return s;
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double n = static_cast<double>(values.size());
    s.sem = std::sqrt(ss / (n - 1)) / std::sqrt(n);
    return s;
}

MetricRecord aggregate(std::span<const MetricValues> per_seed) {
    std::vector<double> d, p, sr, r;
    for (const auto& m : per_seed) {
        d.push_back(m.distance);
        p.push_back(m.progress);
        sr.push_back(m.success_rate);
        r.push_back(m.ret);
    }
    return {mean_sem(d), mean_sem(p), mean_sem(sr), mean_sem(r)};
}

MetricValues max_over_checkpoints(std::span<const MetricValues> checkpoints) {
    MetricValues out = checkpoints.front();
    for (const auto& c : checkpoints) {
        out.distance = std::max(out.distance, c.distance);
        out.progress = std::max(out.progress, c.progress);
        out.success_rate = std::max(out.success_rate, c.success_rate);
        out.ret = std::max(out.ret, c.ret);
    }
    return out;
}

MetricValues evaluate_policy(const Environment& env, const Policy& policy, RngKey key, int n_episodes) {
    const auto episodes = env.rollout(policy, key, n_episodes);
    MetricValues m;
    for (const auto& e : episodes) {
        m.distance += e.distance;
        m.progress += e.progress;
        m.success_rate += e.success ? 1.0 : 0.0;
        m.ret += e.episode_return;
    }
    const double n = static_cast<double>(episodes.size());
    m.distance /= n;
    m.progress /= n;
    m.success_rate /= n;
    m.ret /= n;
    return m;
}

PairResult evaluate_pair(const BenchmarkPair& pair, std::span<const Policy> checkpoints,
                         std::span<const RngKey> seeds, int episodes_per_eval,
                         const AssetOptions& options) {
    if (checkpoints.empty()) throw ValidationError("checkpoints", "need at least one checkpoint");
    if (seeds.empty()) throw ValidationError("seeds", "need at least one seed");
    const Environment train_env(pair.train, options, false);
    const Environment eval_env(pair.eval, options, false);
    std::vector<MetricValues> train_max;
    std::vector<MetricValues> eval_max;
    for (const RngKey& seed : seeds) {
        std::vector<MetricValues> tr;
        std::vector<MetricValues> ev;
        for (std::size_t k = 0; k < checkpoints.size(); ++k) {
            const RngKey key = fold_in(seed, k);
            tr.push_back(evaluate_policy(train_env, checkpoints[k], key, episodes_per_eval));
            ev.push_back(evaluate_policy(eval_env, checkpoints[k], key, episodes_per_eval));
        }
        train_max.push_back(max_over_checkpoints(tr));
        eval_max.push_back(max_over_checkpoints(ev));
    }
    PairResult out;
    out.suite = pair.suite;
    out.id = pair.id;
    out.description = pair.description;
    out.train = aggregate(train_max);
    out.eval = aggregate(eval_max);
    out.gaps = gap(out.train, out.eval);
    return out;
}

MetricRecord expected_performance(std::span<const MetricRecord> records) {
    if (records.empty()) throw ValidationError("records", "need at least one record");
    if (records.size() == 1) return records.front();
    std::vector<MetricValues> means;
    for (const auto& r : records) means.push_back(r.means());
    return aggregate(means);
}

std::vector<AxisResult> axis_summary(std::span<const PairResult> results) {
    std::vector<AxisResult> out;
    for (std::string_view suite : kSuites) {
        std::vector<MetricRecord> tr, ev;
        std::vector<const GapRecord*> gaps;
        for (const auto& r : results)
            if (r.suite == suite) {
                tr.push_back(r.train);
                ev.push_back(r.eval);
                gaps.push_back(&r.gaps);
            }
        if (tr.empty()) continue;
        AxisResult a;
        a.suite = std::string(suite);
        a.train = expected_performance(tr);
        a.eval = expected_performance(ev);
        a.gaps_from_means = gap(a.train, a.eval);
        auto mean_opt = [&](std::optional<double> GapRecord::*field) -> std::optional<double> {
            double sum = 0;
            for (const auto* g : gaps) {
                if (!(g->*field)) return std::nullopt;
                sum += *(g->*field);
            }
            return sum / static_cast<double>(gaps.size());
        };
        a.mean_of_gaps.d_dist_pct = mean_opt(&GapRecord::d_dist_pct);
        a.mean_of_gaps.d_prog_pct = mean_opt(&GapRecord::d_prog_pct);
        a.mean_of_gaps.d_sr_pct = mean_opt(&GapRecord::d_sr_pct);
        double ret = 0;
        for (const auto* g : gaps) ret += g->d_ret_abs;
        a.mean_of_gaps.d_ret_abs = ret / static_cast<double>(gaps.size());
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace kage
