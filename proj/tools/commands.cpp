#include "commands.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

#include "kage/benchkit.hpp"
#include "kage/errors.hpp"
#include "kage/image_io.hpp"
#include "kage/numeric.hpp"
#include "kage/registry.hpp"
#include "kage/theory.hpp"
#include "policies.hpp"
#include "throughput.hpp"

namespace kage::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kActionTag = 3;

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw IoError("cannot write " + path);
}

int usage(std::ostream& err, const std::string& message) {
    err << "usage error: " << message << '\n';
    return kUsage;
}

}  // namespace

std::string data_dir() {
    if (const char* env = std::getenv("KAGE_DATA_DIR"); env && *env) return env;
    return KAGE_DEFAULT_DATA_DIR;
}

EnvConfig resolve_config(const std::string& name_or_path, std::ostream& warn) {
    std::string path = name_or_path;
    if (name_or_path == "easy" || name_or_path == "hard" || name_or_path == "default")
        path = (fs::path(data_dir()) / "configs" / (name_or_path + ".yaml")).string();
    auto loaded = load_config_file(path);
    for (const auto& w : loaded.warnings) warn << "warning: " << path << ": " << w << '\n';
    return loaded.config;
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    if (o.envs < 1) return usage(err, "--envs must be >= 1");
    if (o.steps < 1) return usage(err, "--steps must be >= 1");
    const auto env = std::make_shared<const Environment>(resolve_config(o.config, err));
    const Policy policy = named_policy(o.policy);
    const auto n = static_cast<std::size_t>(o.envs);
    const RngKey key = make_key(o.seed);
    const RngKey policy_key = fold_in(key, 2);

    BatchEnv batch(env, n);
    batch.reset(split(fold_in(key, 1), n));
    std::vector<int> actions(n);
    std::vector<CompensatedSum> running(n);
    CompensatedSum ret, dist, prog;
    int episodes = 0;
    int successes = 0;
    for (int t = 0; t < o.steps; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            actions[i] = policy(batch.observation(i), fold_in(fold_in(policy_key, i), static_cast<std::uint64_t>(t)));
        batch.step(actions);
        if (!batch.errors().empty()) throw InvalidAction(batch.errors().front().message);
        for (std::size_t i = 0; i < n; ++i) {
            running[i].add(batch.rewards()[i]);
            if (batch.truncated()[i]) {
                ++episodes;
                ret.add(running[i].value());
                dist.add(batch.distance()[i]);
                prog.add(batch.progress()[i]);
                successes += batch.success()[i];
                running[i].reset();
            }
        }
    }
    // Without a finished episode, summarize the episodes in progress.
    const bool partial = episodes == 0;
    if (partial) {
        for (std::size_t i = 0; i < n; ++i) {
            ret.add(running[i].value());
            dist.add(batch.distance()[i]);
            prog.add(batch.progress()[i]);
            successes += batch.success()[i];
        }
    }
    const double count = partial ? static_cast<double>(n) : episodes;
    out << "config " << o.config << '\n'
        << "policy " << o.policy << '\n'
        << "envs " << o.envs << '\n'
        << "steps " << o.steps << '\n'
        << "seed " << o.seed << '\n'
        << "episodes " << episodes << (partial ? " (summary over unfinished episodes)" : "") << '\n'
        << "mean_return " << num(ret.value() / count) << '\n'
        << "mean_distance " << num(dist.value() / count) << '\n'
        << "mean_progress " << num(prog.value() / count) << '\n'
        << "success_rate " << num(successes / count) << '\n';
    return kOk;
}

int cmd_render(const RenderOptions& o, std::ostream& out, std::ostream& err) {
    if (o.frames < 1) return usage(err, "--frames must be >= 1");
    if (o.format != "png" && o.format != "raw") return usage(err, "--format must be png or raw");
    const Environment env(resolve_config(o.config, err));
    const RngKey key = make_key(o.seed);
    RngStream actions(fold_in(key, kActionTag));
    auto [obs, state] = env.reset(key);
    std::vector<Frame> frames{obs};
    for (int k = 1; k < o.frames; ++k) {
        auto r = env.step(state, static_cast<int>(actions.uniform_int(0, 7)));
        state = std::move(r.state);
        frames.push_back(std::move(r.obs));
    }
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) throw IoError("cannot create " + o.out_dir + ": " + ec.message());
    if (o.format == "raw") {
        const auto path = (fs::path(o.out_dir) / "frames.raw").string();
        write_raw(path, frames);
        out << path << '\n';
    } else {
        for (std::size_t k = 0; k < frames.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%04zu.png", k);
            const auto path = (fs::path(o.out_dir) / name).string();
            write_png(path, frames[k]);
            out << path << '\n';
        }
    }
    return kOk;
}

int cmd_bench_throughput(const ThroughputCommandOptions& o, std::ostream& out, std::ostream& err) {
    if (o.max_envs_pow < 0) return usage(err, "--max-envs-pow must be >= 0");
    if (o.steps_per_point < 1) return usage(err, "--steps-per-point must be >= 1");
    const auto env = std::make_shared<const Environment>(resolve_config(o.config, err));
    const std::string label =
        o.config == "easy" || o.config == "hard" ? o.config : fs::path(o.config).stem().string();
    ThroughputOptions opts;
    opts.max_envs_pow = o.max_envs_pow;
    opts.steps_per_point = o.steps_per_point;
    opts.seed = o.seed;
    const auto rows = sweep_throughput(env, opts, label);
    out << throughput_csv(rows);
    if (!o.out_prefix.empty()) {
        write_text(o.out_prefix + ".csv", throughput_csv(rows));
        write_text(o.out_prefix + ".json", throughput_json(rows));
    }
    return kOk;
}

int cmd_suite(const SuiteOptions& o, std::ostream& out, std::ostream& err) {
    if (o.all == !o.pair.empty()) return usage(err, "pass exactly one of --pair or --all");
    if (o.seeds < 1 || o.episodes < 1) return usage(err, "--seeds and --episodes must be >= 1");
    std::vector<const BenchmarkPair*> pairs;
    if (o.all)
        for (const auto& p : suite_registry()) pairs.push_back(&p);
    else
        pairs.push_back(&find_pair(o.pair));
    const std::vector<Policy> checkpoints = o.policy_dir.empty()
        ? std::vector<Policy>{idle_policy(), random_policy(), right_policy()}
        : load_checkpoint_dir(o.policy_dir);
    std::vector<RngKey> seeds;
    for (int i = 0; i < o.seeds; ++i) seeds.push_back(fold_in(make_key(o.seed), static_cast<std::uint64_t>(i)));

    std::vector<PairResult> results;
    for (const auto* p : pairs) results.push_back(evaluate_pair(*p, checkpoints, seeds, o.episodes));
    out << report_table(results);
    if (!o.out.empty()) write_report(o.out, results);
    return kOk;
}

int cmd_verify_theory(const TheoryOptions& o, std::ostream& out, std::ostream& err) {
    if (o.instances < 1) return usage(err, "--instances must be >= 1");
    if (!(o.tol >= 0)) return usage(err, "--tol must be >= 0");
    const auto report = theory::run_verification(o.instances, o.seed, o.tol);
    const auto control = theory::negative_control(o.seed, o.tol);
    int passed = 0;
    for (const auto& r : report.instances) {
        passed += r.passed;
        if (!r.passed) out << "FAIL instance seed " << r.seed << '\n';
    }
    out << "instances " << report.instances.size() << '\n'
        << "passed " << passed << '\n'
        << "worst_deviation " << num(report.worst_deviation) << '\n'
        << "tol " << num(o.tol) << '\n'
        << "negative_control " << (control.passed ? "NOT DETECTED" : "detected") << '\n';
    if (!o.out.empty()) write_text(o.out, theory::to_json(report));
    return report.all_passed && !control.passed ? kOk : kRuntime;
}

int cmd_export_suites(const std::string& out_dir, std::ostream& out) {
    for (const auto& p : suite_registry()) {
        const fs::path dir = fs::path(out_dir) / p.suite / std::to_string(p.id);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
        const std::string header = "# " + p.key() + ": " + p.description + "\n";
        write_text((dir / "train.yaml").string(), header + dump_config(p.train));
        write_text((dir / "eval.yaml").string(), header + dump_config(p.eval));
        out << dir.string() << '\n';
    }
    return kOk;
}

int cmd_config(const std::string& config, std::ostream& out, std::ostream& err) {
    out << dump_config(config.empty() ? EnvConfig{} : resolve_config(config, err));
    return kOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kValidation;
    } catch (const ValidationError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kValidation;
    } catch (const UnknownPair& e) {
        err << e.what() << '\n';
        return kValidation;
    } catch (const UnknownPreset& e) {
        err << e.what() << '\n';
        return kValidation;
    } catch (const UnknownAxis& e) {
        err << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
}

}  // namespace kage::cli
