#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "kage/config.hpp"

namespace kage::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

// KAGE_DATA_DIR from the environment, else the source tree's data/.
std::string data_dir();

// "easy", "hard" and "default" name shipped files; anything else is a path.
// Load warnings go to warn.
EnvConfig resolve_config(const std::string& name_or_path, std::ostream& warn);

struct RunOptions {
    std::string config = "default";
    int envs = 1;
    int steps = 500;
    std::uint64_t seed = 0;
    std::string policy = "random";
};

struct RenderOptions {
    std::string config = "default";
    std::uint64_t seed = 0;
    int frames = 1;
    std::string out_dir = ".";
    std::string format = "png";
};

struct ThroughputCommandOptions {
    std::string config = "easy";
    int max_envs_pow = 8;
    int steps_per_point = 100;
    std::uint64_t seed = 0;
    std::string out_prefix;  // writes <prefix>.csv and <prefix>.json when set
};

struct SuiteOptions {
    std::string pair;
    bool all = false;
    std::string policy_dir;
    int seeds = 2;
    int episodes = 1;
    std::uint64_t seed = 0;
    std::string out;
};

struct TheoryOptions {
    int instances = 100;
    std::uint64_t seed = 0;
    double tol = 1e-12;
    std::string out;
};

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err);
int cmd_render(const RenderOptions& o, std::ostream& out, std::ostream& err);
int cmd_bench_throughput(const ThroughputCommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_suite(const SuiteOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify_theory(const TheoryOptions& o, std::ostream& out, std::ostream& err);
int cmd_export_suites(const std::string& out_dir, std::ostream& out);
int cmd_config(const std::string& config, std::ostream& out, std::ostream& err);

// Runs body and maps kage errors to exit codes, printing the message to err.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace kage::cli
