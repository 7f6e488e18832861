#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kage::theory {

// Row-major [s][o] table of O(o | s).
struct ObservationKernel {
    int n_states = 0;
    int n_obs = 0;
    std::vector<double> p;

    double operator()(int s, int o) const { return p[static_cast<std::size_t>(s) * n_obs + o]; }
};

// Row-major [o][a] table of pi(a | o).
struct PixelPolicy {
    int n_obs = 0;
    int n_actions = 0;
    std::vector<double> p;

    double operator()(int o, int a) const { return p[static_cast<std::size_t>(o) * n_actions + a]; }
};

// Row-major [s][a] table of pi(a | s).
struct StatePolicy {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> p;

    double operator()(int s, int a) const { return p[static_cast<std::size_t>(s) * n_actions + a]; }
    double& at(int s, int a) { return p[static_cast<std::size_t>(s) * n_actions + a]; }
};

struct TabularPOMDP {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> P;  // [s][a][s']
    std::vector<double> r;  // [s][a]
    ObservationKernel O;
    std::vector<double> rho0;
    double gamma = 0.9;
    int horizon = 1;
    std::vector<int> x_label;  // integer position per state

    double trans(int s, int a, int s2) const {
        return P[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
    }
    double reward(int s, int a) const { return r[static_cast<std::size_t>(s) * n_actions + a]; }

    // Throws DimensionMismatch or ValidationError when tables are inconsistent.
    void check(double tol = 1e-12) const;
};

// pi_xi(a | s) = sum_o pi(a | o) O(o | s).
StatePolicy induce_state_policy(const ObservationKernel& O, const PixelPolicy& pi);

// Finite-horizon sum_{t < T} gamma^t r(s_t, a_t) by forward recursion over
// state marginals; the POMDP version sums over observations explicitly.
double exact_return_pomdp(const TabularPOMDP& m, const PixelPolicy& pi);
double exact_return_mdp(const TabularPOMDP& m, const StatePolicy& pi_s);

struct Theorem1Certificate {
    std::uint64_t seed = 0;
    int n_states = 0;
    int n_obs = 0;
    int n_actions = 0;
    int horizon = 0;
    std::uint64_t trajectories = 0;
    double tol = 0;
    double action_law_deviation = 0;
    double joint_law_deviation = 0;
    double return_deviation = 0;
    bool passed = false;
};

struct MetricsCertificate {
    std::uint64_t seed = 0;
    double threshold = 0;
    double tol = 0;
    double dist_deviation = 0;
    double prog_deviation = 0;
    double succ_deviation = 0;
    double expectation_deviation = 0;
    bool passed = false;
};

// Compares (M_xi, pi) with (M, pi_s) by exhaustive enumeration of
// (s_0, a_0, ..., s_T, a_T). pi_s defaults to the induced state policy; passing a
// different one is how the negative control is run.
Theorem1Certificate certify_theorem1(const TabularPOMDP& m, const PixelPolicy& pi, double tol,
                                     const StatePolicy* pi_s = nullptr, std::uint64_t seed = 0);
// Throws VerificationFailed with the worst deviation when a check fails.
Theorem1Certificate verify_theorem1(const TabularPOMDP& m, const PixelPolicy& pi, double tol,
                                    std::uint64_t seed = 0);

// Distributions of F_dist = x(s_T) - x(s_0), F_prog = F_dist / D and
// F_succ = [F_dist >= D] under both processes.
MetricsCertificate certify_trajectory_metrics(const TabularPOMDP& m, const PixelPolicy& pi, double D,
                                              double tol, const StatePolicy* pi_s = nullptr,
                                              std::uint64_t seed = 0);
MetricsCertificate verify_trajectory_metrics(const TabularPOMDP& m, const PixelPolicy& pi, double D,
                                             double tol, std::uint64_t seed = 0);

// |(J(pi; M_xi) - J(pi; M_xi')) - (J(pi_xi; M) - J(pi_xi'; M))| for two
// kernels sharing (P, r).
double gap_identity_deviation(const TabularPOMDP& m, const ObservationKernel& other, const PixelPolicy& pi);

struct InstanceSpec {
    int max_states = 4;
    int max_obs = 5;
    int max_actions = 3;
    int max_horizon = 6;
    std::uint64_t max_trajectories = 1'000'000;
};

struct RandomInstance {
    TabularPOMDP m;
    PixelPolicy pi;
    ObservationKernel alt_O;  // second kernel over the same (P, r)
    double threshold = 1;     // D for the trajectory metric checks
};

// Horizon is reduced until trajectory_count <= max_trajectories.
RandomInstance random_instance(std::uint64_t seed, const InstanceSpec& spec = {});

// Number of (s_0, a_0, ..., s_T, a_T) sequences: (|S||A|)^(T+1).
std::uint64_t trajectory_count(int n_states, int n_actions, int horizon);

struct InstanceResult {
    std::uint64_t seed = 0;
    Theorem1Certificate theorem1;
    MetricsCertificate metrics;
    double gap_identity_deviation = 0;
    double gap_identity_tol = 0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<InstanceResult> instances;
    bool all_passed = false;
    double worst_deviation = 0;
};

// Instance i is random_instance(seed + i); instances run in parallel.
VerificationReport run_verification(int n_instances, std::uint64_t seed, double tol,
                                    const InstanceSpec& spec = {});

// Same instance with one induced-policy row perturbed by `delta`.
Theorem1Certificate negative_control(std::uint64_t seed, double tol, double delta = 1e-3,
                                     const InstanceSpec& spec = {});

std::string to_json(const VerificationReport& report);
std::string to_json(const Theorem1Certificate& cert);
std::string to_json(const MetricsCertificate& cert);

}  // namespace kage::theory
