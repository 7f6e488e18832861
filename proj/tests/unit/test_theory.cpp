#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "kage/errors.hpp"
#include "kage/theory.hpp"
#include "support/oracles.hpp"

using namespace kage;
using namespace kage::theory;

namespace {

const InstanceSpec kSmall{3, 3, 2, 4, 200'000};

double law_distance(const std::map<std::vector<int>, double>& a, const std::map<std::vector<int>, double>& b) {
    double worst = 0;
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, v] : b)
        if (!a.count(k)) worst = std::max(worst, std::abs(v));
    return worst;
}

// One state, one action, reward 1 per step.
TabularPOMDP chain(double gamma, int horizon) {
    TabularPOMDP m;
    m.n_states = 1;
    m.n_actions = 1;
    m.P = {1.0};
    m.r = {1.0};
    m.O = {1, 1, {1.0}};
    m.rho0 = {1.0};
    m.gamma = gamma;
    m.horizon = horizon;
    m.x_label = {0};
    return m;
}

}  // namespace

TEST_CASE("random instances are well formed and reproducible") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto inst = random_instance(seed);
        CHECK_NOTHROW(inst.m.check(1e-9));
        CHECK(trajectory_count(inst.m.n_states, inst.m.n_actions, inst.m.horizon) <= InstanceSpec{}.max_trajectories);
        const auto again = random_instance(seed);
        CHECK(again.m.P == inst.m.P);
        CHECK(again.pi.p == inst.pi.p);
        const StatePolicy ps = induce_state_policy(inst.m.O, inst.pi);
        for (int s = 0; s < ps.n_states; ++s) {
            double sum = 0;
            for (int a = 0; a < ps.n_actions; ++a) {
                CHECK(ps(s, a) >= 0);
                sum += ps(s, a);
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact returns agree with brute-force enumeration over observations") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        CAPTURE(seed);
        const auto inst = random_instance(seed, kSmall);
        const double brute = oracle::enumerate_return(inst.m, inst.pi);
        const double pomdp = exact_return_pomdp(inst.m, inst.pi);
        const double mdp = exact_return_mdp(inst.m, induce_state_policy(inst.m.O, inst.pi));
        CHECK(std::abs(brute - pomdp) <= 1e-10);
        CHECK(std::abs(brute - mdp) <= 1e-10);
    }
}

TEST_CASE("state-action laws of the two processes coincide") {
    for (std::uint64_t seed = 100; seed < 115; ++seed) {
        CAPTURE(seed);
        const auto inst = random_instance(seed, kSmall);
        const auto pixel = oracle::enumerate_state_action_law(inst.m, inst.pi);
        const auto state = oracle::enumerate_state_action_law(inst.m, induce_state_policy(inst.m.O, inst.pi));
        CHECK(law_distance(pixel, state) <= 1e-12);
        double mass = 0;
        for (const auto& [k, v] : pixel) mass += v;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closed forms") {
    for (double g : {0.0, 0.5, 0.9}) {
        for (int T : {1, 3, 7}) {
            const auto m = chain(g, T);
            const PixelPolicy pi{1, 1, {1.0}};
            const double want = g == 0.0 ? 1.0 : (1 - std::pow(g, T)) / (1 - g);
            CHECK(exact_return_pomdp(m, pi) == doctest::Approx(want).epsilon(1e-14));
            CHECK(exact_return_mdp(m, StatePolicy{1, 1, {1.0}}) == doctest::Approx(want).epsilon(1e-14));
        }
    }
    CHECK(exact_return_pomdp(chain(0.5, 0), PixelPolicy{1, 1, {1.0}}) == 0.0);
}

TEST_CASE("gamma 0 keeps only the first reward") {
    auto inst = random_instance(7, kSmall);
    inst.m.gamma = 0.0;
    const StatePolicy ps = induce_state_policy(inst.m.O, inst.pi);
    double want = 0;
    for (int s = 0; s < inst.m.n_states; ++s)
        for (int a = 0; a < inst.m.n_actions; ++a) want += inst.m.rho0[s] * ps(s, a) * inst.m.reward(s, a);
    CHECK(exact_return_pomdp(inst.m, inst.pi) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("return is affine in the reward table") {
    const auto inst = random_instance(11);
    auto scaled = inst.m;
    for (auto& v : scaled.r) v = 2.0 * v + 1.0;
    double discount_sum = 0;
    for (int t = 0; t < inst.m.horizon; ++t) discount_sum += std::pow(inst.m.gamma, t);
    CHECK(exact_return_pomdp(scaled, inst.pi) ==
          doctest::Approx(2.0 * exact_return_pomdp(inst.m, inst.pi) + discount_sum).epsilon(1e-12));
}

TEST_CASE("certificates pass on random instances and the control fails") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = random_instance(seed);
        const auto c = certify_theorem1(inst.m, inst.pi, 1e-10, nullptr, seed);
        CHECK(c.passed);
        CHECK(c.trajectories == trajectory_count(inst.m.n_states, inst.m.n_actions, inst.m.horizon));
        const auto mc = certify_trajectory_metrics(inst.m, inst.pi, inst.threshold, 1e-10, nullptr, seed);
        CHECK(mc.passed);
        CHECK(gap_identity_deviation(inst.m, inst.alt_O, inst.pi) <= 1e-10);
    }
    const auto bad = negative_control(3, 1e-10);
    CHECK_FALSE(bad.passed);
    CHECK(std::max({bad.action_law_deviation, bad.joint_law_deviation}) > 1e-6);
}

TEST_CASE("verify functions throw with the worst deviation") {
    const auto inst = random_instance(4);
    CHECK_NOTHROW(verify_theorem1(inst.m, inst.pi, 1e-10, 4));
    try {
        verify_theorem1(inst.m, inst.pi, -1.0, 4);
        FAIL("expected VerificationFailed");
    } catch (const VerificationFailed& e) {
        CHECK(e.seed() == 4);
        CHECK(e.worst_deviation() >= 0);
    }
    CHECK_THROWS_AS(verify_trajectory_metrics(inst.m, inst.pi, inst.threshold, -1.0, 4), VerificationFailed);
}

TEST_CASE("malformed tables are rejected") {
    auto m = chain(0.5, 2);
    m.P = {0.5};
    CHECK_THROWS_AS(m.check(), ValidationError);
    m = chain(0.5, 2);
    m.gamma = 1.0;
    CHECK_THROWS_AS(m.check(), ValidationError);
    m = chain(0.5, 2);
    m.x_label.clear();
    CHECK_THROWS_AS(m.check(), DimensionMismatch);
    CHECK_THROWS_AS(induce_state_policy(m.O, PixelPolicy{2, 1, {0.5, 0.5}}), DimensionMismatch);
}

TEST_CASE("verification run and JSON") {
    const auto report = run_verification(16, 500, 1e-10);
    CHECK(report.instances.size() == 16);
    CHECK(report.all_passed);
    CHECK(report.worst_deviation <= 1e-10);
    for (std::size_t i = 0; i < report.instances.size(); ++i) CHECK(report.instances[i].seed == 500 + i);
    const auto doc = nlohmann::json::parse(to_json(report));
    CHECK(doc.at("schema") == "kage-theory-certificates/1");
    CHECK(nlohmann::json::parse(to_json(report.instances[0].theorem1)).is_object());
}
