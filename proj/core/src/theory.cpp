#include "kage/theory.hpp"

#include <nlohmann/json.hpp>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "kage/errors.hpp"
#include "kage/rng.hpp"

namespace kage::theory {

namespace {

void check_rows(const std::vector<double>& p, int rows, int cols, const char* what, double tol) {
    if (p.size() != static_cast<std::size_t>(rows) * cols)
        throw DimensionMismatch(std::string(what) + ": table size does not match its dimensions");
    for (int r = 0; r < rows; ++r) {
        double sum = 0;
        for (int c = 0; c < cols; ++c) {
            const double v = p[static_cast<std::size_t>(r) * cols + c];
            if (!(v >= 0)) throw ValidationError(what, "negative or NaN probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol) throw ValidationError(what, "row does not sum to 1");
    }
}

struct Enumeration {
    std::uint64_t leaves = 0;
    double joint_dev = 0;
    double action_law_dev = 0;
    double return_pomdp = 0;  // sum over leaves of prob * path return
    std::map<int, std::pair<double, double>> dist;  // F_dist -> (pomdp, mdp) mass
};

class Enumerator {
public:
    Enumerator(const TabularPOMDP& m, const PixelPolicy& pi, const StatePolicy& ps)
        : m_(m), pi_(pi), ps_(ps),
          joint_(static_cast<std::size_t>(m.horizon + 1) * m.n_states * m.n_actions, 0.0),
          marg_(static_cast<std::size_t>(m.horizon + 1) * m.n_states, 0.0),
          child_(static_cast<std::size_t>(m.horizon + 1) * m.n_actions, 0.0) {}

    Enumeration run() {
        for (int s0 = 0; s0 < m_.n_states; ++s0) {
            const double p0 = m_.rho0[static_cast<std::size_t>(s0)];
            walk(0, s0, s0, p0, p0, 0.0, 1.0);
        }
        for (int t = 0; t <= m_.horizon; ++t)
            for (int s = 0; s < m_.n_states; ++s) {
                const double marg = marg_[static_cast<std::size_t>(t) * m_.n_states + s];
                if (marg <= 0) continue;
                for (int a = 0; a < m_.n_actions; ++a) {
                    const double cond = joint_[(static_cast<std::size_t>(t) * m_.n_states + s) * m_.n_actions + a] / marg;
                    out_.action_law_dev = std::max(out_.action_law_dev, std::abs(cond - ps_(s, a)));
                }
            }
        return out_;
    }

private:
    // Masses of the two processes share the path (s_0, a_0, ..., s_t); leaves
    // extend it by the final action a_T.
    void walk(int t, int s0, int s, double mass_pomdp, double mass_mdp, double ret, double discount) {
        // POMDP action law at this node: the observation is drawn from O(.|s)
        // and the action from pi(.|o).
        double* child = &child_[static_cast<std::size_t>(t) * m_.n_actions];
        std::fill(child, child + m_.n_actions, 0.0);
        for (int o = 0; o < m_.O.n_obs; ++o) {
            const double w = mass_pomdp * m_.O(s, o);
            if (w == 0) continue;
            for (int a = 0; a < m_.n_actions; ++a) child[a] += w * pi_(o, a);
        }
        marg_[static_cast<std::size_t>(t) * m_.n_states + s] += mass_pomdp;
        for (int a = 0; a < m_.n_actions; ++a)
            joint_[(static_cast<std::size_t>(t) * m_.n_states + s) * m_.n_actions + a] += child[a];

        if (t == m_.horizon) {
            for (int a = 0; a < m_.n_actions; ++a) {
                ++out_.leaves;
                out_.joint_dev = std::max(out_.joint_dev, std::abs(child[a] - mass_mdp * ps_(s, a)));
            }
            out_.return_pomdp += mass_pomdp * ret;
            auto& bin = out_.dist[m_.x_label[static_cast<std::size_t>(s)] - m_.x_label[static_cast<std::size_t>(s0)]];
            bin.first += mass_pomdp;
            bin.second += mass_mdp;
            return;
        }
        for (int a = 0; a < m_.n_actions; ++a) {
            const double mp = child[a];
            const double mm = mass_mdp * ps_(s, a);
            const double r = ret + discount * m_.reward(s, a);
            for (int s2 = 0; s2 < m_.n_states; ++s2) {
                const double tr = m_.trans(s, a, s2);
                walk(t + 1, s0, s2, mp * tr, mm * tr, r, discount * m_.gamma);
            }
        }
    }

    const TabularPOMDP& m_;
    const PixelPolicy& pi_;
    const StatePolicy& ps_;
    std::vector<double> joint_;
    std::vector<double> marg_;
    std::vector<double> child_;
    Enumeration out_;
};

void fill_distribution(RngStream& rng, double* row, int n) {
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        row[i] = rng.bernoulli(0.2) ? 0.0 : u * u;
        sum += row[i];
    }
    if (sum == 0) {
        row[rng.uniform_int(0, n - 1)] = 1.0;
        return;
    }
    for (int i = 0; i < n; ++i) row[i] /= sum;
}

std::vector<double> random_rows(RngStream& rng, int rows, int cols) {
    std::vector<double> p(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) fill_distribution(rng, p.data() + static_cast<std::size_t>(r) * cols, cols);
    return p;
}

using nlohmann::json;

json cert_json(const Theorem1Certificate& c) {
    return {{"seed", c.seed},
            {"n_states", c.n_states},
            {"n_obs", c.n_obs},
            {"n_actions", c.n_actions},
            {"horizon", c.horizon},
            {"trajectories", c.trajectories},
            {"tol", c.tol},
            {"action_law_deviation", c.action_law_deviation},
            {"joint_law_deviation", c.joint_law_deviation},
            {"return_deviation", c.return_deviation},
            {"passed", c.passed}};
}

json cert_json(const MetricsCertificate& c) {
    return {{"seed", c.seed},
            {"threshold", c.threshold},
            {"tol", c.tol},
            {"dist_deviation", c.dist_deviation},
            {"prog_deviation", c.prog_deviation},
            {"succ_deviation", c.succ_deviation},
            {"expectation_deviation", c.expectation_deviation},
            {"passed", c.passed}};
}

}  // namespace

void TabularPOMDP::check(double tol) const {
    if (n_states < 1 || n_actions < 1 || O.n_obs < 1 || O.n_states != n_states)
        throw DimensionMismatch("tabular POMDP: inconsistent dimensions");
    if (P.size() != static_cast<std::size_t>(n_states) * n_actions * n_states)
        throw DimensionMismatch("P: table size does not match its dimensions");
    check_rows(P, n_states * n_actions, n_states, "P", tol);
    if (r.size() != static_cast<std::size_t>(n_states) * n_actions)
        throw DimensionMismatch("r: table size does not match its dimensions");
    check_rows(O.p, n_states, O.n_obs, "O", tol);
    check_rows(rho0, 1, n_states, "rho0", tol);
    if (!(gamma >= 0 && gamma < 1)) throw ValidationError("gamma", "must lie in [0, 1)");
    if (horizon < 0) throw ValidationError("horizon", "must be >= 0");
    if (x_label.size() != static_cast<std::size_t>(n_states))
        throw DimensionMismatch("x_label: one label per state required");
}

StatePolicy induce_state_policy(const ObservationKernel& O, const PixelPolicy& pi) {
    if (O.n_obs != pi.n_obs || O.p.size() != static_cast<std::size_t>(O.n_states) * O.n_obs ||
        pi.p.size() != static_cast<std::size_t>(pi.n_obs) * pi.n_actions)
        throw DimensionMismatch("observation kernel has " + std::to_string(O.n_obs) +
                                " observations but the policy has " + std::to_string(pi.n_obs));
    StatePolicy out{O.n_states, pi.n_actions,
                    std::vector<double>(static_cast<std::size_t>(O.n_states) * pi.n_actions, 0.0)};
    for (int s = 0; s < O.n_states; ++s)
        for (int a = 0; a < pi.n_actions; ++a) {
            double sum = 0;
            for (int o = 0; o < O.n_obs; ++o) sum += pi(o, a) * O(s, o);
            out.at(s, a) = sum;
        }
    return out;
}

double exact_return_pomdp(const TabularPOMDP& m, const PixelPolicy& pi) {
    std::vector<double> mu = m.rho0;
    std::vector<double> next(mu.size());
    double J = 0;
    double discount = 1.0;
    for (int t = 0; t < m.horizon; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        double step = 0;
        for (int s = 0; s < m.n_states; ++s) {
            if (mu[static_cast<std::size_t>(s)] == 0) continue;
            for (int o = 0; o < m.O.n_obs; ++o) {
                const double so = mu[static_cast<std::size_t>(s)] * m.O(s, o);
                if (so == 0) continue;
                for (int a = 0; a < m.n_actions; ++a) {
                    const double w = so * pi(o, a);
                    step += w * m.reward(s, a);
                    for (int s2 = 0; s2 < m.n_states; ++s2) next[static_cast<std::size_t>(s2)] += w * m.trans(s, a, s2);
                }
            }
        }
        J += discount * step;
        discount *= m.gamma;
        mu.swap(next);
    }
    return J;
}

double exact_return_mdp(const TabularPOMDP& m, const StatePolicy& pi_s) {
    std::vector<double> mu = m.rho0;
    std::vector<double> next(mu.size());
    double J = 0;
    double discount = 1.0;
    for (int t = 0; t < m.horizon; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        double step = 0;
        for (int s = 0; s < m.n_states; ++s) {
            if (mu[static_cast<std::size_t>(s)] == 0) continue;
            for (int a = 0; a < m.n_actions; ++a) {
                const double w = mu[static_cast<std::size_t>(s)] * pi_s(s, a);
                step += w * m.reward(s, a);
                for (int s2 = 0; s2 < m.n_states; ++s2) next[static_cast<std::size_t>(s2)] += w * m.trans(s, a, s2);
            }
        }
        J += discount * step;
        discount *= m.gamma;
        mu.swap(next);
    }
    return J;
}

std::uint64_t trajectory_count(int n_states, int n_actions, int horizon) {
    std::uint64_t n = static_cast<std::uint64_t>(n_states) * n_actions;
    for (int t = 0; t < horizon; ++t) n *= static_cast<std::uint64_t>(n_states) * n_actions;
    return n;
}

Theorem1Certificate certify_theorem1(const TabularPOMDP& m, const PixelPolicy& pi, double tol,
                                     const StatePolicy* pi_s, std::uint64_t seed) {
    m.check();
    const StatePolicy induced = induce_state_policy(m.O, pi);
    const StatePolicy& ps = pi_s ? *pi_s : induced;
    const Enumeration e = Enumerator(m, pi, ps).run();
    const double j_pomdp = exact_return_pomdp(m, pi);
    const double j_mdp = exact_return_mdp(m, ps);

    Theorem1Certificate c;
    c.seed = seed;
    c.n_states = m.n_states;
    c.n_obs = m.O.n_obs;
    c.n_actions = m.n_actions;
    c.horizon = m.horizon;
    c.trajectories = e.leaves;
    c.tol = tol;
    c.action_law_deviation = e.action_law_dev;
    c.joint_law_deviation = e.joint_dev;
    c.return_deviation = std::max(std::abs(j_pomdp - j_mdp), std::abs(e.return_pomdp - j_mdp));
    c.passed = c.action_law_deviation <= tol && c.joint_law_deviation <= tol && c.return_deviation <= tol;
    return c;
}

Theorem1Certificate verify_theorem1(const TabularPOMDP& m, const PixelPolicy& pi, double tol,
                                    std::uint64_t seed) {
    const auto c = certify_theorem1(m, pi, tol, nullptr, seed);
    if (!c.passed) {
        const double worst = std::max({c.action_law_deviation, c.joint_law_deviation, c.return_deviation});
        throw VerificationFailed("theorem check failed for instance seed " + std::to_string(seed), worst, seed);
    }
    return c;
}

MetricsCertificate certify_trajectory_metrics(const TabularPOMDP& m, const PixelPolicy& pi, double D,
                                              double tol, const StatePolicy* pi_s, std::uint64_t seed) {
    m.check();
    if (!(D > 0)) throw ValidationError("D", "threshold must be > 0");
    const StatePolicy induced = induce_state_policy(m.O, pi);
    const StatePolicy& ps = pi_s ? *pi_s : induced;
    const Enumeration e = Enumerator(m, pi, ps).run();

    MetricsCertificate c;
    c.seed = seed;
    c.threshold = D;
    c.tol = tol;
    std::map<double, std::pair<double, double>> prog;
    std::pair<double, double> succ{0, 0};
    std::pair<double, double> mean_dist{0, 0};
    std::pair<double, double> mean_prog{0, 0};
    std::pair<double, double> mean_succ{0, 0};
    for (const auto& [d, mass] : e.dist) {
        c.dist_deviation = std::max(c.dist_deviation, std::abs(mass.first - mass.second));
        auto& p = prog[d / D];
        p.first += mass.first;
        p.second += mass.second;
        if (d >= D) {
            succ.first += mass.first;
            succ.second += mass.second;
        }
        mean_dist.first += d * mass.first;
        mean_dist.second += d * mass.second;
        mean_prog.first += d / D * mass.first;
        mean_prog.second += d / D * mass.second;
    }
    for (const auto& [v, mass] : prog)
        c.prog_deviation = std::max(c.prog_deviation, std::abs(mass.first - mass.second));
    c.succ_deviation = std::abs(succ.first - succ.second);
    mean_succ = succ;
    c.expectation_deviation = std::max({std::abs(mean_dist.first - mean_dist.second),
                                        std::abs(mean_prog.first - mean_prog.second),
                                        std::abs(mean_succ.first - mean_succ.second)});
    c.passed = c.dist_deviation <= tol && c.prog_deviation <= tol && c.succ_deviation <= tol &&
               c.expectation_deviation <= tol;
    return c;
}

MetricsCertificate verify_trajectory_metrics(const TabularPOMDP& m, const PixelPolicy& pi, double D,
                                             double tol, std::uint64_t seed) {
    const auto c = certify_trajectory_metrics(m, pi, D, tol, nullptr, seed);
    if (!c.passed) {
        const double worst = std::max({c.dist_deviation, c.prog_deviation, c.succ_deviation, c.expectation_deviation});
        throw VerificationFailed("metric check failed for instance seed " + std::to_string(seed), worst, seed);
    }
    return c;
}

double gap_identity_deviation(const TabularPOMDP& m, const ObservationKernel& other, const PixelPolicy& pi) {
    TabularPOMDP m2 = m;
    m2.O = other;
    const double lhs = exact_return_pomdp(m, pi) - exact_return_pomdp(m2, pi);
    const double rhs = exact_return_mdp(m, induce_state_policy(m.O, pi)) -
                       exact_return_mdp(m, induce_state_policy(other, pi));
    return std::abs(lhs - rhs);
}

RandomInstance random_instance(std::uint64_t seed, const InstanceSpec& spec) {
    RngStream rng(make_key(seed));
    RandomInstance out;
    TabularPOMDP& m = out.m;
    m.n_states = static_cast<int>(rng.uniform_int(2, spec.max_states));
    m.n_actions = static_cast<int>(rng.uniform_int(2, spec.max_actions));
    const int n_obs = static_cast<int>(rng.uniform_int(2, spec.max_obs));
    m.horizon = static_cast<int>(rng.uniform_int(1, spec.max_horizon));
    while (m.horizon > 1 && trajectory_count(m.n_states, m.n_actions, m.horizon) > spec.max_trajectories)
        --m.horizon;
    m.gamma = rng.uniform();
    m.P = random_rows(rng, m.n_states * m.n_actions, m.n_states);
    m.r.resize(static_cast<std::size_t>(m.n_states) * m.n_actions);
    for (auto& v : m.r) v = rng.uniform(-1.0, 1.0);
    m.O = {m.n_states, n_obs, random_rows(rng, m.n_states, n_obs)};
    m.rho0 = random_rows(rng, 1, m.n_states);
    m.x_label.resize(static_cast<std::size_t>(m.n_states));
    for (auto& x : m.x_label) x = static_cast<int>(rng.uniform_int(0, 6));
    out.pi = {n_obs, m.n_actions, random_rows(rng, n_obs, m.n_actions)};
    out.alt_O = {m.n_states, n_obs, random_rows(rng, m.n_states, n_obs)};
    out.threshold = static_cast<double>(rng.uniform_int(1, 4));
    return out;
}

VerificationReport run_verification(int n_instances, std::uint64_t seed, double tol, const InstanceSpec& spec) {
    VerificationReport report;
    report.instances.resize(static_cast<std::size_t>(std::max(0, n_instances)));
    tbb::parallel_for(std::size_t{0}, report.instances.size(), [&](std::size_t i) {
        const std::uint64_t s = seed + i;
        const RandomInstance inst = random_instance(s, spec);
        InstanceResult& r = report.instances[i];
        r.seed = s;
        r.theorem1 = certify_theorem1(inst.m, inst.pi, tol, nullptr, s);
        r.metrics = certify_trajectory_metrics(inst.m, inst.pi, inst.threshold, tol, nullptr, s);
        r.gap_identity_deviation = gap_identity_deviation(inst.m, inst.alt_O, inst.pi);
        r.gap_identity_tol = tol;
        r.passed = r.theorem1.passed && r.metrics.passed && r.gap_identity_deviation <= tol;
    });
    report.all_passed = true;
    for (const auto& r : report.instances) {
        report.all_passed = report.all_passed && r.passed;
        report.worst_deviation = std::max(
            {report.worst_deviation, r.theorem1.action_law_deviation, r.theorem1.joint_law_deviation,
             r.theorem1.return_deviation, r.metrics.dist_deviation, r.metrics.prog_deviation,
             r.metrics.succ_deviation, r.metrics.expectation_deviation, r.gap_identity_deviation});
    }
    return report;
}

Theorem1Certificate negative_control(std::uint64_t seed, double tol, double delta, const InstanceSpec& spec) {
    const RandomInstance inst = random_instance(seed, spec);
    StatePolicy ps = induce_state_policy(inst.m.O, inst.pi);
    const auto& rho = inst.m.rho0;
    const int s = static_cast<int>(std::max_element(rho.begin(), rho.end()) - rho.begin());
    int hi = 0;
    for (int a = 1; a < ps.n_actions; ++a)
        if (ps(s, a) > ps(s, hi)) hi = a;
    const int lo = hi == 0 ? 1 : 0;
    ps.at(s, hi) -= delta;
    ps.at(s, lo) += delta;
    return certify_theorem1(inst.m, inst.pi, tol, &ps, seed);
}

std::string to_json(const Theorem1Certificate& cert) { return cert_json(cert).dump(2); }
std::string to_json(const MetricsCertificate& cert) { return cert_json(cert).dump(2); }

std::string to_json(const VerificationReport& report) {
    json inst = json::array();
    for (const auto& r : report.instances)
        inst.push_back({{"seed", r.seed},
                        {"theorem1", cert_json(r.theorem1)},
                        {"metrics", cert_json(r.metrics)},
                        {"gap_identity_deviation", r.gap_identity_deviation},
                        {"passed", r.passed}});
    const json doc{{"schema", "kage-theory-certificates/1"},
                   {"all_passed", report.all_passed},
                   {"worst_deviation", report.worst_deviation},
                   {"instances", inst}};
    return doc.dump(2) + "\n";
}

}  // namespace kage::theory
