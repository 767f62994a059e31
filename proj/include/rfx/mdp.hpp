#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

/// Tabular episodic MDPs with finite horizon, exact planning by backward
/// induction, policy evaluation, episode simulation and occupancy measures.
namespace rfx {

using Rng = std::mt19937_64;

/// Deterministic time-dependent policy: action(h, s) for h in [0, H).
struct Policy {
    int horizon = 0;
    int num_states = 0;
    std::vector<int> actions;  // [H][S]

    Policy() = default;
    Policy(int H, int S, int fill = 0)
        : horizon(H), num_states(S), actions(static_cast<size_t>(H) * S, fill) {}

    int& at(int h, int s) { return actions[static_cast<size_t>(h) * num_states + s]; }
    int at(int h, int s) const { return actions[static_cast<size_t>(h) * num_states + s]; }

    bool operator==(const Policy&) const = default;
};

/// Full model of a finite tabular MDP with per-step transition kernels.
///
/// Transition and reward tables are flat, indexed [h][s][a][s'] and
/// [h][s][a].  `step_discounts[h]` is the factor applied between steps h and
/// h+1; it defaults to `gamma` at every step and only differs for MDPs built
/// by add_initial_state.
struct TabularMDP {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    double gamma = 1.0;
    int initial_state = 0;
    bool stationary = false;
    std::vector<double> transitions;     // [H][S][A][S']
    std::vector<double> rewards;         // [H][S][A]
    std::vector<double> step_discounts;  // [H]

    size_t row_index(int h, int s, int a) const {
        return ((static_cast<size_t>(h) * num_states + s) * num_actions + a) *
               num_states;
    }
    std::span<const double> row(int h, int s, int a) const {
        return {transitions.data() + row_index(h, s, a),
                static_cast<size_t>(num_states)};
    }
    std::span<double> row(int h, int s, int a) {
        return {transitions.data() + row_index(h, s, a),
                static_cast<size_t>(num_states)};
    }
    size_t sa_index(int h, int s, int a) const {
        return (static_cast<size_t>(h) * num_states + s) * num_actions + a;
    }
    double reward(int h, int s, int a) const { return rewards[sa_index(h, s, a)]; }
    double discount(int h) const { return step_discounts[h]; }

    /// Throws std::invalid_argument if any structural invariant fails
    /// (row sums, reward range, stationarity).
    void validate() const;
};

/// Allocates a zero-reward MDP shell with uniform step discounts.
TabularMDP make_mdp_shell(int S, int A, int H, double gamma, int initial_state);

/// sigma_h = sum_{i<h} gamma^i, the maximal h-step value.
double sigma(int h, double gamma);

/// One H-step rollout: (state, action, next_state) per step.
struct Trajectory {
    std::vector<int> states;
    std::vector<int> actions;
    std::vector<int> next_states;
    std::vector<double> step_rewards;  // optional, empty if not recorded

    int length() const { return static_cast<int>(states.size()); }
};

/// V_h(s) and Q_h(s,a) for h in [0, H]; layer H is identically zero.
struct ValueTable {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> v;  // [H+1][S]
    std::vector<double> q;  // [H+1][S][A]

    ValueTable() = default;
    ValueTable(int H, int S, int A)
        : horizon(H),
          num_states(S),
          num_actions(A),
          v(static_cast<size_t>(H + 1) * S, 0.0),
          q(static_cast<size_t>(H + 1) * S * A, 0.0) {}

    double& value(int h, int s) { return v[static_cast<size_t>(h) * num_states + s]; }
    double value(int h, int s) const { return v[static_cast<size_t>(h) * num_states + s]; }
    double& qvalue(int h, int s, int a) {
        return q[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
    }
    double qvalue(int h, int s, int a) const {
        return q[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
    }
};

/// p_h(s,a): probability of being at (s,a) in step h under a policy.
struct OccupancyTable {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> p;  // [H][S][A]

    OccupancyTable() = default;
    OccupancyTable(int H, int S, int A)
        : horizon(H), num_states(S), num_actions(A),
          p(static_cast<size_t>(H) * S * A, 0.0) {}

    double& at(int h, int s, int a) {
        return p[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
    }
    double at(int h, int s, int a) const {
        return p[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
    }
};

/// Evaluates a fixed policy against an arbitrary reward table of shape
/// [H][S][A] by backward induction.  Rewards must lie in [0,1].
ValueTable eval_policy(const TabularMDP& mdp, const Policy& policy,
                       std::span<const double> reward);

/// Same, using the MDP's own reward table.
ValueTable eval_policy(const TabularMDP& mdp, const Policy& policy);

/// Exact planning: greedy backward induction, ties to the lowest action index.
std::pair<Policy, ValueTable> plan_optimal(const TabularMDP& mdp,
                                           std::span<const double> reward);
std::pair<Policy, ValueTable> plan_optimal(const TabularMDP& mdp);

/// Samples one episode under the policy; reproducible given the generator
/// state.  Does not record rewards.
Trajectory sample_episode(const TabularMDP& mdp, const Policy& policy, Rng& rng);

/// Exact state-action occupancy of a policy via the forward recursion.
OccupancyTable occupancy(const TabularMDP& mdp, const Policy& policy);

/// Pseudo-counts: elementwise sum of per-episode occupancies.
OccupancyTable accumulate_pseudo_counts(const std::vector<OccupancyTable>& occ_history);

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Sample mean of the discounted return over num_rollouts episodes.
MonteCarloEstimate monte_carlo_value(const TabularMDP& mdp, const Policy& policy,
                                     std::span<const double> reward,
                                     int num_rollouts, Rng& rng);

/// Draws an index from a discrete distribution by CDF inversion.
int sample_categorical(std::span<const double> probs, Rng& rng);

namespace ref {
/// Plain serial backward induction kept as a reference for the
/// OpenMP-parallel kernels above; used by tests and the benchmark.
ValueTable eval_policy(const TabularMDP& mdp, const Policy& policy,
                       std::span<const double> reward);
std::pair<Policy, ValueTable> plan_optimal(const TabularMDP& mdp,
                                           std::span<const double> reward);
}  // namespace ref

}  // namespace rfx
