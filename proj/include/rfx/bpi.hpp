#pragma once

#include <functional>

#include "rfx/confidence.hpp"
#include "rfx/empirical.hpp"
#include "rfx/mdp.hpp"

/// Best-policy identification with KL-ball optimistic and pessimistic
/// Q-values, plus the weak-learner boosting conversion.
namespace rfx {

/// Paired upper/lower confidence bounds on the optimal Q and V functions
/// for h in [0, H); layer H is zero.
struct ConfidenceBounds {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> q_up, q_lo;  // [H][S][A]
    std::vector<double> v_up, v_lo;  // [H][S]

    ConfidenceBounds() = default;
    ConfidenceBounds(int H, int S, int A)
        : horizon(H), num_states(S), num_actions(A),
          q_up(static_cast<size_t>(H) * S * A, 0.0),
          q_lo(static_cast<size_t>(H) * S * A, 0.0),
          v_up(static_cast<size_t>(H) * S, 0.0),
          v_lo(static_cast<size_t>(H) * S, 0.0) {}

    size_t qi(int h, int s, int a) const {
        return (static_cast<size_t>(h) * num_states + s) * num_actions + a;
    }
    size_t vi(int h, int s) const {
        return static_cast<size_t>(h) * num_states + s;
    }
    double qup(int h, int s, int a) const { return q_up[qi(h, s, a)]; }
    double qlo(int h, int s, int a) const { return q_lo[qi(h, s, a)]; }
    double vup(int h, int s) const { return v_up[vi(h, s)]; }
    double vlo(int h, int s) const { return v_lo[vi(h, s)]; }
};

/// Backward recursion of the optimistic/pessimistic Q-values: the next-step
/// value is maximized/minimized over the KL ball of radius beta(n)/n around
/// the empirical row; unvisited pairs use the whole simplex.
ConfidenceBounds compute_q_confidence(const EmpiricalState& state,
                                      std::span<const double> reward,
                                      const ThresholdSpec& spec, double gamma);

/// Greedy w.r.t. the upper bounds, ties to the lowest action index.
Policy bpi_sampling_policy(const ConfidenceBounds& bounds);

/// Gap vup(s1) - vlo(s1) at the first step.
double bpi_gap(const ConfidenceBounds& bounds, int initial_state);

/// True iff the step-1 gap is <= epsilon (inclusive).
bool bpi_should_stop(const ConfidenceBounds& bounds, int initial_state,
                     double epsilon);

/// Greedy w.r.t. the lower bounds.
Policy bpi_recommend(const ConfidenceBounds& bounds);

struct BPIRunResult {
    EmpiricalState data;
    Policy recommendation;
    bool stopped = false;
    std::int64_t tau = 0;
};

using BPICallback = std::function<void(std::int64_t t, double v_up, double v_lo,
                                       const EmpiricalState&)>;

/// Full identification loop: compute bounds, stop on a small gap, otherwise
/// sample with the optimistic policy.  On budget exhaustion the recommendation
/// from the final bounds is still returned.
BPIRunResult run_bpi_ucrl(const TabularMDP& mdp, std::span<const double> reward,
                          double epsilon, double delta,
                          const ThresholdSpec& spec, Rng& rng,
                          std::int64_t episode_budget,
                          const BPICallback& on_episode = nullptr);

/// Any routine producing a policy from a fresh seeded run.
using WeakAgent = std::function<Policy(Rng& rng)>;

/// Runs M independent weak-agent instances, scores each returned policy with
/// N Monte Carlo rollouts and returns the best-scoring policy (lowest
/// instance index on ties).
Policy boost_and_select(const WeakAgent& weak_agent, int M, int N,
                        const TabularMDP& mdp, std::span<const double> reward,
                        Rng& rng);

/// Rollout count N = ceil(H^2 / (2 eps'^2) * ln(M / delta')).
int boost_rollout_count(int H, double eps_prime, int M, double delta_prime);

}  // namespace rfx
