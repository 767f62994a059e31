#pragma once

#include <functional>

#include "rfx/confidence.hpp"
#include "rfx/empirical.hpp"
#include "rfx/mdp.hpp"

/// Reward-free exploration agents: error-bound driven exploration in
/// clipped/unclipped and per-step/pooled forms, plus the squared-bonus
/// variant restricted to gamma = 1.
namespace rfx {

/// Recursive error upper bounds E_h(s,a) for h in [0, H); layer H is zero.
struct ErrorBoundTable {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> e;  // [H][S][A]

    ErrorBoundTable() = default;
    ErrorBoundTable(int H, int S, int A)
        : horizon(H), num_states(S), num_actions(A),
          e(static_cast<size_t>(H) * S * A, 0.0) {}

    double& at(int h, int s, int a) {
        return e[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
    }
    double at(int h, int s, int a) const {
        return e[(static_cast<size_t>(h) * num_states + s) * num_actions + a];
    }
};

struct RFConfig {
    double epsilon = 0.1;
    double delta = 0.1;
    bool clipped = true;
    bool stationary_pooled = false;
    std::int64_t episode_budget = 1'000'000;
};

/// Backward recursion of the error bounds from the current counts.
/// Unvisited pairs follow the 1/0 = +inf convention: the clip value
/// gamma*sigma_{H-h} in clipped mode, +inf in unclipped mode (which makes
/// the unclipped sampling rule seek out unvisited pairs first).
ErrorBoundTable compute_error_bounds(const EmpiricalState& state,
                                     const RFConfig& cfg,
                                     const ThresholdSpec& spec, double gamma);

/// argmax_a of a bound table per (h,s), ties to the lowest action index.
Policy greedy_policy(const ErrorBoundTable& bounds);

/// Stop-rule value E_1(s1, pi_1(s1)).
double rf_stop_value(const ErrorBoundTable& bounds, const Policy& policy,
                     int initial_state);

/// True iff the step-1 bound under the greedy action is <= epsilon / 2.
bool rf_should_stop(const ErrorBoundTable& bounds, const Policy& policy,
                    int initial_state, double epsilon);

struct RFRunResult {
    EmpiricalState data;
    bool stopped = false;       // false means the episode budget ran out
    std::int64_t tau = 0;       // stopping time in episodes (if stopped)
};

/// Called after each episode with the episode index, the current stop-rule
/// value and the accumulated data; episode index 0 is before any sampling.
using EpisodeCallback =
    std::function<void(std::int64_t t, double stop_value, const EmpiricalState&)>;

/// Full exploration loop: compute bounds, act greedily (ties between equal
/// bounds are sampled uniformly so that symmetric unexplored regions do not
/// lock onto action 0), stop when the step-1 bound drops below epsilon/2.
/// Deterministic per generator state.
RFRunResult run_rf_ucrl(const TabularMDP& mdp, const RFConfig& cfg,
                        const ThresholdSpec& spec, Rng& rng,
                        const EpisodeCallback& on_episode = nullptr);

/// Squared-bonus table W_h(s,a) = min(H, 9H^2 beta(n)/n + (1+1/H) phat maxW).
/// Unvisited pairs take the clip value H.  Only meaningful for gamma = 1.
ErrorBoundTable compute_w_bounds(const EmpiricalState& state,
                                 const ThresholdSpec& spec);

/// Exploration loop driven by the W table; stops when
/// 2e sqrt(W_1) + W_1 <= epsilon/2.  Requires gamma = 1.
RFRunResult run_rf_express(const TabularMDP& mdp, const RFConfig& cfg,
                           const ThresholdSpec& spec, Rng& rng,
                           const EpisodeCallback& on_episode = nullptr);

struct DominanceReport {
    bool kl_event_holds = false;  // n KL(phat, p) <= beta(n) at every visited pair
    double max_excess = 0.0;      // max over samples of (exact error - bound)
};

/// Test-only check of bound dominance: samples random policies and rewards,
/// computes the exact estimation error from the true kernel and reports the
/// worst excess over the bound table.
DominanceReport verify_error_dominance(const EmpiricalState& state,
                                       const TabularMDP& mdp,
                                       const RFConfig& cfg,
                                       const ThresholdSpec& spec,
                                       int num_policies, int num_rewards,
                                       Rng& rng);

}  // namespace rfx
