#include "rfx/rf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfx/envs.hpp"

namespace rfx {

ErrorBoundTable compute_error_bounds(const EmpiricalState& state,
                                     const RFConfig& cfg,
                                     const ThresholdSpec& spec, double gamma) {
    const int S = state.num_states(), A = state.num_actions(), H = state.horizon();
    ErrorBoundTable bounds(H, S, A);
    std::vector<double> max_next(S, 0.0);
    for (int h = H - 1; h >= 0; --h) {
        const double clip = gamma * sigma(H - 1 - h, gamma);
#pragma omp parallel for if (S * A >= 4096) schedule(static)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const std::int64_t n = state.effective_visits(h, s, a);
                double value;
                if (n == 0) {
                    // 1/0 = +inf convention: the clip caps it in clipped
                    // mode; unclipped keeps the infinity, which makes
                    // unvisited pairs maximally attractive to the greedy
                    // sampling rule
                    value = cfg.clipped
                                ? clip
                                : std::numeric_limits<double>::infinity();
                } else {
                    const double bonus =
                        clip * std::sqrt(2.0 * beta(static_cast<double>(n), spec) / n);
                    auto counts = state.successor_counts(h, s, a);
                    double future = 0.0;
                    for (int sp = 0; sp < S; ++sp)
                        if (counts[sp] > 0) future += counts[sp] * max_next[sp];
                    value = bonus + gamma * future / n;
                    if (cfg.clipped) value = std::min(clip, value);
                }
                bounds.at(h, s, a) = value;
            }
        for (int s = 0; s < S; ++s) {
            double m = bounds.at(h, s, 0);
            for (int a = 1; a < A; ++a) m = std::max(m, bounds.at(h, s, a));
            max_next[s] = m;
        }
    }
    return bounds;
}

Policy greedy_policy(const ErrorBoundTable& bounds) {
    Policy pi(bounds.horizon, bounds.num_states);
    for (int h = 0; h < bounds.horizon; ++h)
        for (int s = 0; s < bounds.num_states; ++s) {
            int best_a = 0;
            double best = bounds.at(h, s, 0);
            for (int a = 1; a < bounds.num_actions; ++a)
                if (bounds.at(h, s, a) > best) {
                    best = bounds.at(h, s, a);
                    best_a = a;
                }
            pi.at(h, s) = best_a;
        }
    return pi;
}

double rf_stop_value(const ErrorBoundTable& bounds, const Policy& policy,
                     int initial_state) {
    return bounds.at(0, initial_state, policy.at(0, initial_state));
}

bool rf_should_stop(const ErrorBoundTable& bounds, const Policy& policy,
                    int initial_state, double epsilon) {
    return rf_stop_value(bounds, policy, initial_state) <= epsilon / 2.0;
}

namespace {

ThresholdSpec resolve_spec(const ThresholdSpec& spec, const RFConfig& cfg) {
    ThresholdSpec out = spec;
    out.mode = cfg.stationary_pooled ? CountMode::stationary_pooled
                                     : CountMode::per_step;
    return out;
}

// Sampling policy: uniform draw among the maximizing actions.  Deterministic
// lowest-index ties would lock the agent to action 0 wherever the bounds are
// still at the clip value (e.g. symmetric unexplored regions) and stall
// exploration; the stop rule keeps the deterministic greedy_policy.
Policy sampling_policy(const ErrorBoundTable& bounds, Rng& rng) {
    Policy pi(bounds.horizon, bounds.num_states);
    std::vector<int> ties;
    for (int h = 0; h < bounds.horizon; ++h)
        for (int s = 0; s < bounds.num_states; ++s) {
            ties.assign(1, 0);
            double best = bounds.at(h, s, 0);
            for (int a = 1; a < bounds.num_actions; ++a) {
                const double val = bounds.at(h, s, a);
                if (val > best) {
                    best = val;
                    ties.assign(1, a);
                } else if (val == best) {
                    ties.push_back(a);
                }
            }
            pi.at(h, s) = ties.size() == 1
                              ? ties[0]
                              : ties[std::uniform_int_distribution<size_t>(
                                    0, ties.size() - 1)(rng)];
        }
    return pi;
}

template <typename BoundsFn, typename StopValueFn>
RFRunResult exploration_loop(const TabularMDP& mdp, const RFConfig& cfg,
                             Rng& rng, const EpisodeCallback& on_episode,
                             BoundsFn&& bounds_fn, StopValueFn&& stop_value_fn,
                             double stop_threshold) {
    if (cfg.episode_budget < 0)
        throw std::invalid_argument("episode budget must be nonnegative");
    RFRunResult result;
    result.data = EmpiricalState(mdp.num_states, mdp.num_actions, mdp.horizon,
                                 cfg.stationary_pooled);
    for (std::int64_t t = 0;; ++t) {
        ErrorBoundTable bounds = bounds_fn(result.data);
        Policy pi = greedy_policy(bounds);
        const double stop_value = stop_value_fn(bounds, pi);
        if (on_episode) on_episode(t, stop_value, result.data);
        if (stop_value <= stop_threshold) {
            result.stopped = true;
            result.tau = t;
            return result;
        }
        if (t >= cfg.episode_budget) {
            result.stopped = false;
            result.tau = t;
            return result;
        }
        result.data.update(sample_episode(mdp, sampling_policy(bounds, rng), rng));
    }
}

}  // namespace

RFRunResult run_rf_ucrl(const TabularMDP& mdp, const RFConfig& cfg,
                        const ThresholdSpec& spec, Rng& rng,
                        const EpisodeCallback& on_episode) {
    const ThresholdSpec sp = resolve_spec(spec, cfg);
    const int s1 = mdp.initial_state;
    return exploration_loop(
        mdp, cfg, rng, on_episode,
        [&](const EmpiricalState& st) {
            return compute_error_bounds(st, cfg, sp, mdp.gamma);
        },
        [&](const ErrorBoundTable& b, const Policy& pi) {
            return rf_stop_value(b, pi, s1);
        },
        cfg.epsilon / 2.0);
}

ErrorBoundTable compute_w_bounds(const EmpiricalState& state,
                                 const ThresholdSpec& spec) {
    const int S = state.num_states(), A = state.num_actions(), H = state.horizon();
    const double horizon = static_cast<double>(H);
    const double growth = 1.0 + 1.0 / horizon;
    ErrorBoundTable w(H, S, A);
    std::vector<double> max_next(S, 0.0);
    for (int h = H - 1; h >= 0; --h) {
#pragma omp parallel for if (S * A >= 4096) schedule(static)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const std::int64_t n = state.effective_visits(h, s, a);
                double value;
                if (n == 0) {
                    value = horizon;
                } else {
                    const double bonus =
                        9.0 * horizon * horizon *
                        beta(static_cast<double>(n), spec) / n;
                    auto counts = state.successor_counts(h, s, a);
                    double future = 0.0;
                    for (int sp = 0; sp < S; ++sp)
                        if (counts[sp] > 0) future += counts[sp] * max_next[sp];
                    value = std::min(horizon, bonus + growth * future / n);
                }
                w.at(h, s, a) = value;
            }
        for (int s = 0; s < S; ++s) {
            double m = w.at(h, s, 0);
            for (int a = 1; a < A; ++a) m = std::max(m, w.at(h, s, a));
            max_next[s] = m;
        }
    }
    return w;
}

RFRunResult run_rf_express(const TabularMDP& mdp, const RFConfig& cfg,
                           const ThresholdSpec& spec, Rng& rng,
                           const EpisodeCallback& on_episode) {
    if (mdp.gamma != 1.0)
        throw std::invalid_argument("squared-bonus exploration requires gamma = 1");
    const ThresholdSpec sp = resolve_spec(spec, cfg);
    const int s1 = mdp.initial_state;
    const double two_e = 2.0 * std::exp(1.0);
    return exploration_loop(
        mdp, cfg, rng, on_episode,
        [&](const EmpiricalState& st) { return compute_w_bounds(st, sp); },
        [&](const ErrorBoundTable& w, const Policy& pi) {
            const double w1 = w.at(0, s1, pi.at(0, s1));
            return two_e * std::sqrt(w1) + w1;
        },
        cfg.epsilon / 2.0);
}

DominanceReport verify_error_dominance(const EmpiricalState& state,
                                       const TabularMDP& mdp,
                                       const RFConfig& cfg,
                                       const ThresholdSpec& spec,
                                       int num_policies, int num_rewards,
                                       Rng& rng) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    const ThresholdSpec sp = resolve_spec(spec, cfg);

    DominanceReport report;
    report.kl_event_holds = true;
    std::vector<double> phat(S);
    for (int h = 0; h < H && report.kl_event_holds; ++h)
        for (int s = 0; s < S && report.kl_event_holds; ++s)
            for (int a = 0; a < A; ++a) {
                const std::int64_t n = state.effective_visits(h, s, a);
                if (n == 0) continue;
                state.transition_row(h, s, a, phat.data());
                const double kl = kl_categorical(phat, mdp.row(h, s, a));
                if (n * kl > beta(static_cast<double>(n), sp)) {
                    report.kl_event_holds = false;
                    break;
                }
            }

    const ErrorBoundTable bounds = compute_error_bounds(state, cfg, sp, mdp.gamma);
    const TabularMDP emp = state.empirical_mdp(mdp);
    report.max_excess = -std::numeric_limits<double>::infinity();
    for (int ip = 0; ip < num_policies; ++ip) {
        const Policy pi = make_random_policy(S, A, H, rng);
        for (int ir = 0; ir < num_rewards; ++ir) {
            const std::vector<double> r = make_random_reward(S, A, H, rng);
            const ValueTable qhat = eval_policy(emp, pi, r);
            const ValueTable qtrue = eval_policy(mdp, pi, r);
            for (int h = 0; h < H; ++h)
                for (int s = 0; s < S; ++s)
                    for (int a = 0; a < A; ++a) {
                        const double err = std::abs(qhat.qvalue(h, s, a) -
                                                    qtrue.qvalue(h, s, a));
                        report.max_excess = std::max(
                            report.max_excess, err - bounds.at(h, s, a));
                    }
        }
    }
    return report;
}

}  // namespace rfx
