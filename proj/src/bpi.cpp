#include "rfx/bpi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rfx {

ConfidenceBounds compute_q_confidence(const EmpiricalState& state,
                                      std::span<const double> reward,
                                      const ThresholdSpec& spec, double gamma) {
    const int S = state.num_states(), A = state.num_actions(), H = state.horizon();
    if (reward.size() != static_cast<size_t>(H) * S * A)
        throw std::invalid_argument("reward table shape does not match counts");
    ConfidenceBounds cb(H, S, A);
    std::vector<double> vup_next(S, 0.0), vlo_next(S, 0.0), phat(S);
    for (int h = H - 1; h >= 0; --h) {
        const bool last = (h == H - 1);
        double up_max = 0.0, lo_min = 0.0;
        if (!last) {
            up_max = *std::max_element(vup_next.begin(), vup_next.end());
            lo_min = *std::min_element(vlo_next.begin(), vlo_next.end());
        }
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const double r =
                    reward[(static_cast<size_t>(h) * S + s) * A + a];
                double up, lo;
                if (last) {
                    up = lo = r;
                } else {
                    const std::int64_t n = state.effective_visits(h, s, a);
                    if (n == 0) {  // whole-simplex convention
                        up = r + gamma * up_max;
                        lo = r + gamma * lo_min;
                    } else {
                        const double alpha =
                            beta(static_cast<double>(n), spec) / n;
                        state.transition_row(h, s, a, phat.data());
                        up = r + gamma * kl_ball_max(phat, vup_next, alpha).value;
                        lo = r + gamma * kl_ball_min(phat, vlo_next, alpha).value;
                    }
                }
                cb.q_up[cb.qi(h, s, a)] = up;
                cb.q_lo[cb.qi(h, s, a)] = lo;
            }
        for (int s = 0; s < S; ++s) {
            double bu = cb.qup(h, s, 0), bl = cb.qlo(h, s, 0);
            for (int a = 1; a < A; ++a) {
                bu = std::max(bu, cb.qup(h, s, a));
                bl = std::max(bl, cb.qlo(h, s, a));
            }
            cb.v_up[cb.vi(h, s)] = bu;
            cb.v_lo[cb.vi(h, s)] = bl;
            vup_next[s] = bu;  // becomes the next layer for the h-1 pass
            vlo_next[s] = bl;
        }
    }
    return cb;
}

namespace {

Policy greedy_over(const ConfidenceBounds& cb, const std::vector<double>& q) {
    Policy pi(cb.horizon, cb.num_states);
    for (int h = 0; h < cb.horizon; ++h)
        for (int s = 0; s < cb.num_states; ++s) {
            int best_a = 0;
            double best = q[cb.qi(h, s, 0)];
            for (int a = 1; a < cb.num_actions; ++a)
                if (q[cb.qi(h, s, a)] > best) {
                    best = q[cb.qi(h, s, a)];
                    best_a = a;
                }
            pi.at(h, s) = best_a;
        }
    return pi;
}

}  // namespace

Policy bpi_sampling_policy(const ConfidenceBounds& bounds) {
    return greedy_over(bounds, bounds.q_up);
}

Policy bpi_recommend(const ConfidenceBounds& bounds) {
    return greedy_over(bounds, bounds.q_lo);
}

double bpi_gap(const ConfidenceBounds& bounds, int initial_state) {
    return bounds.vup(0, initial_state) - bounds.vlo(0, initial_state);
}

bool bpi_should_stop(const ConfidenceBounds& bounds, int initial_state,
                     double epsilon) {
    return bpi_gap(bounds, initial_state) <= epsilon;
}

BPIRunResult run_bpi_ucrl(const TabularMDP& mdp, std::span<const double> reward,
                          double epsilon, double delta,
                          const ThresholdSpec& spec, Rng& rng,
                          std::int64_t episode_budget,
                          const BPICallback& on_episode) {
    if (episode_budget < 0)
        throw std::invalid_argument("episode budget must be nonnegative");
    ThresholdSpec sp = spec;
    sp.delta = delta;
    BPIRunResult result;
    result.data =
        EmpiricalState(mdp.num_states, mdp.num_actions, mdp.horizon,
                       sp.mode == CountMode::stationary_pooled);
    const int s1 = mdp.initial_state;
    for (std::int64_t t = 0;; ++t) {
        ConfidenceBounds cb =
            compute_q_confidence(result.data, reward, sp, mdp.gamma);
        if (on_episode)
            on_episode(t, cb.vup(0, s1), cb.vlo(0, s1), result.data);
        if (bpi_should_stop(cb, s1, epsilon)) {
            result.recommendation = bpi_recommend(cb);
            result.stopped = true;
            result.tau = t;
            return result;
        }
        if (t >= episode_budget) {
            result.recommendation = bpi_recommend(cb);
            result.stopped = false;
            result.tau = t;
            return result;
        }
        result.data.update(sample_episode(mdp, bpi_sampling_policy(cb), rng));
    }
}

int boost_rollout_count(int H, double eps_prime, int M, double delta_prime) {
    if (eps_prime <= 0.0 || delta_prime <= 0.0 || M < 1)
        throw std::invalid_argument("boost_rollout_count: bad arguments");
    const double n = static_cast<double>(H) * H / (2.0 * eps_prime * eps_prime) *
                     std::log(M / delta_prime);
    return static_cast<int>(std::ceil(n));
}

Policy boost_and_select(const WeakAgent& weak_agent, int M, int N,
                        const TabularMDP& mdp, std::span<const double> reward,
                        Rng& rng) {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    // fixed seed splitting so instances could run concurrently
    std::vector<std::uint64_t> agent_seeds(M), eval_seeds(M);
    for (int m = 0; m < M; ++m) agent_seeds[m] = rng();
    for (int m = 0; m < M; ++m) eval_seeds[m] = rng();

    Policy best_policy;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < M; ++m) {
        Rng agent_rng(agent_seeds[m]);
        Policy pi = weak_agent(agent_rng);
        Rng eval_rng(eval_seeds[m]);
        const double value =
            monte_carlo_value(mdp, pi, reward, N, eval_rng).mean;
        if (value > best_value) {
            best_value = value;
            best_policy = std::move(pi);
        }
    }
    return best_policy;
}

}  // namespace rfx
