#include "rfx/mdp.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace rfx {

namespace {

constexpr double kRowSumTol = 1e-12;

void check_shapes(const TabularMDP& mdp, const Policy& policy,
                  std::span<const double> reward) {
    if (policy.horizon != mdp.horizon || policy.num_states != mdp.num_states)
        throw std::invalid_argument("policy shape does not match MDP");
    const size_t want =
        static_cast<size_t>(mdp.horizon) * mdp.num_states * mdp.num_actions;
    if (reward.size() != want)
        throw std::invalid_argument("reward table shape does not match MDP");
}

}  // namespace

void TabularMDP::validate() const {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw std::invalid_argument("S, A, H must be positive");
    if (gamma <= 0.0 || gamma > 1.0)
        throw std::invalid_argument("gamma must be in (0, 1]");
    if (initial_state < 0 || initial_state >= num_states)
        throw std::invalid_argument("initial state out of range");
    if (transitions.size() !=
        static_cast<size_t>(horizon) * num_states * num_states * num_actions)
        throw std::invalid_argument("transition table has the wrong size");
    if (rewards.size() != static_cast<size_t>(horizon) * num_states * num_actions)
        throw std::invalid_argument("reward table has the wrong size");
    if (step_discounts.size() != static_cast<size_t>(horizon))
        throw std::invalid_argument("step discount table has the wrong size");
    for (int h = 0; h < horizon; ++h)
        for (int s = 0; s < num_states; ++s)
            for (int a = 0; a < num_actions; ++a) {
                double sum = 0.0;
                for (double p : row(h, s, a)) {
                    if (p < 0.0)
                        throw std::invalid_argument("negative transition probability");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > kRowSumTol)
                    throw std::invalid_argument("transition row does not sum to 1");
            }
    for (double r : rewards)
        if (r < 0.0 || r > 1.0)
            throw std::invalid_argument("reward outside [0, 1]");
    if (stationary) {
        const size_t layer =
            static_cast<size_t>(num_states) * num_states * num_actions;
        for (int h = 1; h < horizon; ++h)
            if (std::memcmp(transitions.data(), transitions.data() + h * layer,
                            layer * sizeof(double)) != 0)
                throw std::invalid_argument(
                    "stationary flag set but kernels differ across steps");
    }
}

TabularMDP make_mdp_shell(int S, int A, int H, double gamma, int initial_state) {
    TabularMDP m;
    m.num_states = S;
    m.num_actions = A;
    m.horizon = H;
    m.gamma = gamma;
    m.initial_state = initial_state;
    m.transitions.assign(static_cast<size_t>(H) * S * A * S, 0.0);
    m.rewards.assign(static_cast<size_t>(H) * S * A, 0.0);
    m.step_discounts.assign(H, gamma);
    return m;
}

double sigma(int h, double gamma) {
    double sum = 0.0, w = 1.0;
    for (int i = 0; i < h; ++i) {
        sum += w;
        w *= gamma;
    }
    return sum;
}

ValueTable eval_policy(const TabularMDP& mdp, const Policy& policy,
                       std::span<const double> reward) {
    check_shapes(mdp, policy, reward);
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    ValueTable vt(H, S, A);
    for (int h = H - 1; h >= 0; --h) {
        const double d = mdp.discount(h);
        const double* vnext = vt.v.data() + static_cast<size_t>(h + 1) * S;
#pragma omp parallel for if (S * A >= 4096) schedule(static)
        for (int s = 0; s < S; ++s) {
            for (int a = 0; a < A; ++a) {
                const double* p = mdp.transitions.data() + mdp.row_index(h, s, a);
                double future = 0.0;
                for (int sp = 0; sp < S; ++sp) future += p[sp] * vnext[sp];
                vt.qvalue(h, s, a) = reward[mdp.sa_index(h, s, a)] + d * future;
            }
            vt.value(h, s) = vt.qvalue(h, s, policy.at(h, s));
        }
    }
    return vt;
}

ValueTable eval_policy(const TabularMDP& mdp, const Policy& policy) {
    return eval_policy(mdp, policy, mdp.rewards);
}

std::pair<Policy, ValueTable> plan_optimal(const TabularMDP& mdp,
                                           std::span<const double> reward) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    if (reward.size() != static_cast<size_t>(H) * S * A)
        throw std::invalid_argument("reward table shape does not match MDP");
    Policy policy(H, S);
    ValueTable vt(H, S, A);
    for (int h = H - 1; h >= 0; --h) {
        const double d = mdp.discount(h);
        const double* vnext = vt.v.data() + static_cast<size_t>(h + 1) * S;
#pragma omp parallel for if (S * A >= 4096) schedule(static)
        for (int s = 0; s < S; ++s) {
            double best = -1.0;
            int best_a = 0;
            for (int a = 0; a < A; ++a) {
                const double* p = mdp.transitions.data() + mdp.row_index(h, s, a);
                double future = 0.0;
                for (int sp = 0; sp < S; ++sp) future += p[sp] * vnext[sp];
                const double q = reward[mdp.sa_index(h, s, a)] + d * future;
                vt.qvalue(h, s, a) = q;
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            vt.value(h, s) = best;
            policy.at(h, s) = best_a;
        }
    }
    return {std::move(policy), std::move(vt)};
}

std::pair<Policy, ValueTable> plan_optimal(const TabularMDP& mdp) {
    return plan_optimal(mdp, mdp.rewards);
}

int sample_categorical(std::span<const double> probs, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double acc = 0.0;
    int last = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        acc += probs[i];
        last = static_cast<int>(i);
        if (u < acc) return last;
    }
    return last;  // guard against rounding at the top of the CDF
}

Trajectory sample_episode(const TabularMDP& mdp, const Policy& policy, Rng& rng) {
    check_shapes(mdp, policy, mdp.rewards);
    Trajectory tr;
    const int H = mdp.horizon;
    tr.states.reserve(H);
    tr.actions.reserve(H);
    tr.next_states.reserve(H);
    int s = mdp.initial_state;
    for (int h = 0; h < H; ++h) {
        const int a = policy.at(h, s);
        const int sp = sample_categorical(mdp.row(h, s, a), rng);
        tr.states.push_back(s);
        tr.actions.push_back(a);
        tr.next_states.push_back(sp);
        s = sp;
    }
    return tr;
}

OccupancyTable occupancy(const TabularMDP& mdp, const Policy& policy) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    OccupancyTable occ(H, S, A);
    std::vector<double> cur(S, 0.0), next(S, 0.0);
    cur[mdp.initial_state] = 1.0;
    for (int h = 0; h < H; ++h) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int s = 0; s < S; ++s) {
            if (cur[s] <= 0.0) continue;
            const int a = policy.at(h, s);
            occ.at(h, s, a) = cur[s];
            const double* p = mdp.transitions.data() + mdp.row_index(h, s, a);
            for (int sp = 0; sp < S; ++sp) next[sp] += cur[s] * p[sp];
        }
        std::swap(cur, next);
    }
    return occ;
}

OccupancyTable accumulate_pseudo_counts(
    const std::vector<OccupancyTable>& occ_history) {
    if (occ_history.empty()) return OccupancyTable();
    OccupancyTable total = occ_history.front();
    for (size_t i = 1; i < occ_history.size(); ++i) {
        const auto& occ = occ_history[i];
        if (occ.p.size() != total.p.size())
            throw std::invalid_argument("occupancy tables have mismatched shapes");
        for (size_t k = 0; k < total.p.size(); ++k) total.p[k] += occ.p[k];
    }
    return total;
}

MonteCarloEstimate monte_carlo_value(const TabularMDP& mdp, const Policy& policy,
                                     std::span<const double> reward,
                                     int num_rollouts, Rng& rng) {
    if (num_rollouts < 1)
        throw std::invalid_argument("num_rollouts must be >= 1");
    check_shapes(mdp, policy, reward);
    std::vector<double> returns(static_cast<size_t>(num_rollouts));
    double sum = 0.0;
    for (int i = 0; i < num_rollouts; ++i) {
        Trajectory tr = sample_episode(mdp, policy, rng);
        double ret = 0.0, w = 1.0;
        for (int h = 0; h < mdp.horizon; ++h) {
            ret += w * reward[mdp.sa_index(h, tr.states[h], tr.actions[h])];
            w *= mdp.discount(h);
        }
        returns[i] = ret;
        sum += ret;
    }
    MonteCarloEstimate est;
    est.mean = sum / num_rollouts;
    if (num_rollouts > 1) {
        // two-pass variance: exact zero for identical returns
        double ss = 0.0;
        for (double ret : returns) ss += (ret - est.mean) * (ret - est.mean);
        est.stderr_ = std::sqrt(ss / (num_rollouts - 1) / num_rollouts);
    }
    return est;
}

}  // namespace rfx
