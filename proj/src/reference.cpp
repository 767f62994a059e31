#include "rfx/mdp.hpp"

#include <stdexcept>

namespace rfx::ref {

ValueTable eval_policy(const TabularMDP& mdp, const Policy& policy,
                       std::span<const double> reward) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    if (reward.size() != static_cast<size_t>(H) * S * A)
        throw std::invalid_argument("reward table shape does not match MDP");
    ValueTable vt(H, S, A);
    for (int h = H - 1; h >= 0; --h)
        for (int s = 0; s < S; ++s) {
            for (int a = 0; a < A; ++a) {
                double future = 0.0;
                auto p = mdp.row(h, s, a);
                for (int sp = 0; sp < S; ++sp)
                    future += p[sp] * vt.value(h + 1, sp);
                vt.qvalue(h, s, a) =
                    reward[mdp.sa_index(h, s, a)] + mdp.discount(h) * future;
            }
            vt.value(h, s) = vt.qvalue(h, s, policy.at(h, s));
        }
    return vt;
}

std::pair<Policy, ValueTable> plan_optimal(const TabularMDP& mdp,
                                           std::span<const double> reward) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    if (reward.size() != static_cast<size_t>(H) * S * A)
        throw std::invalid_argument("reward table shape does not match MDP");
    Policy policy(H, S);
    ValueTable vt(H, S, A);
    for (int h = H - 1; h >= 0; --h)
        for (int s = 0; s < S; ++s) {
            double best = -1.0;
            int best_a = 0;
            for (int a = 0; a < A; ++a) {
                double future = 0.0;
                auto p = mdp.row(h, s, a);
                for (int sp = 0; sp < S; ++sp)
                    future += p[sp] * vt.value(h + 1, sp);
                const double q =
                    reward[mdp.sa_index(h, s, a)] + mdp.discount(h) * future;
                vt.qvalue(h, s, a) = q;
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            vt.value(h, s) = best;
            policy.at(h, s) = best_a;
        }
    return {std::move(policy), std::move(vt)};
}

}  // namespace rfx::ref
