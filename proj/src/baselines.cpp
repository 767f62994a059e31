#include "rfx/baselines.hpp"

#include <stdexcept>

namespace rfx {

EmpiricalState run_random_policy(const TabularMDP& mdp,
                                 std::int64_t num_transitions, Rng& rng) {
    if (num_transitions < 0)
        throw std::invalid_argument("num_transitions must be nonnegative");
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    EmpiricalState state(S, A, H);
    std::uniform_int_distribution<int> act(0, A - 1);
    std::int64_t collected = 0;
    while (collected < num_transitions) {
        Trajectory tr;
        tr.states.reserve(H);
        tr.actions.reserve(H);
        tr.next_states.reserve(H);
        int s = mdp.initial_state;
        for (int h = 0; h < H; ++h) {
            const int a = act(rng);
            const int sp = sample_categorical(mdp.row(h, s, a), rng);
            tr.states.push_back(s);
            tr.actions.push_back(a);
            tr.next_states.push_back(sp);
            s = sp;
        }
        state.update(tr);
        collected += H;
    }
    return state;
}

EmpiricalState run_generative_model(const TabularMDP& mdp,
                                    std::int64_t num_transitions, Rng& rng,
                                    bool pooled) {
    if (num_transitions < 0)
        throw std::invalid_argument("num_transitions must be nonnegative");
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    EmpiricalState state(S, A, H, pooled);
    const std::int64_t cells =
        static_cast<std::int64_t>(S) * A * (pooled ? 1 : H);
    const std::int64_t base = num_transitions / cells;
    const std::int64_t remainder = num_transitions % cells;
    std::int64_t cell = 0;
    const int steps = pooled ? 1 : H;
    for (int h = 0; h < steps; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a, ++cell) {
                const std::int64_t draws = base + (cell < remainder ? 1 : 0);
                for (std::int64_t i = 0; i < draws; ++i)
                    state.record_transition(
                        h, s, a, sample_categorical(mdp.row(h, s, a), rng));
            }
    return state;
}

}  // namespace rfx
