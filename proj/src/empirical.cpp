#include "rfx/empirical.hpp"

#include <stdexcept>

namespace rfx {

EmpiricalState::EmpiricalState(int S, int A, int H, bool pooled)
    : S_(S), A_(A), H_(H), pooled_(pooled) {
    count_sa_.assign(static_cast<size_t>(H) * S * A, 0);
    count_sas_.assign(static_cast<size_t>(H) * S * A * S, 0);
    pooled_sa_.assign(static_cast<size_t>(S) * A, 0);
    pooled_sas_.assign(static_cast<size_t>(S) * A * S, 0);
}

void EmpiricalState::update(const Trajectory& trajectory) {
    if (trajectory.length() != H_)
        throw std::invalid_argument("trajectory length does not match horizon");
    for (int h = 0; h < H_; ++h) {
        const int s = trajectory.states[h];
        const int a = trajectory.actions[h];
        const int sp = trajectory.next_states[h];
        ++count_sa_[sa(h, s, a)];
        ++count_sas_[sa(h, s, a) * S_ + sp];
        ++pooled_sa_[static_cast<size_t>(s) * A_ + a];
        ++pooled_sas_[(static_cast<size_t>(s) * A_ + a) * S_ + sp];
    }
    ++t_;
}

void EmpiricalState::set_counts(int h, int s, int a,
                                std::span<const std::int64_t> successor_counts) {
    if (successor_counts.size() != static_cast<size_t>(S_))
        throw std::invalid_argument("successor count row has the wrong length");
    const size_t base = sa(h, s, a) * S_;
    const size_t pooled_base = (static_cast<size_t>(s) * A_ + a) * S_;
    std::int64_t total = 0;
    for (int sp = 0; sp < S_; ++sp) {
        if (successor_counts[sp] < 0)
            throw std::invalid_argument("negative successor count");
        const std::int64_t delta = successor_counts[sp] - count_sas_[base + sp];
        count_sas_[base + sp] = successor_counts[sp];
        pooled_sas_[pooled_base + sp] += delta;
        total += delta;
    }
    count_sa_[sa(h, s, a)] += total;
    pooled_sa_[static_cast<size_t>(s) * A_ + a] += total;
}

void EmpiricalState::record_transition(int h, int s, int a, int sp) {
    ++count_sa_[sa(h, s, a)];
    ++count_sas_[sa(h, s, a) * S_ + sp];
    ++pooled_sa_[static_cast<size_t>(s) * A_ + a];
    ++pooled_sas_[(static_cast<size_t>(s) * A_ + a) * S_ + sp];
}

void EmpiricalState::transition_row(int h, int s, int a, double* out) const {
    const std::int64_t n = effective_visits(h, s, a);
    if (n == 0) {
        const double u = 1.0 / S_;
        for (int sp = 0; sp < S_; ++sp) out[sp] = u;
        return;
    }
    const std::int64_t* counts =
        pooled_ ? pooled_sas_.data() + (static_cast<size_t>(s) * A_ + a) * S_
                : count_sas_.data() + sa(h, s, a) * S_;
    const double inv = 1.0 / static_cast<double>(n);
    for (int sp = 0; sp < S_; ++sp)
        out[sp] = static_cast<double>(counts[sp]) * inv;
}

std::vector<double> EmpiricalState::transition_row(int h, int s, int a) const {
    std::vector<double> row(S_);
    transition_row(h, s, a, row.data());
    return row;
}

TabularMDP EmpiricalState::empirical_mdp(const TabularMDP& like) const {
    if (like.num_states != S_ || like.num_actions != A_ || like.horizon != H_)
        throw std::invalid_argument("shape mismatch building empirical MDP");
    TabularMDP m =
        make_mdp_shell(S_, A_, H_, like.gamma, like.initial_state);
    m.step_discounts = like.step_discounts;
    for (int h = 0; h < H_; ++h)
        for (int s = 0; s < S_; ++s)
            for (int a = 0; a < A_; ++a)
                transition_row(h, s, a, m.transitions.data() + m.row_index(h, s, a));
    return m;
}

std::vector<std::int64_t> EmpiricalState::state_visit_totals() const {
    std::vector<std::int64_t> totals(S_, 0);
    for (int h = 0; h < H_; ++h)
        for (int s = 0; s < S_; ++s)
            for (int a = 0; a < A_; ++a) totals[s] += visits(h, s, a);
    return totals;
}

}  // namespace rfx
