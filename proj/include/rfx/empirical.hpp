#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfx/mdp.hpp"

namespace rfx {

/// Visit counts and derived empirical transition kernel.
///
/// Counts are kept per step (h,s,a) and, when pooled mode is on, also summed
/// over steps for stationary MDPs.  The empirical kernel is the visit
/// frequency with a uniform 1/S row for unvisited pairs.
class EmpiricalState {
  public:
    EmpiricalState() = default;
    EmpiricalState(int S, int A, int H, bool pooled = false);

    void update(const Trajectory& trajectory);

    /// Records one generative-model draw; does not advance the episode
    /// counter (and so voids the per-layer count/episode identity).
    void record_transition(int h, int s, int a, int sp);

    /// Overwrites the successor counts of one (h,s,a) pair, e.g. to load
    /// counts gathered externally.  Pooled aggregates are kept consistent;
    /// the episode counter is not touched.
    void set_counts(int h, int s, int a,
                    std::span<const std::int64_t> successor_counts);

    int num_states() const { return S_; }
    int num_actions() const { return A_; }
    int horizon() const { return H_; }
    bool pooled() const { return pooled_; }
    std::int64_t episodes() const { return t_; }

    std::int64_t visits(int h, int s, int a) const {
        return count_sa_[sa(h, s, a)];
    }
    std::int64_t visits(int h, int s, int a, int sp) const {
        return count_sas_[sa(h, s, a) * S_ + sp];
    }
    std::int64_t pooled_visits(int s, int a) const {
        return pooled_sa_[static_cast<size_t>(s) * A_ + a];
    }
    std::int64_t pooled_visits(int s, int a, int sp) const {
        return pooled_sas_[(static_cast<size_t>(s) * A_ + a) * S_ + sp];
    }

    /// Effective count used by confidence bounds: per-step or pooled.
    std::int64_t effective_visits(int h, int s, int a) const {
        return pooled_ ? pooled_visits(s, a) : visits(h, s, a);
    }

    /// Raw successor counts matching effective_visits (per-step or pooled).
    std::span<const std::int64_t> successor_counts(int h, int s, int a) const {
        const std::int64_t* base =
            pooled_ ? pooled_sas_.data() + (static_cast<size_t>(s) * A_ + a) * S_
                    : count_sas_.data() + sa(h, s, a) * S_;
        return {base, static_cast<size_t>(S_)};
    }

    /// Writes the empirical row p_hat(.|s,a) into out (size S); uniform 1/S
    /// if the pair is unvisited.  In pooled mode the row is step-independent.
    void transition_row(int h, int s, int a, double* out) const;
    std::vector<double> transition_row(int h, int s, int a) const;

    /// Full empirical MDP (zero rewards) sharing the shape of the source;
    /// used for planning in the estimated model.
    TabularMDP empirical_mdp(const TabularMDP& like) const;

    /// Per-state visit totals summed over steps and actions.
    std::vector<std::int64_t> state_visit_totals() const;

  private:
    size_t sa(int h, int s, int a) const {
        return (static_cast<size_t>(h) * S_ + s) * A_ + a;
    }

    int S_ = 0, A_ = 0, H_ = 0;
    bool pooled_ = false;
    std::int64_t t_ = 0;
    std::vector<std::int64_t> count_sa_;    // [H][S][A]
    std::vector<std::int64_t> count_sas_;   // [H][S][A][S']
    std::vector<std::int64_t> pooled_sa_;   // [S][A]
    std::vector<std::int64_t> pooled_sas_;  // [S][A][S']
};

}  // namespace rfx
