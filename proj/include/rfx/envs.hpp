#pragma once

#include "rfx/mdp.hpp"

/// Benchmark environments and fixture generators.
namespace rfx {

/// Chain of L states with actions left/right.  The intended move succeeds
/// with probability 1-slip and goes the other way with probability slip;
/// moves off either end stay in place.  Reward 1 at state L-1, start at the
/// middle state (L-1)/2.
TabularMDP make_double_chain(int L, int H, double slip, double gamma);

/// side x side grid with actions left/right/up/down.  The chosen direction is
/// taken with probability 1-slip, otherwise one of the three others uniformly
/// (slip/3 each); moves into walls stay in place.  Reward 1 at reward_cell.
TabularMDP make_gridworld(int side, int H, double slip,
                          std::pair<int, int> reward_cell,
                          std::pair<int, int> start_cell, double gamma);

/// Reduction from a general initial distribution to a single initial state:
/// prepends an extra state with transitions p0 under every action, zero
/// reward at the new first step, and step discounts (1, 1, gamma, ...) so
/// that values from the original first step onward are unchanged.
TabularMDP add_initial_state(const TabularMDP& mdp, std::span<const double> p0);

/// Random dense MDP for property tests: rows are normalized positive
/// uniforms, rewards uniform in [0,1].  Deterministic per seed.
TabularMDP make_random_mdp(int S, int A, int H, double gamma, Rng& rng);

/// Random reward table of shape [H][S][A] with entries uniform in [0,1].
std::vector<double> make_random_reward(int S, int A, int H, Rng& rng);

/// Uniformly random deterministic policy.
Policy make_random_policy(int S, int A, int H, Rng& rng);

}  // namespace rfx
