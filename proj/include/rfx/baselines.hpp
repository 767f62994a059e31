#pragma once

#include "rfx/empirical.hpp"
#include "rfx/mdp.hpp"

/// Comparison agents: random-policy exploration and generative-model sampling.
namespace rfx {

/// Uniform-random-policy episodes until at least num_transitions transitions
/// are collected (the last episode completes, so the total is a multiple
/// of H).
EmpiricalState run_random_policy(const TabularMDP& mdp,
                                 std::int64_t num_transitions, Rng& rng);

/// Generative-model sampling: num_transitions / (S*A*H) next-state draws from
/// every (h,s,a) (or / (S*A) in pooled mode), remainder round-robin; counts
/// per pair differ by at most one.
EmpiricalState run_generative_model(const TabularMDP& mdp,
                                    std::int64_t num_transitions, Rng& rng,
                                    bool pooled = false);

}  // namespace rfx
