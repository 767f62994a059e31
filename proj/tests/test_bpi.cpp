#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "rfx/bpi.hpp"
#include "rfx/envs.hpp"

using namespace rfx;

namespace {

ThresholdSpec spec_for(const TabularMDP& m, double delta = 0.1) {
    ThresholdSpec spec;
    spec.delta = delta;
    spec.num_states = m.num_states;
    spec.num_actions = m.num_actions;
    spec.horizon = m.horizon;
    return spec;
}

}  // namespace

TEST_CASE("one-step confidence bounds collapse to the reward") {
    Rng rng(1);
    const TabularMDP m = make_random_mdp(3, 2, 1, 1.0, rng);
    const EmpiricalState state(3, 2, 1);
    const ConfidenceBounds cb =
        compute_q_confidence(state, m.rewards, spec_for(m), 1.0);
    for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 2; ++a) {
            CHECK(cb.qup(0, s, a) == m.reward(0, s, a));
            CHECK(cb.qlo(0, s, a) == m.reward(0, s, a));
        }
}

TEST_CASE("no-data bounds span the whole next-layer range") {
    Rng rng(2);
    const TabularMDP m = make_random_mdp(3, 2, 2, 1.0, rng);
    const EmpiricalState state(3, 2, 2);
    const ConfidenceBounds cb =
        compute_q_confidence(state, m.rewards, spec_for(m), 1.0);
    double up_max = cb.vup(1, 0), lo_min = cb.vlo(1, 0);
    for (int s = 1; s < 3; ++s) {
        up_max = std::max(up_max, cb.vup(1, s));
        lo_min = std::min(lo_min, cb.vlo(1, s));
    }
    for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 2; ++a) {
            CHECK(cb.qup(0, s, a) ==
                  doctest::Approx(m.reward(0, s, a) + up_max).epsilon(1e-12));
            CHECK(cb.qlo(0, s, a) ==
                  doctest::Approx(m.reward(0, s, a) + lo_min).epsilon(1e-12));
        }
}

TEST_CASE("bounds converge to the true optimal Q at large counts") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    EmpiricalState state(5, 2, 3);
    const std::int64_t n = 80'000'000;  // beta(n)/n is about 1e-6 here
    std::vector<std::int64_t> counts(5);
    for (int h = 0; h < 3; ++h)
        for (int s = 0; s < 5; ++s)
            for (int a = 0; a < 2; ++a) {
                for (int sp = 0; sp < 5; ++sp)
                    counts[sp] = static_cast<std::int64_t>(
                        std::llround(m.row(h, s, a)[sp] * n));
                state.set_counts(h, s, a, counts);
            }
    const ThresholdSpec spec = spec_for(m);
    CHECK(beta(static_cast<double>(n), spec) / n <= 1e-6);
    const ConfidenceBounds cb =
        compute_q_confidence(state, m.rewards, spec, 1.0);
    const ValueTable q_star = plan_optimal(m).second;
    for (int h = 0; h < 3; ++h)
        for (int s = 0; s < 5; ++s)
            for (int a = 0; a < 2; ++a) {
                CHECK(std::abs(cb.qup(h, s, a) - q_star.qvalue(h, s, a)) <=
                      1e-2);
                CHECK(std::abs(cb.qlo(h, s, a) - q_star.qvalue(h, s, a)) <=
                      1e-2);
            }
}

TEST_CASE("sandwich property holds when the KL event holds") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    const ThresholdSpec spec = spec_for(m);
    Rng rng(3);
    BPIRunResult run = run_bpi_ucrl(m, m.rewards, 0.0, 0.1, spec, rng, 200);
    // check the concentration event on the collected data
    bool event = true;
    std::vector<double> phat(5);
    for (int h = 0; h < 3; ++h)
        for (int s = 0; s < 5; ++s)
            for (int a = 0; a < 2; ++a) {
                const std::int64_t n = run.data.visits(h, s, a);
                if (n == 0) continue;
                run.data.transition_row(h, s, a, phat.data());
                if (n * kl_categorical(phat, m.row(h, s, a)) >
                    beta(static_cast<double>(n), spec))
                    event = false;
            }
    REQUIRE(event);
    const ConfidenceBounds cb =
        compute_q_confidence(run.data, m.rewards, spec, 1.0);
    const ValueTable q_star = plan_optimal(m).second;
    for (int h = 0; h < 3; ++h)
        for (int s = 0; s < 5; ++s)
            for (int a = 0; a < 2; ++a) {
                CHECK(cb.qlo(h, s, a) <= q_star.qvalue(h, s, a) + 1e-9);
                CHECK(cb.qup(h, s, a) >= q_star.qvalue(h, s, a) - 1e-9);
                CHECK(cb.qlo(h, s, a) <= cb.qup(h, s, a) + 1e-12);
            }
}

TEST_CASE("policy extraction argmax rules") {
    ConfidenceBounds cb(2, 2, 3);
    CHECK(bpi_sampling_policy(cb).actions == std::vector<int>(4, 0));
    CHECK(bpi_recommend(cb).actions == std::vector<int>(4, 0));
    cb.q_up[cb.qi(0, 1, 2)] = 1.0;
    cb.q_lo[cb.qi(1, 0, 1)] = 0.5;
    CHECK(bpi_sampling_policy(cb).at(0, 1) == 2);
    CHECK(bpi_recommend(cb).at(1, 0) == 1);
    ConfidenceBounds shifted = cb;
    for (double& x : shifted.q_up) x += 3.0;
    for (double& x : shifted.q_lo) x += 3.0;
    CHECK(bpi_sampling_policy(shifted) == bpi_sampling_policy(cb));
    CHECK(bpi_recommend(shifted) == bpi_recommend(cb));
}

TEST_CASE("stop rule gap semantics") {
    ConfidenceBounds cb(2, 2, 2);
    CHECK(bpi_should_stop(cb, 0, 0.0));  // equal bounds
    cb.v_up[cb.vi(0, 0)] = 0.3;
    CHECK(bpi_gap(cb, 0) == doctest::Approx(0.3));
    CHECK(bpi_should_stop(cb, 0, 0.3));       // inclusive boundary
    CHECK_FALSE(bpi_should_stop(cb, 0, 0.29999));
}

TEST_CASE("no-data gap on a concrete instance exceeds a small epsilon") {
    const TabularMDP m = make_double_chain(3, 2, 0.1, 1.0);
    const EmpiricalState state(3, 2, 2);
    const ConfidenceBounds cb =
        compute_q_confidence(state, m.rewards, spec_for(m), 1.0);
    CHECK(bpi_gap(cb, m.initial_state) > 0.1);
    CHECK_FALSE(bpi_should_stop(cb, m.initial_state, 0.1));
}

TEST_CASE("run_bpi_ucrl stops immediately when epsilon covers the horizon") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    Rng rng(5);
    const BPIRunResult res =
        run_bpi_ucrl(m, m.rewards, 3.0, 0.1, spec_for(m), rng, 1000);
    CHECK(res.stopped);
    CHECK(res.tau == 0);
}

TEST_CASE("run_bpi_ucrl end-to-end on a small chain") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    Rng rng(7);
    const BPIRunResult res =
        run_bpi_ucrl(m, m.rewards, 0.5, 0.1, spec_for(m), rng, 200'000);
    REQUIRE(res.stopped);
    const double v_star = plan_optimal(m).second.value(0, m.initial_state);
    const double v_rec =
        eval_policy(m, res.recommendation).value(0, m.initial_state);
    CHECK(v_star - v_rec <= 0.5);
}

TEST_CASE("run_bpi_ucrl is deterministic per seed") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    Rng rng1(11), rng2(11);
    const BPIRunResult a =
        run_bpi_ucrl(m, m.rewards, 0.8, 0.1, spec_for(m), rng1, 100'000);
    const BPIRunResult b =
        run_bpi_ucrl(m, m.rewards, 0.8, 0.1, spec_for(m), rng2, 100'000);
    CHECK(a.tau == b.tau);
    CHECK(a.recommendation == b.recommendation);
}

TEST_CASE("run_bpi_ucrl returns a recommendation on budget exhaustion") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    Rng rng(13);
    const BPIRunResult res =
        run_bpi_ucrl(m, m.rewards, 0.01, 0.1, spec_for(m), rng, 5);
    CHECK_FALSE(res.stopped);
    CHECK(res.recommendation.horizon == 3);
}

TEST_CASE("boost_rollout_count evaluates the ceiling formula") {
    CHECK(boost_rollout_count(2, 0.1, 4, 0.1) ==
          static_cast<int>(std::ceil(4.0 / 0.02 * std::log(40.0))));
    CHECK_THROWS_AS(boost_rollout_count(2, 0.0, 4, 0.1), std::invalid_argument);
}

TEST_CASE("boost_and_select with one instance returns its policy") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    const Policy fixed(3, 5, 1);
    Rng rng(17);
    const Policy out = boost_and_select([&](Rng&) { return fixed; }, 1, 1, m,
                                        m.rewards, rng);
    CHECK(out == fixed);
    CHECK_THROWS_AS(boost_and_select([&](Rng&) { return fixed; }, 0, 1, m,
                                     m.rewards, rng),
                    std::invalid_argument);
}

TEST_CASE("boost_and_select keeps an exact planner optimal") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    const auto [pi_star, v_star] = plan_optimal(m);
    Rng rng(19);
    const Policy out = boost_and_select(
        [&](Rng&) { return plan_optimal(m).first; }, 3, 100, m, m.rewards, rng);
    CHECK(eval_policy(m, out).value(0, m.initial_state) ==
          doctest::Approx(v_star.value(0, m.initial_state)).epsilon(1e-12));
}

TEST_CASE("boost_and_select amplifies a coin-flip weak agent") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    const Policy good = plan_optimal(m).first;
    const Policy bad(3, 5, 0);  // always-left never reaches the reward
    const double v_star = plan_optimal(m).second.value(0, m.initial_state);
    const int M = 7;
    const int N = boost_rollout_count(3, 0.1, M, 0.01);
    Rng rng(23);
    int successes = 0;
    const int meta_runs = 200;
    for (int run = 0; run < meta_runs; ++run) {
        const Policy out = boost_and_select(
            [&](Rng& agent_rng) {
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                return unif(agent_rng) < 0.5 ? good : bad;
            },
            M, N, m, m.rewards, rng);
        const double v = eval_policy(m, out).value(0, m.initial_state);
        if (v_star - v <= 1e-9) ++successes;
    }
    CHECK(successes >= 196);  // at least 98%
}
