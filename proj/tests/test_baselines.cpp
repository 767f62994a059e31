#include <stdexcept>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "rfx/baselines.hpp"
#include "rfx/envs.hpp"

using namespace rfx;

TEST_CASE("random policy with a zero budget collects nothing") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    Rng rng(1);
    const EmpiricalState state = run_random_policy(m, 0, rng);
    CHECK(state.episodes() == 0);
    for (std::int64_t v : state.state_visit_totals()) CHECK(v == 0);
}

TEST_CASE("random policy rounds the budget up to whole episodes") {
    const TabularMDP m = make_double_chain(5, 10, 0.1, 1.0);
    Rng rng(2);
    const EmpiricalState state = run_random_policy(m, 25, rng);
    CHECK(state.episodes() == 3);
    std::int64_t total = 0;
    for (std::int64_t v : state.state_visit_totals()) total += v;
    CHECK(total == 30);
}

TEST_CASE("random policy barely reaches the chain endpoints") {
    const TabularMDP m = make_double_chain(31, 20, 0.1, 1.0);
    Rng rng(3);
    const EmpiricalState state = run_random_policy(m, 5000, rng);
    const std::vector<std::int64_t> visits = state.state_visit_totals();
    const std::int64_t modal = *std::max_element(visits.begin(), visits.end());
    CHECK(visits[0] <= modal / 100);
    CHECK(visits[30] <= modal / 100);
}

TEST_CASE("random policy visits are roughly symmetric about the start") {
    const TabularMDP m = make_double_chain(11, 8, 0.1, 1.0);
    std::vector<std::int64_t> visits(11, 0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const std::vector<std::int64_t> v =
            run_random_policy(m, 2000, rng).state_visit_totals();
        for (int s = 0; s < 11; ++s) visits[s] += v[s];
    }
    std::int64_t total = 0, asym = 0;
    for (int k = 1; k <= 5; ++k) {
        total += visits[5 - k] + visits[5 + k];
        asym += std::abs(visits[5 - k] - visits[5 + k]);
    }
    CHECK(asym <= total / 10);
}

TEST_CASE("generative model allocates exactly one draw per triple") {
    Rng rng(4);
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    const EmpiricalState state = run_generative_model(m, 5 * 2 * 3, rng);
    for (int h = 0; h < 3; ++h)
        for (int s = 0; s < 5; ++s)
            for (int a = 0; a < 2; ++a) CHECK(state.visits(h, s, a) == 1);
}

TEST_CASE("generative model counts differ by at most one") {
    Rng rng(5);
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    const EmpiricalState state = run_generative_model(m, 1000, rng);
    std::int64_t lo = 1'000'000, hi = 0, total = 0;
    for (int h = 0; h < 3; ++h)
        for (int s = 0; s < 5; ++s)
            for (int a = 0; a < 2; ++a) {
                lo = std::min(lo, state.visits(h, s, a));
                hi = std::max(hi, state.visits(h, s, a));
                total += state.visits(h, s, a);
            }
    CHECK(hi - lo <= 1);
    CHECK(total == 1000);
}

TEST_CASE("generative model pooled mode divides the budget by S*A") {
    Rng rng(6);
    const TabularMDP m = make_double_chain(5, 4, 0.1, 1.0);
    const EmpiricalState state = run_generative_model(m, 100, rng, true);
    for (int s = 0; s < 5; ++s)
        for (int a = 0; a < 2; ++a) CHECK(state.pooled_visits(s, a) == 10);
}

TEST_CASE("generative model empirical kernel converges to the truth") {
    Rng rng(7);
    const TabularMDP m = make_random_mdp(5, 2, 2, 1.0, rng);
    const std::int64_t draws_per_pair = 10000;
    const EmpiricalState state =
        run_generative_model(m, draws_per_pair * 5 * 2 * 2, rng);
    for (int h = 0; h < 2; ++h)
        for (int s = 0; s < 5; ++s)
            for (int a = 0; a < 2; ++a) {
                CHECK(state.visits(h, s, a) == draws_per_pair);
                const std::vector<double> phat = state.transition_row(h, s, a);
                double l1 = 0.0;
                for (int sp = 0; sp < 5; ++sp)
                    l1 += std::abs(phat[sp] - m.row(h, s, a)[sp]);
                CHECK(l1 <= 0.05);
            }
}

TEST_CASE("baseline agents reject negative budgets") {
    const TabularMDP m = make_double_chain(5, 3, 0.1, 1.0);
    Rng rng(8);
    CHECK_THROWS_AS(run_random_policy(m, -1, rng), std::invalid_argument);
    CHECK_THROWS_AS(run_generative_model(m, -1, rng), std::invalid_argument);
}
