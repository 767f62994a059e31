// Benchmark of the parallel backward-induction kernels against the serial
// reference implementations, with an agreement check.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "rfx/envs.hpp"
#include "rfx/mdp.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
    fn();  // warm-up
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count() /
           repeats;
}

void bench_case(int S, int A, int H, int repeats) {
    rfx::Rng rng(12345);
    const rfx::TabularMDP mdp = rfx::make_random_mdp(S, A, H, 1.0, rng);
    const rfx::Policy policy = rfx::make_random_policy(S, A, H, rng);

    double max_dev = 0.0;
    {
        const rfx::ValueTable a = rfx::eval_policy(mdp, policy);
        const rfx::ValueTable b = rfx::ref::eval_policy(mdp, policy, mdp.rewards);
        for (size_t i = 0; i < a.v.size(); ++i)
            max_dev = std::max(max_dev, std::abs(a.v[i] - b.v[i]));
        const auto [pp, pv] = rfx::plan_optimal(mdp);
        const auto [rp, rv] = rfx::ref::plan_optimal(mdp, mdp.rewards);
        for (size_t i = 0; i < pv.v.size(); ++i)
            max_dev = std::max(max_dev, std::abs(pv.v[i] - rv.v[i]));
        if (!(pp == rp)) {
            std::printf("S=%d A=%d H=%d: PLAN POLICY MISMATCH\n", S, A, H);
            return;
        }
    }

    const double eval_par =
        time_ms([&] { rfx::eval_policy(mdp, policy); }, repeats);
    const double eval_ser =
        time_ms([&] { rfx::ref::eval_policy(mdp, policy, mdp.rewards); },
                repeats);
    const double plan_par = time_ms([&] { rfx::plan_optimal(mdp); }, repeats);
    const double plan_ser =
        time_ms([&] { rfx::ref::plan_optimal(mdp, mdp.rewards); }, repeats);

    std::printf(
        "S=%4d A=%d H=%3d | eval  par %8.3f ms  ser %8.3f ms  x%.2f | "
        "plan  par %8.3f ms  ser %8.3f ms  x%.2f | max dev %.2e\n",
        S, A, H, eval_par, eval_ser, eval_ser / eval_par, plan_par, plan_ser,
        plan_ser / plan_par, max_dev);
}

}  // namespace

int main() {
    std::printf("parallel vs serial backward-induction kernels\n");
    bench_case(25, 4, 10, 50);
    bench_case(100, 4, 20, 20);
    bench_case(400, 6, 20, 5);
    bench_case(1200, 8, 20, 2);
    return 0;
}
