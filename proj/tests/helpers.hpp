#pragma once

// Shared test utilities: brute-force oracles and random samplers that are
// deliberately independent of the library's own algorithms.

#include <cmath>
#include <limits>
#include <vector>

#include "rfx/confidence.hpp"
#include "rfx/mdp.hpp"

namespace test_helpers {

/// Enumerates every deterministic time-dependent policy (A^(S*H) of them)
/// and returns the best initial-state value under ref::eval_policy.
inline double brute_force_optimal_value(const rfx::TabularMDP& mdp,
                                        std::span<const double> reward) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    const int cells = S * H;
    std::int64_t total = 1;
    for (int i = 0; i < cells; ++i) total *= A;
    double best = -std::numeric_limits<double>::infinity();
    rfx::Policy pi(H, S);
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        for (int i = 0; i < cells; ++i) {
            pi.actions[i] = static_cast<int>(c % A);
            c /= A;
        }
        const rfx::ValueTable vt = rfx::ref::eval_policy(mdp, pi, reward);
        best = std::max(best, vt.value(0, mdp.initial_state));
    }
    return best;
}

/// Uniform sample from the probability simplex via exponential spacings.
inline std::vector<double> sample_simplex(int S, rfx::Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> p(S);
    double sum = 0.0;
    for (int i = 0; i < S; ++i) {
        p[i] = -std::log(1.0 - unif(rng));
        sum += p[i];
    }
    for (int i = 0; i < S; ++i) p[i] /= sum;
    return p;
}

namespace detail {

/// KL between Bernoulli(a) and Bernoulli(b); a in (0,1), b in (0,1).
inline double kl_bernoulli(double a, double b) {
    return a * std::log(a / b) + (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
}

/// Bisection root of a continuous f on [lo, hi]; the caller guarantees
/// that f(lo) and f(hi) have opposite signs.
template <typename F>
double bisect(F f, double lo, double hi) {
    const bool rising = f(lo) < 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0.0) == rising)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Grid-search oracle for max_{p : KL(q,p) <= alpha} p.v on S in {2,3},
/// independent of the library's dual formulation.  The first coordinate x
/// is swept on a grid (coarse step `step`, refined near the best point and
/// near the feasibility corners); for each slice the remaining coordinate
/// range is resolved exactly by bisection on KL(q, .) = alpha, where the
/// slice optimum of the linear objective must sit.  For S = 2 the slice
/// reduction makes the sweep itself exact.
inline double grid_oracle_kl_max(const std::vector<double>& q,
                                 const std::vector<double>& v, double alpha,
                                 double step = 1e-3) {
    const int S = static_cast<int>(q.size());
    const double tiny = 1e-15;

    // feasible range of x: kl_bernoulli(q0, x) <= alpha, minimized at x = q0
    auto fx = [&](double x) { return detail::kl_bernoulli(q[0], x) - alpha; };
    const double x_lo = fx(tiny) > 0.0
                            ? detail::bisect(fx, tiny, q[0])
                            : tiny;
    const double x_hi = fx(1.0 - tiny) > 0.0
                            ? detail::bisect(fx, q[0], 1.0 - tiny)
                            : 1.0 - tiny;

    if (S == 2) {
        // the objective is linear in x, so the maximum over the feasible
        // interval [x_lo, x_hi] is at one of its ends
        const double at_lo = x_lo * v[0] + (1.0 - x_lo) * v[1];
        const double at_hi = x_hi * v[0] + (1.0 - x_hi) * v[1];
        return std::max(at_lo, at_hi);
    }

    // S == 3: for a fixed x the objective is linear in y over the feasible
    // y-interval, whose ends solve KL(q, (x, y, 1-x-y)) = alpha
    auto slice_best = [&](double x) {
        if (x <= 0.0 || x >= 1.0 || fx(x) > 0.0)
            return -std::numeric_limits<double>::infinity();
        const double rem = 1.0 - x;
        const double y_star = q[1] * rem / (q[1] + q[2]);  // slice KL minimum
        auto gy = [&](double y) {
            return q[0] * std::log(q[0] / x) + q[1] * std::log(q[1] / y) +
                   q[2] * std::log(q[2] / (rem - y)) - alpha;
        };
        const double eps = tiny * rem;
        double y_lo, y_hi;
        if (gy(y_star) >= 0.0) {
            y_lo = y_hi = y_star;  // corner slice: the interval degenerates
        } else {
            y_lo = gy(eps) <= 0.0 ? eps : detail::bisect(gy, eps, y_star);
            y_hi = gy(rem - eps) <= 0.0
                       ? rem - eps
                       : detail::bisect(gy, y_star, rem - eps);
        }
        const double base = x * v[0] + rem * v[2];
        return std::max(base + y_lo * (v[1] - v[2]),
                        base + y_hi * (v[1] - v[2]));
    };

    double best = -std::numeric_limits<double>::infinity();
    double best_x = q[0];
    auto consider = [&](double x) {
        const double val = slice_best(x);
        if (val > best) {
            best = val;
            best_x = x;
        }
    };

    // coarse sweep of the feasible x-range (plus its exact ends)
    consider(x_lo);
    consider(x_hi);
    consider(q[0]);
    for (double x = x_lo; x < x_hi; x += step) consider(x);

    // local refinement around the best coarse slice
    const double best_coarse_x = best_x;
    const double fine = step / 100.0;
    for (double x = best_coarse_x - 2.0 * step; x <= best_coarse_x + 2.0 * step;
         x += fine)
        consider(x);

    // near the corners x_lo / x_hi the slice value varies like sqrt(x);
    // sweep them on a sqrt-spaced grid so the spacing stays uniform in the
    // parametrization where the value is smooth
    const double w = std::min(2.0 * step, x_hi - x_lo);
    const double u_max = std::sqrt(w);
    const int corner_points = 1000;
    for (int i = 1; i <= corner_points; ++i) {
        const double u = u_max * i / corner_points;
        consider(x_lo + u * u);
        consider(x_hi - u * u);
    }
    return best;
}

inline double grid_oracle_kl_min(const std::vector<double>& q,
                                 const std::vector<double>& v, double alpha,
                                 double step = 1e-3) {
    std::vector<double> neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    return -grid_oracle_kl_max(q, neg, alpha, step);
}

/// Closed-form high-probability episode bound of the main sample-complexity
/// theorem, evaluated at the given parameters (gamma enters through sigma_H).
inline double theorem_tau_bound(int S, int A, int H, double gamma, double eps,
                                double delta) {
    const double sigma_h = rfx::sigma(H, gamma);
    const double c_h = 144.0 * (1.0 + std::sqrt(2.0)) * (1.0 + std::sqrt(2.0)) *
                       sigma_h * sigma_h * sigma_h * sigma_h;
    const double lead = c_h * S * A / (eps * eps);
    const double log_term = std::log(2.0 * S * A * H / delta);
    const double sm1 = S - 1.0;
    const double inner =
        lead * (log_term + sm1 * (std::sqrt(std::exp(1.0)) +
                                  std::sqrt(std::exp(1.0) / sm1)));
    return lead * (log_term + 2.0 * sm1 * std::log(inner) + sm1);
}

}  // namespace test_helpers
