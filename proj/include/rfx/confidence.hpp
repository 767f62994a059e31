#pragma once

#include <cstdint>
#include <span>
#include <vector>

/// Thresholds, divergences and optimization over KL confidence balls.
namespace rfx {

enum class CountMode {
    per_step,           // counts kept per (h,s,a); log(2SAH/delta) leading term
    stationary_pooled,  // counts pooled over h; log(2SA/delta) leading term
};

struct ThresholdSpec {
    double delta = 0.1;
    int num_states = 1;
    int num_actions = 2;
    int horizon = 1;
    CountMode mode = CountMode::per_step;
};

/// Confidence threshold beta(n, delta); non-decreasing in n, and
/// beta(x)/x is non-increasing for x >= 1.
double beta(double n, const ThresholdSpec& spec);

/// Leading term of beta: log(2SAH/delta), or log(2SA/delta) when pooled.
double beta_count(const ThresholdSpec& spec);

/// KL(q || p) with the conventions 0 log(0/x) = 0 and q>0, p=0 -> +inf.
double kl_categorical(std::span<const double> q, std::span<const double> p);

/// L1-distance bound sqrt(2 kl) from Pinsker's inequality.
double pinsker_l1(double kl);

struct KlBallResult {
    double value = 0.0;
    std::vector<double> arg;  // optimizing distribution
};

/// max_{p : KL(q, p) <= alpha} p.v, solved by bisection on the dual
/// multiplier; alpha = 0 gives q.v, alpha = +inf gives max v (supremum
/// convention).  Absolute tolerance 1e-9 on the value.
KlBallResult kl_ball_max(std::span<const double> q, std::span<const double> v,
                         double alpha);

/// min counterpart; equals -kl_ball_max(q, -v, alpha).
KlBallResult kl_ball_min(std::span<const double> q, std::span<const double> v,
                         double alpha);

/// Bernstein-style upper bound pf + sqrt(2 var_q alpha) + alpha B / 3 on
/// q.f when KL(p, q) <= alpha and 0 <= f <= B.
double bernstein_kl_upper(double pf, double var_q, double alpha, double B);

/// Checks the count/pseudo-count implication:
/// n >= nbar/2 - beta_cnt  implies  min(beta_n/n, 1) <= 4 beta_nbar / max(nbar, 1).
/// Returns true when the implication holds (vacuously true if the antecedent
/// fails).
bool cnt_pseudo_bound_holds(std::int64_t n, double nbar, double beta_n,
                            double beta_nbar, double beta_cnt);

}  // namespace rfx
