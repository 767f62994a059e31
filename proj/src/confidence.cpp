#include "rfx/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rfx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_distribution(std::span<const double> q) {
    double sum = 0.0;
    for (double x : q) {
        if (x < 0.0) throw std::invalid_argument("distribution has a negative entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("distribution does not sum to 1");
}

}  // namespace

double beta_count(const ThresholdSpec& spec) {
    const double sa = 2.0 * spec.num_states * spec.num_actions;
    return spec.mode == CountMode::per_step
               ? std::log(sa * spec.horizon / spec.delta)
               : std::log(sa / spec.delta);
}

double beta(double n, const ThresholdSpec& spec) {
    if (n < 0.0) throw std::invalid_argument("count must be nonnegative");
    if (spec.delta <= 0.0 || spec.delta >= 1.0)
        throw std::invalid_argument("delta must be in (0, 1)");
    const int sm1 = spec.num_states - 1;
    double tail = 0.0;
    if (sm1 > 0) tail = sm1 * std::log(std::exp(1.0) * (1.0 + n / sm1));
    return beta_count(spec) + tail;
}

double kl_categorical(std::span<const double> q, std::span<const double> p) {
    if (q.size() != p.size())
        throw std::invalid_argument("distributions have different lengths");
    check_distribution(q);
    check_distribution(p);
    double kl = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        if (p[i] <= 0.0) return kInf;
        kl += q[i] * std::log(q[i] / p[i]);
    }
    return std::max(0.0, kl);
}

double pinsker_l1(double kl) {
    if (kl < 0.0) throw std::invalid_argument("kl must be nonnegative");
    return std::sqrt(2.0 * kl);
}

namespace {

// KL(q, p(mu)) for the dual-parametrized maximizer p_i proportional to
// q_i / (mu - v_i); valid for mu > max(v) on the support of q.
double dual_kl(std::span<const double> q, std::span<const double> v, double mu) {
    double logs = 0.0, w = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        logs += q[i] * std::log(mu - v[i]);
        w += q[i] / (mu - v[i]);
    }
    return logs + std::log(w);
}

KlBallResult dual_solution(std::span<const double> q, std::span<const double> v,
                           double mu) {
    KlBallResult res;
    res.arg.assign(q.size(), 0.0);
    double w = 0.0;
    for (size_t i = 0; i < q.size(); ++i)
        if (q[i] > 0.0) w += q[i] / (mu - v[i]);
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        res.arg[i] = q[i] / ((mu - v[i]) * w);
        res.value += res.arg[i] * v[i];
    }
    return res;
}

}  // namespace

KlBallResult kl_ball_max(std::span<const double> q, std::span<const double> v,
                         double alpha) {
    if (q.size() != v.size())
        throw std::invalid_argument("q and v have different lengths");
    check_distribution(q);
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("v has a non-finite entry");
    if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");

    KlBallResult res;
    if (alpha == 0.0) {
        res.arg.assign(q.begin(), q.end());
        for (size_t i = 0; i < q.size(); ++i) res.value += q[i] * v[i];
        return res;
    }
    const size_t argmax_v =
        std::max_element(v.begin(), v.end()) - v.begin();
    const double vmax = v[argmax_v];
    if (std::isinf(alpha)) {  // whole simplex: supremum convention
        res.value = vmax;
        res.arg.assign(q.size(), 0.0);
        res.arg[argmax_v] = 1.0;
        return res;
    }

    double vsupmax = -kInf;
    bool support_below_vmax = false;  // some q_i > 0 with v_i < vmax
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        vsupmax = std::max(vsupmax, v[i]);
        if (v[i] < vmax) support_below_vmax = true;
    }
    if (!support_below_vmax) {
        // all of q's mass already sits on argmax-v states
        res.value = vmax;
        res.arg.assign(q.begin(), q.end());
        return res;
    }

    if (vsupmax < vmax) {
        // Boundary regime: the best state carries no empirical mass, so mass
        // can be shifted onto it at finite KL cost.  Applies when even the
        // normalized boundary solution is inside the ball.
        double logs = 0.0, w = 0.0;
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] <= 0.0) continue;
            logs += q[i] * std::log(vmax - v[i]);
            w += q[i] / (vmax - v[i]);
        }
        const double kl_limit = logs + std::log(w);
        if (kl_limit <= alpha) {
            const double lambda = std::exp(logs - alpha);
            res.arg.assign(q.size(), 0.0);
            double mass = 0.0;
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] <= 0.0) continue;
                res.arg[i] = lambda * q[i] / (vmax - v[i]);
                mass += res.arg[i];
                res.value += res.arg[i] * v[i];
            }
            res.arg[argmax_v] += 1.0 - mass;
            res.value += (1.0 - mass) * vmax;
            return res;
        }
    }

    // Interior regime: monotone root-finding on the multiplier mu > vmax.
    const double scale = std::max(1.0, vmax - vsupmax) + 1.0;
    double lo = vmax + 1e-14 * scale;
    double hi = vmax + scale;
    while (dual_kl(q, v, hi) > alpha) hi = vmax + 2.0 * (hi - vmax);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dual_kl(q, v, mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return dual_solution(q, v, hi);
}

KlBallResult kl_ball_min(std::span<const double> q, std::span<const double> v,
                         double alpha) {
    std::vector<double> neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    KlBallResult res = kl_ball_max(q, neg, alpha);
    res.value = -res.value;
    return res;
}

double bernstein_kl_upper(double pf, double var_q, double alpha, double B) {
    if (var_q < 0.0 || alpha < 0.0 || B <= 0.0)
        throw std::invalid_argument("bernstein_kl_upper: bad arguments");
    return pf + std::sqrt(2.0 * var_q * alpha) + alpha * B / 3.0;
}

bool cnt_pseudo_bound_holds(std::int64_t n, double nbar, double beta_n,
                            double beta_nbar, double beta_cnt) {
    const bool antecedent = static_cast<double>(n) >= nbar / 2.0 - beta_cnt;
    if (!antecedent) return true;
    const double lhs = (n > 0) ? std::min(beta_n / n, 1.0) : 1.0;
    const double rhs = 4.0 * beta_nbar / std::max(nbar, 1.0);
    return lhs <= rhs;
}

}  // namespace rfx
