#include "rfx/envs.hpp"

#include <cmath>
#include <stdexcept>

namespace rfx {

namespace {

void copy_layer_to_all_steps(TabularMDP& m) {
    const size_t layer =
        static_cast<size_t>(m.num_states) * m.num_states * m.num_actions;
    for (int h = 1; h < m.horizon; ++h)
        std::copy(m.transitions.begin(), m.transitions.begin() + layer,
                  m.transitions.begin() + h * layer);
}

}  // namespace

TabularMDP make_double_chain(int L, int H, double slip, double gamma) {
    if (L < 3 || L % 2 == 0)
        throw std::invalid_argument("chain length must be odd and >= 3");
    if (slip < 0.0 || slip >= 0.5)
        throw std::invalid_argument("slip must be in [0, 0.5)");
    TabularMDP m = make_mdp_shell(L, 2, H, gamma, (L - 1) / 2);
    m.stationary = true;
    for (int s = 0; s < L; ++s)
        for (int a = 0; a < 2; ++a) {
            const int left = std::max(0, s - 1);
            const int right = std::min(L - 1, s + 1);
            const int intended = (a == 0) ? left : right;
            const int other = (a == 0) ? right : left;
            auto r = m.row(0, s, a);
            r[intended] += 1.0 - slip;
            r[other] += slip;
        }
    copy_layer_to_all_steps(m);
    for (int h = 0; h < H; ++h)
        for (int a = 0; a < 2; ++a)
            m.rewards[m.sa_index(h, L - 1, a)] = 1.0;
    m.validate();
    return m;
}

TabularMDP make_gridworld(int side, int H, double slip,
                          std::pair<int, int> reward_cell,
                          std::pair<int, int> start_cell, double gamma) {
    if (side < 1) throw std::invalid_argument("grid side must be positive");
    if (slip < 0.0 || slip > 1.0)
        throw std::invalid_argument("slip must be in [0, 1]");
    auto inside = [side](std::pair<int, int> c) {
        return c.first >= 0 && c.first < side && c.second >= 0 && c.second < side;
    };
    if (!inside(reward_cell) || !inside(start_cell))
        throw std::invalid_argument("cell outside the grid");
    const int S = side * side;
    auto cell_id = [side](int row, int col) { return row * side + col; };
    const int start = cell_id(start_cell.first, start_cell.second);
    TabularMDP m = make_mdp_shell(S, 4, H, gamma, start);
    m.stationary = true;
    // action order: left, right, up, down
    const int drow[4] = {0, 0, -1, 1};
    const int dcol[4] = {-1, 1, 0, 0};
    for (int row = 0; row < side; ++row)
        for (int col = 0; col < side; ++col) {
            const int s = cell_id(row, col);
            for (int a = 0; a < 4; ++a) {
                auto r = m.row(0, s, a);
                for (int dir = 0; dir < 4; ++dir) {
                    const double mass = (dir == a) ? 1.0 - slip : slip / 3.0;
                    int nr = row + drow[dir], nc = col + dcol[dir];
                    if (nr < 0 || nr >= side || nc < 0 || nc >= side) {
                        nr = row;
                        nc = col;
                    }
                    r[cell_id(nr, nc)] += mass;
                }
            }
        }
    copy_layer_to_all_steps(m);
    const int goal = cell_id(reward_cell.first, reward_cell.second);
    for (int h = 0; h < H; ++h)
        for (int a = 0; a < 4; ++a)
            m.rewards[m.sa_index(h, goal, a)] = 1.0;
    m.validate();
    return m;
}

TabularMDP add_initial_state(const TabularMDP& mdp, std::span<const double> p0) {
    if (p0.size() != static_cast<size_t>(mdp.num_states))
        throw std::invalid_argument("p0 has the wrong length");
    double sum = 0.0;
    for (double p : p0) {
        if (p < 0.0) throw std::invalid_argument("p0 has a negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("p0 does not sum to 1");

    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    // the extra state takes index S and is the new initial state
    TabularMDP out = make_mdp_shell(S + 1, A, H + 1, mdp.gamma, S);
    out.step_discounts[0] = 1.0;
    for (int h = 0; h < H; ++h) out.step_discounts[h + 1] = mdp.step_discounts[h];
    // step 0: every action from the extra state follows p0; all other states
    // self-loop (unreachable at step 0 from the new initial state)
    for (int s = 0; s <= S; ++s)
        for (int a = 0; a < A; ++a) {
            auto r = out.row(0, s, a);
            if (s == S)
                std::copy(p0.begin(), p0.end(), r.begin());
            else
                r[s] = 1.0;
        }
    // steps 1..H: original kernels; the extra state self-loops
    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                auto src = mdp.row(h, s, a);
                auto dst = out.row(h + 1, s, a);
                std::copy(src.begin(), src.end(), dst.begin());
            }
    for (int h = 1; h <= H; ++h)
        for (int a = 0; a < A; ++a) out.row(h, S, a)[S] = 1.0;
    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a)
                out.rewards[out.sa_index(h + 1, s, a)] =
                    mdp.rewards[mdp.sa_index(h, s, a)];
    out.validate();
    return out;
}

TabularMDP make_random_mdp(int S, int A, int H, double gamma, Rng& rng) {
    if (S < 1 || A < 1 || H < 1)
        throw std::invalid_argument("S, A, H must be positive");
    TabularMDP m = make_mdp_shell(S, A, H, gamma, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int h = 0; h < H; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                auto r = m.row(h, s, a);
                double sum = 0.0;
                for (int sp = 0; sp < S; ++sp) {
                    r[sp] = -std::log(1.0 - unif(rng));  // exponential spacings
                    sum += r[sp];
                }
                for (int sp = 0; sp < S; ++sp) r[sp] /= sum;
            }
    for (auto& r : m.rewards) r = unif(rng);
    m.validate();
    return m;
}

std::vector<double> make_random_reward(int S, int A, int H, Rng& rng) {
    std::vector<double> r(static_cast<size_t>(H) * S * A);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto& x : r) x = unif(rng);
    return r;
}

Policy make_random_policy(int S, int A, int H, Rng& rng) {
    Policy pi(H, S);
    std::uniform_int_distribution<int> act(0, A - 1);
    for (auto& a : pi.actions) a = act(rng);
    return pi;
}

}  // namespace rfx
