#include "rfx/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rfx/baselines.hpp"
#include "rfx/bpi.hpp"
#include "rfx/confidence.hpp"
#include "rfx/empirical.hpp"
#include "rfx/envs.hpp"
#include "rfx/rf.hpp"

namespace rfx::harness {

namespace {

using nlohmann::json;

const std::vector<std::string> kKnownAgents = {"rp", "gm", "rf", "rf_express",
                                               "bpi"};

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

template <typename T>
T get_scalar(const json& j, const std::string& key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

template <typename T>
std::vector<T> get_array(const json& j, const std::string& key) {
    const json& v = j.at(key);
    require(v.is_array(), "config key '" + key + "' must be an array");
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& item : v) {
        try {
            out.push_back(item.get<T>());
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
    return out;
}

std::int64_t budget_episodes(const ExperimentConfig& cfg, int H) {
    return (cfg.budget + H - 1) / H;
}

ThresholdSpec make_spec(const ExperimentConfig& cfg, const TabularMDP& mdp) {
    ThresholdSpec spec;
    spec.delta = cfg.delta;
    spec.num_states = mdp.num_states;
    spec.num_actions = mdp.num_actions;
    spec.horizon = mdp.horizon;
    spec.mode =
        cfg.pooled ? CountMode::stationary_pooled : CountMode::per_step;
    return spec;
}

RFConfig make_rf_config(const ExperimentConfig& cfg, double epsilon,
                        std::int64_t episodes) {
    RFConfig rf;
    rf.epsilon = epsilon;
    rf.delta = cfg.delta;
    rf.clipped = cfg.clipped;
    rf.stationary_pooled = cfg.pooled;
    rf.episode_budget = episodes;
    return rf;
}

/// Runs one agent for one seed, invoking visit(k, state, recommendation) the
/// first time the collected transition count reaches checkpoints[k] (sorted
/// ascending).  `recommendation` is null except for "bpi".  The final
/// checkpoint must be <= the transition budget implied by cfg.budget.
void run_agent_with_checkpoints(
    const ExperimentConfig& cfg, const TabularMDP& mdp,
    const std::string& agent, std::uint64_t seed,
    const std::vector<std::int64_t>& checkpoints,
    std::span<const double> bpi_reward,
    const std::function<void(size_t, const EmpiricalState&, const Policy*)>&
        visit) {
    const int H = mdp.horizon;
    const ThresholdSpec spec = make_spec(cfg, mdp);
    Rng rng(seed);

    if (agent == "gm") {
        // Allocation depends on the total draw count, so each checkpoint is a
        // fresh run with its own sub-seed.
        for (size_t k = 0; k < checkpoints.size(); ++k) {
            Rng sub(rng());
            EmpiricalState state =
                run_generative_model(mdp, checkpoints[k], sub, cfg.pooled);
            visit(k, state, nullptr);
        }
        return;
    }

    if (agent == "rp") {
        EmpiricalState state(mdp.num_states, mdp.num_actions, H, cfg.pooled);
        std::uniform_int_distribution<int> act(0, mdp.num_actions - 1);
        size_t k = 0;
        std::int64_t collected = 0;
        while (k < checkpoints.size() && collected >= checkpoints[k]) {
            visit(k, state, nullptr);
            ++k;
        }
        while (k < checkpoints.size()) {
            Trajectory tr;
            int s = mdp.initial_state;
            for (int h = 0; h < H; ++h) {
                const int a = act(rng);
                const int sp = sample_categorical(mdp.row(h, s, a), rng);
                tr.states.push_back(s);
                tr.actions.push_back(a);
                tr.next_states.push_back(sp);
                s = sp;
            }
            state.update(tr);
            collected += H;
            while (k < checkpoints.size() && collected >= checkpoints[k]) {
                visit(k, state, nullptr);
                ++k;
            }
        }
        return;
    }

    const std::int64_t episodes =
        std::max<std::int64_t>(budget_episodes(cfg, H),
                               (checkpoints.back() + H - 1) / H);

    if (agent == "rf" || agent == "rf_express") {
        // epsilon = 0 disables the stop rule so the full budget is spent.
        RFConfig rf = make_rf_config(cfg, 0.0, episodes);
        size_t k = 0;
        EpisodeCallback cb = [&](std::int64_t t, double, const EmpiricalState& st) {
            while (k < checkpoints.size() && t * H >= checkpoints[k]) {
                visit(k, st, nullptr);
                ++k;
            }
        };
        if (agent == "rf")
            run_rf_ucrl(mdp, rf, spec, rng, cb);
        else
            run_rf_express(mdp, rf, spec, rng, cb);
        return;
    }

    if (agent == "bpi") {
        size_t k = 0;
        BPICallback cb = [&](std::int64_t t, double, double,
                             const EmpiricalState& st) {
            while (k < checkpoints.size() && t * H >= checkpoints[k]) {
                ConfidenceBounds bounds =
                    compute_q_confidence(st, bpi_reward, spec, mdp.gamma);
                const Policy rec = bpi_recommend(bounds);
                visit(k, st, &rec);
                ++k;
            }
        };
        run_bpi_ucrl(mdp, bpi_reward, 0.0, cfg.delta, spec, rng, episodes, cb);
        return;
    }

    throw ConfigError("unknown agent '" + agent + "'");
}

struct MeanStderr {
    double mean = 0, stderr_ = 0;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    const size_t n = xs.size();
    if (n == 0) return out;
    double sum = 0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = std::sqrt(ss / static_cast<double>(n - 1) /
                            static_cast<double>(n));
    return out;
}

std::vector<std::int64_t> resolved_checkpoints(const ExperimentConfig& cfg) {
    std::vector<std::int64_t> cps = cfg.checkpoints;
    if (cps.empty()) cps.push_back(cfg.budget);
    std::sort(cps.begin(), cps.end());
    require(cps.front() >= 0, "checkpoints must be nonnegative");
    return cps;
}

void validate_common(const ExperimentConfig& cfg) {
    require(!cfg.agents.empty(), "config must name at least one agent");
    for (const auto& a : cfg.agents)
        require(std::find(kKnownAgents.begin(), kKnownAgents.end(), a) !=
                    kKnownAgents.end(),
                "unknown agent '" + a + "'");
    require(cfg.num_seeds >= 1, "num_seeds must be >= 1");
    require(cfg.budget >= 0, "budget must be nonnegative");
    require(cfg.delta > 0 && cfg.delta < 1, "delta must be in (0,1)");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "config root must be a JSON object");

    ExperimentConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "env") cfg.env = get_scalar<std::string>(j, key);
        else if (key == "chain_length") cfg.chain_length = get_scalar<int>(j, key);
        else if (key == "side") cfg.side = get_scalar<int>(j, key);
        else if (key == "horizon") cfg.horizon = get_scalar<int>(j, key);
        else if (key == "slip") cfg.slip = get_scalar<double>(j, key);
        else if (key == "gamma") cfg.gamma = get_scalar<double>(j, key);
        else if (key == "reward_row") cfg.reward_row = get_scalar<int>(j, key);
        else if (key == "reward_col") cfg.reward_col = get_scalar<int>(j, key);
        else if (key == "start_row") cfg.start_row = get_scalar<int>(j, key);
        else if (key == "start_col") cfg.start_col = get_scalar<int>(j, key);
        else if (key == "num_states") cfg.num_states = get_scalar<int>(j, key);
        else if (key == "num_actions") cfg.num_actions = get_scalar<int>(j, key);
        else if (key == "env_seed") cfg.env_seed = get_scalar<std::uint64_t>(j, key);
        else if (key == "agent") cfg.agents = {get_scalar<std::string>(j, key)};
        else if (key == "agents") cfg.agents = get_array<std::string>(j, key);
        else if (key == "epsilon") cfg.epsilon = get_scalar<double>(j, key);
        else if (key == "delta") cfg.delta = get_scalar<double>(j, key);
        else if (key == "clipped") cfg.clipped = get_scalar<bool>(j, key);
        else if (key == "pooled") cfg.pooled = get_scalar<bool>(j, key);
        else if (key == "budget") cfg.budget = get_scalar<std::int64_t>(j, key);
        else if (key == "checkpoints")
            cfg.checkpoints = get_array<std::int64_t>(j, key);
        else if (key == "num_seeds") cfg.num_seeds = get_scalar<int>(j, key);
        else if (key == "master_seed")
            cfg.master_seed = get_scalar<std::uint64_t>(j, key);
        else if (key == "epsilon_grid")
            cfg.epsilon_grid = get_array<double>(j, key);
        else if (key == "num_runs") cfg.num_runs = get_scalar<int>(j, key);
        else if (key == "eval_num_rewards")
            cfg.eval_num_rewards = get_scalar<int>(j, key);
        else
            throw ConfigError("unknown config key '" + key + "'");
    }
    require(!cfg.env.empty(), "config must set 'env'");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

TabularMDP make_env(const ExperimentConfig& cfg) {
    TabularMDP mdp;
    if (cfg.env == "double_chain") {
        mdp = make_double_chain(cfg.chain_length, cfg.horizon, cfg.slip,
                                cfg.gamma);
    } else if (cfg.env == "gridworld") {
        mdp = make_gridworld(cfg.side, cfg.horizon, cfg.slip,
                             {cfg.reward_row, cfg.reward_col},
                             {cfg.start_row, cfg.start_col}, cfg.gamma);
    } else if (cfg.env == "random") {
        Rng rng(cfg.env_seed);
        mdp = make_random_mdp(cfg.num_states, cfg.num_actions, cfg.horizon,
                              cfg.gamma, rng);
    } else {
        throw ConfigError("unknown env '" + cfg.env + "'");
    }
    mdp.validate();
    return mdp;
}

CurveResult run_error_curve(const ExperimentConfig& cfg) {
    validate_common(cfg);
    const TabularMDP mdp = make_env(cfg);
    const int H = mdp.horizon;
    const std::vector<std::int64_t> cps = resolved_checkpoints(cfg);

    Rng seeder(cfg.master_seed);
    const std::uint64_t reward_seed = seeder();

    // Evaluation rewards: the environment reward, or a fixed set of random
    // tables shared by every agent and seed.
    std::vector<std::vector<double>> rewards;
    if (cfg.eval_num_rewards == 0) {
        rewards.push_back(mdp.rewards);
    } else {
        Rng rrng(reward_seed);
        for (int i = 0; i < cfg.eval_num_rewards; ++i)
            rewards.push_back(
                make_random_reward(mdp.num_states, mdp.num_actions, H, rrng));
    }
    std::vector<double> vstar(rewards.size());
    for (size_t r = 0; r < rewards.size(); ++r)
        vstar[r] = plan_optimal(mdp, rewards[r])
                       .second.value(0, mdp.initial_state);

    std::vector<std::vector<std::uint64_t>> seeds(cfg.agents.size());
    for (auto& per_agent : seeds)
        for (int i = 0; i < cfg.num_seeds; ++i) per_agent.push_back(seeder());

    CurveResult result;
    for (size_t ai = 0; ai < cfg.agents.size(); ++ai) {
        const std::string& agent = cfg.agents[ai];
        std::vector<std::vector<double>> verr(cps.size()), subopt(cps.size());
        for (int i = 0; i < cfg.num_seeds; ++i) {
            auto visit = [&](size_t k, const EmpiricalState& state,
                             const Policy* recommendation) {
                const TabularMDP emp = state.empirical_mdp(mdp);
                double ve = 0, so = 0;
                for (size_t r = 0; r < rewards.size(); ++r) {
                    auto [pi_hat, v_hat] = plan_optimal(emp, rewards[r]);
                    ve += std::abs(v_hat.value(0, mdp.initial_state) -
                                   vstar[r]);
                    const Policy& evaluated =
                        recommendation ? *recommendation : pi_hat;
                    so += vstar[r] -
                          eval_policy(mdp, evaluated, rewards[r])
                              .value(0, mdp.initial_state);
                }
                verr[k].push_back(ve / static_cast<double>(rewards.size()));
                subopt[k].push_back(so / static_cast<double>(rewards.size()));
            };
            run_agent_with_checkpoints(cfg, mdp, agent, seeds[ai][i], cps,
                                       rewards[0], visit);
        }
        for (size_t k = 0; k < cps.size(); ++k) {
            const MeanStderr v = mean_stderr(verr[k]);
            const MeanStderr s = mean_stderr(subopt[k]);
            result.points.push_back({agent, cps[k], v.mean, v.stderr_, s.mean,
                                     s.stderr_});
        }
    }
    return result;
}

std::vector<VisitRow> run_visit_counts(const ExperimentConfig& cfg) {
    validate_common(cfg);
    const TabularMDP mdp = make_env(cfg);
    const std::vector<std::int64_t> cps = {cfg.budget};

    Rng seeder(cfg.master_seed);
    seeder();  // reward-seed slot, kept so seeds match run_error_curve
    std::vector<std::vector<std::uint64_t>> seeds(cfg.agents.size());
    for (auto& per_agent : seeds)
        for (int i = 0; i < cfg.num_seeds; ++i) per_agent.push_back(seeder());

    std::vector<VisitRow> rows;
    for (size_t ai = 0; ai < cfg.agents.size(); ++ai) {
        std::vector<std::int64_t> totals(mdp.num_states, 0);
        for (int i = 0; i < cfg.num_seeds; ++i) {
            auto visit = [&](size_t, const EmpiricalState& state,
                             const Policy*) {
                const std::vector<std::int64_t> t = state.state_visit_totals();
                for (int s = 0; s < mdp.num_states; ++s) totals[s] += t[s];
            };
            run_agent_with_checkpoints(cfg, mdp, cfg.agents[ai], seeds[ai][i],
                                       cps, mdp.rewards, visit);
        }
        for (int s = 0; s < mdp.num_states; ++s)
            rows.push_back({cfg.agents[ai], s, totals[s]});
    }
    return rows;
}

std::vector<ComplexityRow> run_sample_complexity(const ExperimentConfig& cfg) {
    validate_common(cfg);
    require(!cfg.epsilon_grid.empty(), "epsilon_grid must be non-empty");
    for (double e : cfg.epsilon_grid)
        require(e > 0, "epsilon_grid entries must be positive");
    const TabularMDP mdp = make_env(cfg);
    const int H = mdp.horizon;
    const ThresholdSpec spec = make_spec(cfg, mdp);
    const std::int64_t episodes = budget_episodes(cfg, H);

    std::vector<double> grid = cfg.epsilon_grid;
    std::sort(grid.begin(), grid.end());
    const double eps_min = grid.front();

    Rng seeder(cfg.master_seed);
    seeder();  // reward-seed slot
    std::vector<std::vector<std::uint64_t>> seeds(cfg.agents.size());
    for (auto& per_agent : seeds)
        for (int i = 0; i < cfg.num_seeds; ++i) per_agent.push_back(seeder());

    std::vector<ComplexityRow> rows;
    for (size_t ai = 0; ai < cfg.agents.size(); ++ai) {
        const std::string& agent = cfg.agents[ai];
        require(agent == "rf" || agent == "rf_express" || agent == "bpi",
                "sample complexity needs a stopping agent, got '" + agent +
                    "'");
        // taus[g][i]: first episode where the stop rule for grid[g] fires.
        std::vector<std::vector<std::int64_t>> taus(
            grid.size(), std::vector<std::int64_t>(cfg.num_seeds, -1));
        for (int i = 0; i < cfg.num_seeds; ++i) {
            Rng rng(seeds[ai][i]);
            auto record = [&](std::int64_t t, double stop_value,
                              double threshold_scale) {
                if (t == 0) return;
                for (size_t g = 0; g < grid.size(); ++g)
                    if (taus[g][i] < 0 &&
                        stop_value <= grid[g] * threshold_scale)
                        taus[g][i] = t;
            };
            if (agent == "bpi") {
                BPICallback cb = [&](std::int64_t t, double v_up, double v_lo,
                                     const EmpiricalState&) {
                    record(t, v_up - v_lo, 1.0);
                };
                run_bpi_ucrl(mdp, mdp.rewards, eps_min, cfg.delta, spec, rng,
                             episodes, cb);
            } else {
                const RFConfig rf = make_rf_config(cfg, eps_min, episodes);
                EpisodeCallback cb = [&](std::int64_t t, double stop_value,
                                         const EmpiricalState&) {
                    record(t, stop_value, 0.5);
                };
                if (agent == "rf")
                    run_rf_ucrl(mdp, rf, spec, rng, cb);
                else
                    run_rf_express(mdp, rf, spec, rng, cb);
            }
        }
        for (size_t g = 0; g < grid.size(); ++g) {
            ComplexityRow row;
            row.agent = agent;
            row.epsilon = grid[g];
            row.taus = taus[g];
            double sum = 0;
            int stopped = 0;
            for (std::int64_t t : taus[g])
                if (t >= 0) {
                    sum += static_cast<double>(t);
                    ++stopped;
                }
            row.mean_tau = stopped ? sum / stopped : 0.0;
            row.censored_fraction =
                static_cast<double>(cfg.num_seeds - stopped) / cfg.num_seeds;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

CoverageReport run_event_coverage(const ExperimentConfig& cfg) {
    require(cfg.num_runs >= 1, "num_runs must be >= 1");
    require(cfg.budget >= 1, "budget must be >= 1");
    require(cfg.delta > 0 && cfg.delta < 1, "delta must be in (0,1)");
    const TabularMDP mdp = make_env(cfg);
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    const ThresholdSpec spec = make_spec(cfg, mdp);
    const std::int64_t episodes = budget_episodes(cfg, H);
    const RFConfig rf = make_rf_config(cfg, 0.0, episodes);
    const double beta_cnt = beta_count(spec);

    Rng seeder(cfg.master_seed);
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < cfg.num_runs; ++i) seeds.push_back(seeder());

    int kl_violations = 0, count_violations = 0;
    for (int run = 0; run < cfg.num_runs; ++run) {
        Rng rng(seeds[run]);
        EmpiricalState state(S, A, H, cfg.pooled);
        OccupancyTable pseudo(H, S, A);
        bool kl_viol = false, cnt_viol = false;
        std::vector<double> phat(S);
        for (std::int64_t t = 0; t < episodes; ++t) {
            const ErrorBoundTable bounds =
                compute_error_bounds(state, rf, spec, mdp.gamma);
            const Policy pi = greedy_policy(bounds);
            const OccupancyTable occ = occupancy(mdp, pi);
            for (size_t i = 0; i < pseudo.p.size(); ++i)
                pseudo.p[i] += occ.p[i];
            state.update(sample_episode(mdp, pi, rng));

            for (int h = 0; h < H && !(kl_viol && cnt_viol); ++h)
                for (int s = 0; s < S; ++s)
                    for (int a = 0; a < A; ++a) {
                        const std::int64_t n = state.visits(h, s, a);
                        if (!kl_viol && n > 0) {
                            state.transition_row(h, s, a, phat.data());
                            const double kl = kl_categorical(
                                phat, mdp.row(h, s, a));
                            if (static_cast<double>(n) * kl >
                                beta(static_cast<double>(n), spec))
                                kl_viol = true;
                        }
                        if (!cnt_viol &&
                            static_cast<double>(n) <
                                pseudo.at(h, s, a) / 2.0 - beta_cnt)
                            cnt_viol = true;
                    }
        }
        kl_violations += kl_viol ? 1 : 0;
        count_violations += cnt_viol ? 1 : 0;
    }
    CoverageReport report;
    report.num_runs = cfg.num_runs;
    report.kl_violation_fraction =
        static_cast<double>(kl_violations) / cfg.num_runs;
    report.count_violation_fraction =
        static_cast<double>(count_violations) / cfg.num_runs;
    return report;
}

// ---- serialization -----------------------------------------------------

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string to_csv(const CurveResult& result) {
    std::ostringstream ss;
    ss << "agent,n,value_error_mean,value_error_stderr,policy_subopt_mean,"
          "policy_subopt_stderr\r\n";
    for (const auto& p : result.points)
        ss << csv_quote(p.agent) << ',' << p.n << ','
           << format_double(p.value_error_mean) << ','
           << format_double(p.value_error_stderr) << ','
           << format_double(p.policy_subopt_mean) << ','
           << format_double(p.policy_subopt_stderr) << "\r\n";
    return ss.str();
}

std::string to_csv(const std::vector<VisitRow>& rows) {
    std::ostringstream ss;
    ss << "agent,state,visits\r\n";
    for (const auto& r : rows)
        ss << csv_quote(r.agent) << ',' << r.state << ',' << r.visits
           << "\r\n";
    return ss.str();
}

std::string to_csv(const std::vector<ComplexityRow>& rows) {
    std::ostringstream ss;
    ss << "agent,epsilon,mean_tau,censored_fraction,taus\r\n";
    for (const auto& r : rows) {
        std::string taus;
        for (size_t i = 0; i < r.taus.size(); ++i) {
            if (i) taus += ';';
            taus += std::to_string(r.taus[i]);
        }
        ss << csv_quote(r.agent) << ',' << format_double(r.epsilon) << ','
           << format_double(r.mean_tau) << ','
           << format_double(r.censored_fraction) << ',' << csv_quote(taus)
           << "\r\n";
    }
    return ss.str();
}

std::string to_csv(const CoverageReport& report) {
    std::ostringstream ss;
    ss << "num_runs,kl_violation_fraction,count_violation_fraction\r\n"
       << report.num_runs << ','
       << format_double(report.kl_violation_fraction) << ','
       << format_double(report.count_violation_fraction) << "\r\n";
    return ss.str();
}

namespace {
json curve_json(const CurveResult& result) {
    json arr = json::array();
    for (const auto& p : result.points)
        arr.push_back({{"agent", p.agent},
                       {"n", p.n},
                       {"value_error_mean", p.value_error_mean},
                       {"value_error_stderr", p.value_error_stderr},
                       {"policy_subopt_mean", p.policy_subopt_mean},
                       {"policy_subopt_stderr", p.policy_subopt_stderr}});
    return arr;
}
}  // namespace

std::string to_json(const CurveResult& result) {
    return curve_json(result).dump(2) + "\n";
}

std::string to_json(const std::vector<VisitRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(
            {{"agent", r.agent}, {"state", r.state}, {"visits", r.visits}});
    return arr.dump(2) + "\n";
}

std::string to_json(const std::vector<ComplexityRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"agent", r.agent},
                       {"epsilon", r.epsilon},
                       {"mean_tau", r.mean_tau},
                       {"censored_fraction", r.censored_fraction},
                       {"taus", r.taus}});
    return arr.dump(2) + "\n";
}

std::string to_json(const CoverageReport& report) {
    json j = {{"num_runs", report.num_runs},
              {"kl_violation_fraction", report.kl_violation_fraction},
              {"count_violation_fraction", report.count_violation_fraction}};
    return j.dump(2) + "\n";
}

}  // namespace rfx::harness
