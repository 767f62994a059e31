// Command-line front end for the exploration toolkit.
//
// Exit codes: 0 success, 2 configuration error, 3 the stopping rule did not
// fire within the episode budget (explore subcommand).
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rfx/bpi.hpp"
#include "rfx/envs.hpp"
#include "rfx/harness.hpp"
#include "rfx/rf.hpp"

namespace {

using rfx::harness::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format = "csv";
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "Path to a JSON config file")
        ->required();
    sub->add_option("--seed", opts.seed, "Override the config master seed");
    sub->add_option("--out", opts.out_dir,
                    "Output directory (default: write to stdout)");
    sub->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig load_config(const CommonOpts& opts) {
    ExperimentConfig cfg = ExperimentConfig::from_file(opts.config_path);
    if (opts.seed) cfg.master_seed = *opts.seed;
    return cfg;
}

void emit(const CommonOpts& opts, const std::string& name,
          const std::string& content) {
    if (opts.out_dir.empty()) {
        std::cout << content;
        return;
    }
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path path =
        std::filesystem::path(opts.out_dir) / (name + "." + opts.format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    std::cerr << "wrote " << path.string() << "\n";
}

template <typename T>
void emit_result(const CommonOpts& opts, const std::string& name,
                 const T& result) {
    emit(opts, name,
         opts.format == "csv" ? rfx::harness::to_csv(result)
                              : rfx::harness::to_json(result));
}

int cmd_plan(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    const rfx::TabularMDP mdp = rfx::harness::make_env(cfg);
    const auto [policy, values] = rfx::plan_optimal(mdp);
    nlohmann::json j;
    j["optimal_value"] = values.value(0, mdp.initial_state);
    j["initial_state"] = mdp.initial_state;
    nlohmann::json actions = nlohmann::json::array();
    for (int h = 0; h < mdp.horizon; ++h) {
        nlohmann::json row = nlohmann::json::array();
        for (int s = 0; s < mdp.num_states; ++s) row.push_back(policy.at(h, s));
        actions.push_back(row);
    }
    j["policy"] = actions;
    emit(opts, "plan", j.dump(2) + "\n");
    return kExitOk;
}

int cmd_explore(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    if (cfg.agents.size() != 1)
        throw rfx::harness::ConfigError(
            "explore needs exactly one agent in the config");
    const std::string& agent = cfg.agents[0];
    const rfx::TabularMDP mdp = rfx::harness::make_env(cfg);
    const int H = mdp.horizon;
    const std::int64_t episodes = (cfg.budget + H - 1) / H;

    rfx::ThresholdSpec spec;
    spec.delta = cfg.delta;
    spec.num_states = mdp.num_states;
    spec.num_actions = mdp.num_actions;
    spec.horizon = H;
    spec.mode = cfg.pooled ? rfx::CountMode::stationary_pooled
                           : rfx::CountMode::per_step;
    rfx::Rng rng(cfg.master_seed);

    bool stopped = false;
    std::int64_t tau = 0;
    std::vector<std::int64_t> visit_totals;
    nlohmann::json extra = nlohmann::json::object();

    if (agent == "rf" || agent == "rf_express") {
        rfx::RFConfig rf;
        rf.epsilon = cfg.epsilon;
        rf.delta = cfg.delta;
        rf.clipped = cfg.clipped;
        rf.stationary_pooled = cfg.pooled;
        rf.episode_budget = episodes;
        const rfx::RFRunResult res =
            agent == "rf" ? rfx::run_rf_ucrl(mdp, rf, spec, rng)
                          : rfx::run_rf_express(mdp, rf, spec, rng);
        stopped = res.stopped;
        tau = res.tau;
        visit_totals = res.data.state_visit_totals();
    } else if (agent == "bpi") {
        const rfx::BPIRunResult res =
            rfx::run_bpi_ucrl(mdp, mdp.rewards, cfg.epsilon, cfg.delta, spec,
                              rng, episodes);
        stopped = res.stopped;
        tau = res.tau;
        visit_totals = res.data.state_visit_totals();
        const rfx::ValueTable values =
            rfx::eval_policy(mdp, res.recommendation);
        extra["recommended_value"] = values.value(0, mdp.initial_state);
    } else {
        throw rfx::harness::ConfigError(
            "explore needs a stopping agent (rf, rf_express or bpi), got '" +
            agent + "'");
    }

    nlohmann::json j;
    j["agent"] = agent;
    j["stopped"] = stopped;
    j["tau_episodes"] = tau;
    j["tau_transitions"] = tau * H;
    j["state_visit_totals"] = visit_totals;
    j.update(extra);
    emit(opts, "explore", j.dump(2) + "\n");
    return stopped ? kExitOk : kExitBudget;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reward-free exploration toolkit for tabular episodic MDPs"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* plan = app.add_subcommand("plan", "Exact planning in an environment");
    CLI::App* explore =
        app.add_subcommand("explore", "One seeded run of a stopping agent");
    CLI::App* curve =
        app.add_subcommand("curve", "Estimation-error curves over checkpoints");
    CLI::App* visits =
        app.add_subcommand("visits", "State visit totals per agent");
    CLI::App* complexity =
        app.add_subcommand("complexity", "Stopping times over an epsilon grid");
    CLI::App* coverage =
        app.add_subcommand("coverage", "Concentration-event coverage check");
    for (CLI::App* sub : {plan, explore, curve, visits, complexity, coverage})
        add_common(sub, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return cmd_plan(opts);
        if (explore->parsed()) return cmd_explore(opts);
        const ExperimentConfig cfg = load_config(opts);
        if (curve->parsed())
            emit_result(opts, "curve", rfx::harness::run_error_curve(cfg));
        else if (visits->parsed())
            emit_result(opts, "visits", rfx::harness::run_visit_counts(cfg));
        else if (complexity->parsed())
            emit_result(opts, "complexity",
                        rfx::harness::run_sample_complexity(cfg));
        else if (coverage->parsed())
            emit_result(opts, "coverage",
                        rfx::harness::run_event_coverage(cfg));
        return kExitOk;
    } catch (const rfx::harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
