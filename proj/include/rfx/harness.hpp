#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfx/mdp.hpp"

/// Experiment orchestration: seeded multi-run experiments over the bundled
/// environments and agents, with CSV/JSON emission.
namespace rfx::harness {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value experiment description, loadable from a JSON object.
struct ExperimentConfig {
    // environment
    std::string env;  // "double_chain" | "gridworld" | "random"
    int chain_length = 31;
    int side = 21;
    int horizon = 20;
    double slip = 0.1;
    double gamma = 1.0;
    int reward_row = 16, reward_col = 16;
    int start_row = 10, start_col = 10;
    int num_states = 5, num_actions = 2;  // random env
    std::uint64_t env_seed = 1;

    // agents: any of "rp", "gm", "rf", "rf_express", "bpi"
    std::vector<std::string> agents;
    double epsilon = 0.1;
    double delta = 0.1;
    bool clipped = true;
    bool pooled = false;

    // experiment shape
    std::int64_t budget = 5000;  // transitions
    std::vector<std::int64_t> checkpoints;
    int num_seeds = 1;
    std::uint64_t master_seed = 1;
    std::vector<double> epsilon_grid;
    int num_runs = 100;        // coverage
    int eval_num_rewards = 0;  // 0: evaluate with the environment reward

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
};

TabularMDP make_env(const ExperimentConfig& cfg);

/// One aggregated error-curve point.
struct CurvePoint {
    std::string agent;
    std::int64_t n = 0;  // transitions at the checkpoint
    double value_error_mean = 0, value_error_stderr = 0;
    double policy_subopt_mean = 0, policy_subopt_stderr = 0;
};

struct CurveResult {
    std::vector<CurvePoint> points;
};

/// Estimation-error curves: at each checkpoint, plan in the empirical MDP and
/// compare against exact planning in the true MDP; for "bpi" the current
/// recommendation is evaluated instead.
CurveResult run_error_curve(const ExperimentConfig& cfg);

struct VisitRow {
    std::string agent;
    int state = 0;
    std::int64_t visits = 0;  // summed over steps, actions and seeds
};

std::vector<VisitRow> run_visit_counts(const ExperimentConfig& cfg);

struct ComplexityRow {
    std::string agent;
    double epsilon = 0;
    double mean_tau = 0;          // conditional on stopping
    double censored_fraction = 0;
    std::vector<std::int64_t> taus;  // per seed; -1 when censored
};

/// Stopping-time estimation: one long run per seed with the stop-rule value
/// checked every episode; tau(eps) is the first crossing.
std::vector<ComplexityRow> run_sample_complexity(const ExperimentConfig& cfg);

struct CoverageReport {
    int num_runs = 0;
    double kl_violation_fraction = 0;     // event on transition concentration
    double count_violation_fraction = 0;  // event on counts vs pseudo-counts
};

/// Monte Carlo check of the high-probability events across seeded runs.
CoverageReport run_event_coverage(const ExperimentConfig& cfg);

// ---- serialization ----------------------------------------------------

std::string format_double(double x);  // 17 significant digits
std::string csv_quote(const std::string& field);

std::string to_csv(const CurveResult& result);
std::string to_csv(const std::vector<VisitRow>& rows);
std::string to_csv(const std::vector<ComplexityRow>& rows);
std::string to_csv(const CoverageReport& report);

std::string to_json(const CurveResult& result);
std::string to_json(const std::vector<VisitRow>& rows);
std::string to_json(const std::vector<ComplexityRow>& rows);
std::string to_json(const CoverageReport& report);

}  // namespace rfx::harness
