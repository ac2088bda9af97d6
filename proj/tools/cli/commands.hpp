#pragma once

#include <string>
#include <vector>

#include "cli/report.hpp"
#include "cli/run_spec.hpp"
#include "semtrack/params.hpp"
#include "semtrack/sim.hpp"

namespace semtrack::cli {

// Parameter assembly shared by the commands. Missing required keys raise
// ValidationError naming the key.
SourceParams source_from(const RunSpec& spec);
ChannelParams channel_from(const RunSpec& spec);
RsPolicy rs_policy_from(const RunSpec& spec);
CostWeights costs_from(const RunSpec& spec);
PolicyKind policy_from(const RunSpec& spec);

// Simulation settings with the CLI defaults: horizon 1e7, seed 1,
// burn-in min(1e4, horizon / 10).
struct SimSettings {
    std::uint64_t horizon;
    std::uint64_t seed;
    std::uint64_t burn_in;
};
SimSettings sim_settings_from(const RunSpec& spec);

// Grid 0, step, 2 step, ... with 1 always included.
std::vector<double> unit_grid(double step);

// A rate above the budget, allowing for rounding on the budget line.
bool exceeds_budget(double rate, double eta) noexcept;

Report cmd_analyze(const RunSpec& spec);
Report cmd_simulate(const RunSpec& spec);
Report cmd_optimize(const RunSpec& spec);
Report cmd_sweep(const RunSpec& spec);
Report cmd_compare(const RunSpec& spec);
Report cmd_table(const RunSpec& spec);

// Known table identifiers, aliases excluded.
std::vector<std::string> table_ids();

// Runs the command and attaches the provenance block.
Report dispatch(const RunSpec& spec);

}  // namespace semtrack::cli

namespace semtrack::cli {

enum class Objective { Cost, Pe };

// One policy's entry in a comparison: its metric, its long-run sampling rate
// and whether that rate breaks the budget.
struct PolicyOutcome {
    std::string policy;
    double metric = 0.0;
    double rate = 0.0;
    std::string rate_source;
    bool violates = false;
    double pa0 = 0.0;  // RS policies only
    double pa1 = 0.0;
};

// Semantics-aware, change-aware, uniform(d), RSC (budget eta) and
// unconstrained RS, in that order. Uniform metric and the semantics-aware and
// uniform rates come from simulation.
std::vector<PolicyOutcome> compare_policies(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw,
                                            double eta, Objective objective, std::int64_t d,
                                            const SimSettings& sim);

}  // namespace semtrack::cli
