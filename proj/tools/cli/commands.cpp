#include "cli/commands.hpp"

#include <cmath>
#include <limits>

#include "cli/parallel.hpp"
#include "semtrack/error.hpp"
#include "semtrack/metrics.hpp"
#include "semtrack/optimizer.hpp"
#include "semtrack/remarks.hpp"
#include "semtrack/stationary.hpp"

#ifndef SEMTRACK_VERSION
#define SEMTRACK_VERSION "0.0.0"
#endif

namespace semtrack::cli {

SourceParams source_from(const RunSpec& spec) { return {spec.real("p"), spec.real("q")}; }

ChannelParams channel_from(const RunSpec& spec) {
    if (spec.has("ps2")) return {spec.real("ps0"), spec.real("ps1"), spec.real("ps2")};
    return {spec.real("ps0"), spec.real("ps1")};
}

RsPolicy rs_policy_from(const RunSpec& spec) {
    if (spec.has("pa2")) return {spec.real("pa0"), spec.real("pa1"), spec.real("pa2")};
    return {spec.real("pa0"), spec.real("pa1")};
}

CostWeights costs_from(const RunSpec& spec) { return {spec.real_or("c01", 1.0), spec.real_or("c10", 1.0)}; }

PolicyKind policy_from(const RunSpec& spec) {
    const std::string name = spec.text_or("policy", "rs");
    if (name == "change-aware") return ChangeAwarePolicy{};
    if (name == "semantics-aware") return SemanticsAwarePolicy{};
    if (name == "uniform") return UniformPolicy(static_cast<std::int64_t>(spec.count_or("d", 5)));
    return rs_policy_from(spec);
}

SimSettings sim_settings_from(const RunSpec& spec) {
    SimSettings s{};
    s.horizon = spec.count_or("horizon", 10'000'000);
    s.seed = spec.count_or("seed", 1);
    s.burn_in = spec.count_or("burn-in", std::min<std::uint64_t>(10'000, s.horizon / 10));
    return s;
}

std::vector<double> unit_grid(double step) {
    if (!(step > 0.0) || step > 1.0) throw ValidationError("grid-step", "must lie in (0, 1]");
    std::vector<double> g;
    const auto n = static_cast<std::uint64_t>(std::floor(1.0 / step + 1e-9));
    for (std::uint64_t k = 0; k <= n; ++k) g.push_back(std::min(1.0, static_cast<double>(k) * step));
    if (g.back() < 1.0 - 1e-9) g.push_back(1.0);
    g.back() = 1.0;
    return g;
}

bool exceeds_budget(double rate, double eta) noexcept { return rate > eta + 1e-9 * std::max(1.0, eta); }

namespace {

Report key_value_report(std::string title) {
    Report r;
    r.title = std::move(title);
    r.columns = {"metric", "value"};
    return r;
}

void kv(Report& r, std::string name, Cell value) { r.add_row({std::move(name), std::move(value)}); }

// Empty cell when the quantity is undefined at this point.
template <typename Fn>
Cell guarded(Fn fn) {
    try {
        return fn();
    } catch (const DomainError&) {
        return std::monostate{};
    } catch (const DegenerateModelError&) {
        return std::monostate{};
    }
}

SimConfig make_sim_config(const SourceParams& src, const ChannelParams& ch, PolicyKind policy,
                          const CostWeights& cw, const SimSettings& s) {
    return SimConfig{src, ch, std::move(policy), cw, s.horizon, s.seed, s.burn_in};
}

void analyze_three_state(const RunSpec& spec, Report& r) {
    const SourceParams3 src(spec.real("p"), spec.real("q"));
    if (!spec.has("ps2")) throw ValidationError("ps2", "required with three-state");
    if (!spec.has("pa2")) throw ValidationError("pa2", "required with three-state");
    if (spec.text_or("policy", "rs") != "rs") throw ValidationError("policy", "three-state analysis supports rs only");
    const auto ch = channel_from(spec);
    const auto pol = rs_policy_from(spec);
    const auto cw = costs_from(spec);
    const auto cmp = compare_three_state(src, ch, pol);
    for (int x = 0; x < 3; ++x)
        for (int xh = 0; xh < 3; ++xh)
            kv(r, "pi" + std::to_string(x) + std::to_string(xh), cmp.numeric(x, xh));
    kv(r, "pi_total", cmp.numeric.total());
    kv(r, "pe", cmp.numeric.error_mass());
    kv(r, "cost", cw.c01() * cmp.numeric(0, 1) + cw.c10() * cmp.numeric(1, 0));
    kv(r, "closed_form_max_abs_diff", cmp.max_abs_diff);
    kv(r, "closed_form_total", cmp.closed_form_total);
    kv(r, "closed_form_has_negative", flag_cell(cmp.closed_form_has_negative));
    kv(r, "closed_form_mismatches", static_cast<std::int64_t>(cmp.mismatches.size()));
}

void add_pi(Report& r, const JointStationary& st) {
    kv(r, "pi00", st.pi00());
    kv(r, "pi01", st.pi01());
    kv(r, "pi10", st.pi10());
    kv(r, "pi11", st.pi11());
    kv(r, "pi_total", st.total());
}

}  // namespace

Report cmd_analyze(const RunSpec& spec) {
    Report r = key_value_report("analyze");
    if (spec.flag("three-state")) {
        analyze_three_state(spec, r);
        return r;
    }
    const auto src = source_from(spec);
    const auto ch = channel_from(spec);
    const auto cw = costs_from(spec);
    const auto eta = spec.maybe_real("eta");
    const std::string policy = spec.text_or("policy", "rs");

    auto add_budget = [&](double rate) {
        if (eta) kv(r, "budget_feasible", flag_cell(!exceeds_budget(rate, *eta)));
    };

    if (policy == "uniform") throw ValidationError("policy", "uniform has no closed form; use simulate");
    if (policy == "change-aware" || policy == "semantics-aware") {
        const bool change = policy == "change-aware";
        const auto st = change ? stationary_change_aware(src, ch) : stationary_semantics(src, ch);
        const double rate = change ? sampling_rate_change_aware(src) : sampling_rate_semantics(src, ch);
        kv(r, "pe", reconstruction_error_rate(st));
        kv(r, "cost", actuation_error_cost(st, cw));
        add_pi(r, st);
        kv(r, "sampling_rate", rate);
        add_budget(rate);
        r.provenance["rate_sources"] = {{policy, "exact joint-chain law"}};
        return r;
    }

    const auto pol = rs_policy_from(spec);
    const auto spec_rs = ConsecErrorSpec::make(src, ch, pol);
    const auto& st = spec_rs.stationary();
    kv(r, "pe", reconstruction_error_rate(st));
    kv(r, "cost", actuation_error_cost(st, cw));
    kv(r, "cbar_e", guarded([&]() -> Cell { return avg_consecutive_error(spec_rs); }));
    kv(r, "cbar_s", guarded([&]() -> Cell { return avg_importance_consec(spec_rs); }));
    for (auto n : spec.count_list_or("n", {0, 1, 2, 3}))
        kv(r, "violation_n" + std::to_string(n), violation_probability(spec_rs, n));
    add_pi(r, st);
    const double rate = sampling_rate_rs(src, pol);
    kv(r, "sampling_rate", rate);
    add_budget(rate);

    const auto r1 = remark1_thresholds(src, ch, cw);
    kv(r, "remark1_t1", r1.t1());
    kv(r, "remark1_t2", guarded([&]() -> Cell { return r1.t2(pol.pa1()); }));
    kv(r, "remark1_rs_beats_semantics", guarded([&]() -> Cell { return flag_cell(r1.rs_beats_semantics(pol.pa0(), pol.pa1())); }));
    const auto r2 = remark2_monotone_regions(src, ch, pol);
    kv(r, "remark2_p_bound", r2.in_p.pa_lower_bound);
    kv(r, "remark2_p_threshold", r2.in_p.rate_threshold);
    kv(r, "remark2_p_holds", flag_cell(r2.in_p.holds));
    kv(r, "remark2_q_bound", r2.in_q.pa_lower_bound);
    kv(r, "remark2_q_threshold", r2.in_q.rate_threshold);
    kv(r, "remark2_q_holds", flag_cell(r2.in_q.holds));
    const auto mc = monotonicity_conditions(src, ch, cw);
    kv(r, "cond1_pa1_threshold", mc.cond1);
    kv(r, "cond2_pa0_threshold", mc.cond2);
    r.provenance["rate_sources"] = {{"rs", "closed form (q pa0 + p pa1) / (p + q)"}};
    return r;
}

Report cmd_simulate(const RunSpec& spec) {
    const auto s = sim_settings_from(spec);
    const bool three = spec.flag("three-state");
    SimConfig cfg{three ? std::variant<SourceParams, SourceParams3>(SourceParams3(spec.real("p"), spec.real("q")))
                        : std::variant<SourceParams, SourceParams3>(source_from(spec)),
                  channel_from(spec),
                  policy_from(spec),
                  costs_from(spec),
                  s.horizon,
                  s.seed,
                  s.burn_in};
    const auto rep = simulate(cfg);

    Report r = key_value_report("simulate");
    kv(r, "seed", static_cast<std::int64_t>(s.seed));
    kv(r, "config_hash", spec.config_hash());
    kv(r, "horizon", static_cast<std::int64_t>(s.horizon));
    kv(r, "burn_in", static_cast<std::int64_t>(s.burn_in));
    kv(r, "slots", static_cast<std::int64_t>(rep.slots));
    kv(r, "samples", static_cast<std::int64_t>(rep.samples));
    kv(r, "sampling_rate", rep.sampling_rate);
    if (spec.has("delta")) kv(r, "sampling_cost", empirical_sampling_cost(rep, spec.real("delta")));
    kv(r, "pe_hat", rep.pe_hat);
    kv(r, "cost_hat", rep.cost_hat);
    kv(r, "mean_consecutive_error", rep.mean_consecutive_error());
    kv(r, "mean_importance_consec", rep.mean_importance_consec());
    for (int x = 0; x < rep.states; ++x)
        for (int xh = 0; xh < rep.states; ++xh)
            kv(r, "freq" + std::to_string(x) + std::to_string(xh), rep.joint_frequency(x, xh));
    if (spec.flag("histograms")) {
        auto dump = [&](const char* name, const std::vector<std::uint64_t>& h) {
            for (std::size_t k = 0; k < h.size(); ++k)
                if (h[k] != 0) kv(r, std::string(name) + "[" + std::to_string(k) + "]", static_cast<std::int64_t>(h[k]));
        };
        dump("consec_runs", rep.consec_hist);
        dump("importance_runs", rep.importance_hist);
        dump("consec_slots", rep.consec_slot_hist);
        dump("importance_slots", rep.importance_slot_hist);
    }
    return r;
}

Report cmd_optimize(const RunSpec& spec) {
    const auto src = source_from(spec);
    const auto ch = channel_from(spec);
    const bool pe = spec.text_or("objective", "cost") == "pe";
    const auto cw = pe ? CostWeights(1.0, 1.0) : costs_from(spec);
    const auto eta = spec.maybe_real("eta");
    const auto res = eta ? optimize_constrained(src, ch, cw, *eta) : optimize_unconstrained(src, ch, cw);
    const double rate = sampling_rate_rs(src, RsPolicy(res.pa0_star, res.pa1_star));

    Report r;
    r.title = pe ? "optimize reconstruction error" : "optimize actuation cost";
    r.columns = {"pa0_star", "pa1_star", "value", "case", "sampling_rate", "interval_lo", "interval_hi", "delta"};
    std::vector<Cell> row = {res.pa0_star,
                             res.pa1_star,
                             res.value,
                             std::string(to_string(res.case_taken)),
                             rate,
                             res.diagnostics.interval_lo,
                             res.diagnostics.interval_hi,
                             res.diagnostics.delta ? Cell(*res.diagnostics.delta) : Cell(std::monostate{})};
    if (spec.has("grid-step")) {
        const double budget = eta ? *eta : (src.p() + src.q()) / std::min(src.p(), src.q());
        const auto g = grid_oracle(src, ch, cw, budget, spec.real("grid-step"));
        r.columns.insert(r.columns.end(), {"grid_pa0", "grid_pa1", "grid_value"});
        row.insert(row.end(), {g.pa0_star, g.pa1_star, g.value});
    }
    r.add_row(std::move(row));
    return r;
}

Report cmd_sweep(const RunSpec& spec) {
    const auto src = source_from(spec);
    const auto ch = channel_from(spec);
    const auto cw = costs_from(spec);
    const std::string metric = spec.text_or("metric", "cbar_e");
    const auto grid = unit_grid(spec.real_or("grid-step", 0.05));

    const auto rows = parallel_map(grid.size(), [&](std::size_t i) {
        std::vector<std::vector<Cell>> out;
        for (double pa1 : grid) {
            const double pa0 = grid[i];
            const Cell v = guarded([&]() -> Cell {
                const auto s = ConsecErrorSpec::make(src, ch, RsPolicy(pa0, pa1));
                if (metric == "cbar_e") return avg_consecutive_error(s);
                if (metric == "cbar_s") return avg_importance_consec(s);
                if (metric == "pe") return reconstruction_error_rate(s.stationary());
                return actuation_error_cost(s.stationary(), cw);
            });
            out.push_back({pa0, pa1, v});
        }
        return out;
    });
    Report r;
    r.title = "sweep " + metric;
    r.columns = {"pa0", "pa1", "value"};
    for (const auto& block : rows)
        for (const auto& row : block) r.add_row(row);
    return r;
}

std::vector<PolicyOutcome> compare_policies(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw,
                                            double eta, Objective objective, std::int64_t d,
                                            const SimSettings& sim) {
    const bool pe = objective == Objective::Pe;
    const CostWeights w = pe ? CostWeights(1.0, 1.0) : cw;
    auto metric_of = [&](const JointStationary& st) {
        return pe ? reconstruction_error_rate(st) : actuation_error_cost(st, w);
    };
    std::vector<PolicyOutcome> out;

    const auto sem_sim = simulate(make_sim_config(src, ch, SemanticsAwarePolicy{}, w, sim));
    out.push_back({"semantics-aware", metric_of(stationary_semantics(src, ch)), sem_sim.sampling_rate,
                   "simulation", false, 1.0, 1.0});

    out.push_back({"change-aware", metric_of(stationary_change_aware(src, ch)), sampling_rate_change_aware(src),
                   "closed form 2pq/(p+q)", false, 0.0, 0.0});

    const auto uni = simulate(make_sim_config(src, ch, UniformPolicy(d), w, sim));
    out.push_back({"uniform", pe ? uni.pe_hat : uni.cost_hat, uni.sampling_rate, "simulation", false, 0.0, 0.0});

    const auto rsc = optimize_constrained(src, ch, w, eta);
    out.push_back({"rsc", rsc.value, sampling_rate_rs(src, RsPolicy(rsc.pa0_star, rsc.pa1_star)),
                   "closed form (q pa0 + p pa1)/(p+q)", false, rsc.pa0_star, rsc.pa1_star});

    const auto rs = optimize_unconstrained(src, ch, w);
    out.push_back({"rs", rs.value, sampling_rate_rs(src, RsPolicy(rs.pa0_star, rs.pa1_star)),
                   "closed form (q pa0 + p pa1)/(p+q)", false, rs.pa0_star, rs.pa1_star});

    for (auto& o : out) o.violates = exceeds_budget(o.rate, eta);
    return out;
}

Report cmd_compare(const RunSpec& spec) {
    const auto src = source_from(spec);
    const auto ch = channel_from(spec);
    const auto cw = costs_from(spec);
    const bool pe = spec.text_or("objective", "cost") == "pe";
    const double eta = spec.real("eta");
    const auto sim = sim_settings_from(spec);
    const auto outcomes = compare_policies(src, ch, cw, eta, pe ? Objective::Pe : Objective::Cost,
                                           static_cast<std::int64_t>(spec.count_or("d", 5)), sim);
    Report r;
    r.title = pe ? "compare reconstruction error" : "compare actuation cost";
    r.columns = {"policy", "metric", "sampling_rate", "feasible", "rate_source"};
    nlohmann::json sources = nlohmann::json::object();
    for (const auto& o : outcomes) {
        r.add_row({o.policy, o.metric, o.rate, flag_cell(!o.violates), o.rate_source});
        sources[o.policy] = o.rate_source;
    }
    r.provenance["rate_sources"] = sources;
    r.provenance["seed"] = sim.seed;
    r.provenance["horizon"] = sim.horizon;
    return r;
}

Report dispatch(const RunSpec& spec) {
    Report r;
    switch (spec.command) {
        case Command::Analyze: r = cmd_analyze(spec); break;
        case Command::Simulate: r = cmd_simulate(spec); break;
        case Command::Optimize: r = cmd_optimize(spec); break;
        case Command::Table: r = cmd_table(spec); break;
        case Command::Sweep: r = cmd_sweep(spec); break;
        case Command::Compare: r = cmd_compare(spec); break;
    }
    auto& p = r.provenance;
    p["tool"] = "semtrack";
    p["version"] = SEMTRACK_VERSION;
    p["command"] = to_string(spec.command);
    p["config_hash"] = spec.config_hash();
    p["params"] = spec.params;
    if (spec.command == Command::Simulate || spec.command == Command::Compare ||
        (spec.command == Command::Table && !p.contains("seed")))
        p["seed"] = sim_settings_from(spec).seed;
    return r;
}

}  // namespace semtrack::cli
