#include <array>
#include <functional>
#include <map>

#include "cli/commands.hpp"
#include "cli/parallel.hpp"
#include "semtrack/error.hpp"
#include "semtrack/metrics.hpp"
#include "semtrack/optimizer.hpp"
#include "semtrack/stationary.hpp"

namespace semtrack::cli {

namespace {

struct SourceRow {
    double p;
    double q;
};

constexpr std::array<SourceRow, 5> kCostRows{{{0.1, 0.01}, {0.3, 0.1}, {0.5, 0.4}, {0.7, 0.8}, {0.9, 0.95}}};
constexpr std::array<double, 5> kEtaRows{0.1, 0.3, 0.5, 0.7, 0.9};
constexpr std::array<double, 6> kPaGrid{0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
constexpr double kCostEta = 0.5;
const CostWeights kCostWeights{1.0, 2.0};

using Builder = std::function<Report(const RunSpec&)>;

void reject_simulate(const RunSpec& spec, const std::string& id) {
    if (spec.flag("simulate")) throw ValidationError("simulate", "table '" + id + "' has no simulated columns");
}

void add_sim_columns(Report& r, const std::vector<std::vector<Cell>>& rows, bool sim) {
    if (sim) r.columns.insert(r.columns.end(), {"sim_value", "sim_rate"});
    for (const auto& row : rows) r.add_row(row);
}

std::vector<Cell> sim_cells(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw,
                            const OptimizeResult& res, bool pe, const SimSettings& s) {
    const auto rep = simulate(SimConfig{src, ch, RsPolicy(res.pa0_star, res.pa1_star), cw, s.horizon, s.seed, s.burn_in});
    return {pe ? rep.pe_hat : rep.cost_hat, rep.sampling_rate};
}

// Optimal RS policy per source row at fixed channel; constrained or not.
Report cost_table(const RunSpec& spec, const std::string& id, ChannelParams ch, bool constrained) {
    const bool sim = spec.flag("simulate");
    const auto settings = sim_settings_from(spec);
    const auto rows = parallel_map(kCostRows.size(), [&](std::size_t i) {
        const SourceParams src(kCostRows[i].p, kCostRows[i].q);
        const auto res = constrained ? optimize_constrained(src, ch, kCostWeights, kCostEta)
                                     : optimize_unconstrained(src, ch, kCostWeights);
        const double rate = sampling_rate_rs(src, RsPolicy(res.pa0_star, res.pa1_star));
        std::vector<Cell> row = {src.p(), src.q(), res.pa0_star, res.pa1_star, res.value,
                                 std::string(to_string(res.case_taken)), rate,
                                 flag_cell(exceeds_budget(rate, kCostEta))};
        if (sim) {
            auto extra = sim_cells(src, ch, kCostWeights, res, false, settings);
            row.insert(row.end(), extra.begin(), extra.end());
        }
        return row;
    });
    Report r;
    r.title = id;
    r.columns = {"p", "q", "pa0_star", "pa1_star", "value", "case", "sampling_rate", "violates_budget"};
    add_sim_columns(r, rows, sim);
    r.provenance["eta"] = kCostEta;
    r.provenance["rate_sources"] = {{constrained ? "rsc" : "rs", "closed form (q pa0 + p pa1)/(p+q)"}};
    return r;
}

Report pe_table(const RunSpec& spec, const std::string& id, SourceParams src) {
    const ChannelParams ch(0.5, 0.6);
    const bool sim = spec.flag("simulate");
    const auto settings = sim_settings_from(spec);
    const auto rows = parallel_map(kEtaRows.size(), [&](std::size_t i) {
        const double eta = kEtaRows[i];
        const auto res = minimize_pe_constrained(src, ch, eta);
        const double rate = sampling_rate_rs(src, RsPolicy(res.pa0_star, res.pa1_star));
        std::vector<Cell> row = {eta, res.pa0_star, res.pa1_star, res.value, std::string(to_string(res.case_taken)),
                                 rate, flag_cell(exceeds_budget(rate, eta))};
        if (sim) {
            auto extra = sim_cells(src, ch, CostWeights(1.0, 1.0), res, true, settings);
            row.insert(row.end(), extra.begin(), extra.end());
        }
        return row;
    });
    Report r;
    r.title = id;
    r.columns = {"eta", "pa0_star", "pa1_star", "pe", "case", "sampling_rate", "violates_budget"};
    add_sim_columns(r, rows, sim);
    r.provenance["rate_sources"] = {{"rsc", "closed form (q pa0 + p pa1)/(p+q)"}};
    return r;
}

const std::vector<std::string> kPolicyOrder{"semantics-aware", "change-aware", "uniform", "rsc", "rs"};

std::vector<std::string> compare_columns(std::vector<std::string> lead) {
    for (const auto& name : kPolicyOrder) {
        lead.push_back(name);
        lead.push_back(name + "_rate");
        lead.push_back(name + "_violates");
    }
    return lead;
}

void append_outcomes(std::vector<Cell>& row, const std::vector<PolicyOutcome>& outcomes) {
    for (const auto& o : outcomes) {
        row.emplace_back(o.metric);
        row.emplace_back(o.rate);
        row.push_back(flag_cell(o.violates));
    }
}

nlohmann::json rate_sources(const std::vector<PolicyOutcome>& outcomes) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& o : outcomes) j[o.policy] = o.rate_source;
    return j;
}

Report compare_cost_table(const RunSpec& spec, const std::string& id, ChannelParams ch) {
    reject_simulate(spec, id);
    const auto settings = sim_settings_from(spec);
    const auto rows = parallel_map(kCostRows.size(), [&](std::size_t i) {
        const SourceParams src(kCostRows[i].p, kCostRows[i].q);
        return compare_policies(src, ch, kCostWeights, kCostEta, Objective::Cost, 5, settings);
    });
    Report r;
    r.title = id;
    r.columns = compare_columns({"p", "q"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Cell> row = {kCostRows[i].p, kCostRows[i].q};
        append_outcomes(row, rows[i]);
        r.add_row(std::move(row));
    }
    r.provenance["eta"] = kCostEta;
    r.provenance["uniform_period"] = 5;
    r.provenance["horizon"] = settings.horizon;
    r.provenance["rate_sources"] = rate_sources(rows.front());
    return r;
}

Report compare_pe_table(const RunSpec& spec, const std::string& id, SourceParams src) {
    reject_simulate(spec, id);
    const ChannelParams ch(0.5, 0.6);
    const auto settings = sim_settings_from(spec);
    const auto rows = parallel_map(kEtaRows.size(), [&](std::size_t i) {
        return compare_policies(src, ch, CostWeights(1.0, 1.0), kEtaRows[i], Objective::Pe, 5, settings);
    });
    Report r;
    r.title = id;
    r.columns = compare_columns({"eta"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Cell> row = {kEtaRows[i]};
        append_outcomes(row, rows[i]);
        r.add_row(std::move(row));
    }
    r.provenance["uniform_period"] = 5;
    r.provenance["horizon"] = settings.horizon;
    r.provenance["rate_sources"] = rate_sources(rows.front());
    return r;
}

const SourceParams kGridSource{0.5, 0.9};
const ChannelParams kGridChannel{0.4, 0.7};

std::string pa1_column(double pa1) { return "pa1=" + format_number(pa1); }

// Rows pa0, columns pa1.
Report wide_grid(const RunSpec& spec, const std::string& id, bool importance) {
    reject_simulate(spec, id);
    Report r;
    r.title = id;
    r.columns = {"pa0"};
    for (double pa1 : kPaGrid) r.columns.push_back(pa1_column(pa1));
    for (double pa0 : kPaGrid) {
        std::vector<Cell> row = {pa0};
        for (double pa1 : kPaGrid) {
            const auto s = ConsecErrorSpec::make(kGridSource, kGridChannel, RsPolicy(pa0, pa1));
            row.emplace_back(importance ? avg_importance_consec(s) : reconstruction_error_rate(s.stationary()));
        }
        r.add_row(std::move(row));
    }
    return r;
}

Report joint_grid(const RunSpec& spec, const std::string& id) {
    reject_simulate(spec, id);
    const double i1 = spec.real_or("i1", 0.1);
    const double i2 = spec.real_or("i2", 0.3);
    Report r;
    r.title = id;
    r.columns = {"pa0", "pa1", "cbar_s", "pe", "meets_i1", "meets_i2", "meets_both"};
    for (double pa0 : kPaGrid) {
        for (double pa1 : kPaGrid) {
            const auto s = ConsecErrorSpec::make(kGridSource, kGridChannel, RsPolicy(pa0, pa1));
            const double cs = avg_importance_consec(s);
            const double pe = reconstruction_error_rate(s.stationary());
            r.add_row({pa0, pa1, cs, pe, flag_cell(cs <= i1), flag_cell(pe <= i2), flag_cell(cs <= i1 && pe <= i2)});
        }
    }
    r.provenance["i1"] = i1;
    r.provenance["i2"] = i2;
    return r;
}

const std::map<std::string, Builder>& registry() {
    static const std::map<std::string, Builder> tables = {
        {"rsc-cost-ps02-03", [](const RunSpec& s) { return cost_table(s, "rsc-cost-ps02-03", {0.2, 0.3}, true); }},
        {"rsc-cost-ps06-06", [](const RunSpec& s) { return cost_table(s, "rsc-cost-ps06-06", {0.6, 0.6}, true); }},
        {"rs-cost-ps02-03", [](const RunSpec& s) { return cost_table(s, "rs-cost-ps02-03", {0.2, 0.3}, false); }},
        {"rs-cost-ps06-06", [](const RunSpec& s) { return cost_table(s, "rs-cost-ps06-06", {0.6, 0.6}, false); }},
        {"compare-cost-ps02-03",
         [](const RunSpec& s) { return compare_cost_table(s, "compare-cost-ps02-03", {0.2, 0.3}); }},
        {"compare-cost-ps06-06",
         [](const RunSpec& s) { return compare_cost_table(s, "compare-cost-ps06-06", {0.6, 0.6}); }},
        {"rsc-pe-p02-q04", [](const RunSpec& s) { return pe_table(s, "rsc-pe-p02-q04", {0.2, 0.4}); }},
        {"rsc-pe-p06-q07", [](const RunSpec& s) { return pe_table(s, "rsc-pe-p06-q07", {0.6, 0.7}); }},
        {"compare-pe-p02-q04", [](const RunSpec& s) { return compare_pe_table(s, "compare-pe-p02-q04", {0.2, 0.4}); }},
        {"compare-pe-p06-q07", [](const RunSpec& s) { return compare_pe_table(s, "compare-pe-p06-q07", {0.6, 0.7}); }},
        {"importance-ps04-07", [](const RunSpec& s) { return wide_grid(s, "importance-ps04-07", true); }},
        {"pe-grid-ps04-07", [](const RunSpec& s) { return wide_grid(s, "pe-grid-ps04-07", false); }},
        {"importance-pe-joint", [](const RunSpec& s) { return joint_grid(s, "importance-pe-joint"); }},
    };
    return tables;
}

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> a = {
        {"compare-cost-ps02", "compare-cost-ps02-03"},
        {"compare-cost-ps06", "compare-cost-ps06-06"},
        {"rsc-cost-ps02", "rsc-cost-ps02-03"},
        {"rsc-cost-ps06", "rsc-cost-ps06-06"},
        {"rs-cost-ps02", "rs-cost-ps02-03"},
        {"rs-cost-ps06", "rs-cost-ps06-06"},
    };
    return a;
}

}  // namespace

std::vector<std::string> table_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, _] : registry()) ids.push_back(id);
    return ids;
}

Report cmd_table(const RunSpec& spec) {
    if (!spec.has("table")) throw ValidationError("table", "required; one of the known table ids");
    std::string id = spec.text_or("table", "");
    if (const auto a = aliases().find(id); a != aliases().end()) id = a->second;
    const auto it = registry().find(id);
    if (it == registry().end()) {
        std::string known;
        for (const auto& k : table_ids()) known += (known.empty() ? "" : ", ") + k;
        throw ValidationError("table", "unknown table id '" + id + "'; known: " + known);
    }
    return it->second(spec);
}

}  // namespace semtrack::cli
