// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/app.hpp"
#include "cli/report.hpp"
#include "oracles.hpp"
#include "semtrack/semtrack.hpp"

using namespace semtrack;
namespace st = semtrack::testing;

namespace {

constexpr double kTableTol = 1e-3;
constexpr double kUniformTol = 1e-2;
constexpr double kClosedFormTol = 1e-10;
constexpr double kIdentityTol = 1e-10;
constexpr double kContourTol = 2e-2;
constexpr double kSimAbsTol = 2e-3;
constexpr double kSeMultiple = 5.0;
constexpr double kRuntimeBudget1 = 30.0;
constexpr double kRuntimeBudget8 = 2.0;
constexpr std::uint64_t kSeedC1 = 0xC1;
constexpr std::uint64_t kSeedC8 = 0xC8;
constexpr std::uint64_t kSeedC9 = 0xC9;
constexpr std::uint64_t kSeedC11 = 0xCB;

class Check {
public:
    void near(const std::string& what, double got, double want, double tol) {
        ++count_;
        const double d = std::abs(got - want);
        worst_ = std::max(worst_, d);
        if (!(d <= tol)) fail(what + ": got " + fmt(got) + ", want " + fmt(want) + " +/- " + fmt(tol));
    }
    void that(const std::string& what, bool ok) {
        ++count_;
        if (!ok) fail(what);
    }
    void fail(std::string msg) { failures_.push_back(std::move(msg)); }
    bool ok() const { return failures_.empty(); }
    const std::vector<std::string>& failures() const { return failures_; }
    int count() const { return count_; }
    double worst() const { return worst_; }
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

private:
    std::vector<std::string> failures_;
    int count_ = 0;
    double worst_ = 0.0;
};

struct Verdict {
    Check check;
    std::string summary;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Triple {
    double pa0, pa1, value;
};

struct Row {
    double p, q;
};

constexpr std::array<Row, 5> kCostRows{{{0.1, 0.01}, {0.3, 0.1}, {0.5, 0.4}, {0.7, 0.8}, {0.9, 0.95}}};
constexpr std::array<double, 5> kEtas{0.1, 0.3, 0.5, 0.7, 0.9};
const CostWeights kCosts(1.0, 2.0);

void check_triples(Check& c, const std::string& tag, const OptimizeResult& r, const Triple& want) {
    c.near(tag + " pa0*", r.pa0_star, want.pa0, kTableTol);
    c.near(tag + " pa1*", r.pa1_star, want.pa1, kTableTol);
    c.near(tag + " value", r.value, want.value, kTableTol);
}

std::string row_tag(double p, double q) { return "p=" + Check::fmt(p) + " q=" + Check::fmt(q); }

// 1
Verdict closed_forms_vs_oracle() {
    Verdict v;
    st::ParamGen gen(kSeedC1);
    const auto t0 = std::chrono::steady_clock::now();
    double worst_rs = 0, worst_ca = 0, worst_sa = 0;
    constexpr int kTuples = 10'000;
    for (int k = 0; k < kTuples; ++k) {
        const SourceParams src(gen.uniform(1e-3, 1 - 1e-3), gen.uniform(1e-3, 1 - 1e-3));
        const ChannelParams ch(gen.uniform(1e-3, 1), gen.uniform(1e-3, 1));
        const RsPolicy pol(gen.uniform(1e-3, 1), gen.uniform(1e-3, 1));
        auto diff = [](const JointStationary& a, const JointStationary& b) {
            return std::max({std::abs(a.pi00() - b.pi00()), std::abs(a.pi01() - b.pi01()),
                             std::abs(a.pi10() - b.pi10()), std::abs(a.pi11() - b.pi11())});
        };
        worst_rs = std::max(worst_rs, diff(stationary_rs(src, ch, pol), stationary_numeric(build_joint_chain_rs(src, ch, pol))));
        worst_ca = std::max(worst_ca, diff(stationary_change_aware(src, ch),
                                           stationary_numeric(build_joint_chain_change_aware(src, ch))));
        worst_sa = std::max(worst_sa, diff(stationary_semantics(src, ch),
                                           stationary_numeric(build_joint_chain_semantics(src, ch))));
    }
    const double secs = seconds_since(t0);
    v.check.that("rs max diff " + Check::fmt(worst_rs), worst_rs <= kClosedFormTol);
    v.check.that("change-aware max diff " + Check::fmt(worst_ca), worst_ca <= kClosedFormTol);
    v.check.that("semantics-aware max diff " + Check::fmt(worst_sa), worst_sa <= kClosedFormTol);
    v.check.that("runtime " + Check::fmt(secs) + " s", secs < kRuntimeBudget1);
    v.summary = std::to_string(kTuples) + " tuples; max |diff| rs " + Check::fmt(worst_rs) + ", change-aware " +
                Check::fmt(worst_ca) + ", semantics-aware " + Check::fmt(worst_sa) + "; " + Check::fmt(secs) + " s";
    return v;
}

Verdict rsc_table(const ChannelParams& ch, const std::array<Triple, 5>& want) {
    Verdict v;
    for (std::size_t i = 0; i < kCostRows.size(); ++i) {
        const SourceParams src(kCostRows[i].p, kCostRows[i].q);
        check_triples(v.check, row_tag(src.p(), src.q()), optimize_constrained(src, ch, kCosts, 0.5), want[i]);
    }
    v.summary = "5 rows at eta=0.5, c=(1,2); worst deviation " + Check::fmt(v.check.worst());
    return v;
}

// 2
Verdict rsc_low_ps() {
    return rsc_table(ChannelParams(0.2, 0.3), {{{0.083, 0.542, 0.091}, {0, 0.667, 0.25}, {0, 0.9, 0.444}, {0, 1, 0.533},
                                                {0, 1, 0.513}}});
}

// 3
Verdict rsc_high_ps() {
    return rsc_table(ChannelParams(0.6, 0.6), {{{0.730, 0.477, 0.049}, {0.155, 0.615, 0.241}, {0.171, 0.763, 0.422},
                                                {0.200, 0.842, 0.501}, {0.127, 0.893, 0.503}}});
}

// 4
Verdict unconstrained_tables() {
    Verdict v;
    const ChannelParams low(0.2, 0.3);
    const std::array<double, 5> low_values{0.055, 0.25, 0.444, 0.533, 0.513};
    for (std::size_t i = 0; i < kCostRows.size(); ++i) {
        const SourceParams src(kCostRows[i].p, kCostRows[i].q);
        const auto r = optimize_unconstrained(src, low, kCosts);
        const double p = src.p(), q = src.q();
        const double threshold = (p * kCosts.c10() - q * kCosts.c01()) / (p * kCosts.c10() + (1 - q) * kCosts.c01());
        const bool corner = low.ps1() < threshold;
        const std::string tag = "ps=(0.2,0.3) " + row_tag(p, q);
        v.check.that(tag + " threshold side matches row", corner == (i != 0));
        if (corner) v.check.that(tag + " takes the low-ps1 corner branch", r.case_taken == OptimizeCase::Case1Remark3);
        check_triples(v.check, tag, r, {corner ? 0.0 : 1.0, 1.0, low_values[i]});
    }
    const ChannelParams high(0.6, 0.6);
    const std::array<double, 5> high_values{0.017, 0.118, 0.278, 0.373, 0.414};
    for (std::size_t i = 0; i < kCostRows.size(); ++i) {
        const SourceParams src(kCostRows[i].p, kCostRows[i].q);
        check_triples(v.check, "ps=(0.6,0.6) " + row_tag(src.p(), src.q()), optimize_unconstrained(src, high, kCosts),
                      {1, 1, high_values[i]});
    }
    v.summary = "10 rows; worst deviation " + Check::fmt(v.check.worst());
    return v;
}

// 5
Verdict pe_tables() {
    Verdict v;
    const ChannelParams ch(0.5, 0.6);
    const std::array<Triple, 5> a{{{0.15, 0, 0.333}, {0.394, 0.112, 0.325}, {0.556, 0.387, 0.277}, {0.722, 0.655, 0.224},
                                   {0.889, 0.922, 0.174}}};
    const std::array<Triple, 5> b{{{0.184, 0.002, 0.461}, {0.374, 0.214, 0.430}, {0.565, 0.424, 0.386},
                                   {0.757, 0.633, 0.338}, {0.949, 0.842, 0.287}}};
    for (std::size_t i = 0; i < kEtas.size(); ++i) {
        check_triples(v.check, "p=0.2 q=0.4 eta=" + Check::fmt(kEtas[i]),
                      minimize_pe_constrained(SourceParams(0.2, 0.4), ch, kEtas[i]), a[i]);
        check_triples(v.check, "p=0.6 q=0.7 eta=" + Check::fmt(kEtas[i]),
                      minimize_pe_constrained(SourceParams(0.6, 0.7), ch, kEtas[i]), b[i]);
    }
    v.summary = "10 rows; worst deviation " + Check::fmt(v.check.worst());
    return v;
}

SimReport run_sim(const SourceParams& src, const ChannelParams& ch, PolicyKind pol, const CostWeights& cw,
                  std::uint64_t horizon, std::uint64_t seed) {
    return simulate(SimConfig{src, ch, std::move(pol), cw, horizon, seed, 10'000});
}

// 6
Verdict comparison_tables() {
    Verdict v;
    constexpr std::uint64_t kSlots = 10'000'000;
    struct CostTable {
        ChannelParams ch;
        std::array<double, 5> semantics, change, uniform;
    };
    const std::array<CostTable, 2> tables{{
        {ChannelParams(0.2, 0.3), {0.055, 0.267, 0.489, 0.571, 0.587}, {0.628, 0.613, 0.596, 0.588, 0.589},
         {0.131, 0.417, 0.638, 0.683, 0.677}},
        {ChannelParams(0.6, 0.6), {0.017, 0.118, 0.278, 0.373, 0.414}, {0.545, 0.5, 0.444, 0.419, 0.424},
         {0.092, 0.404, 0.640, 0.686, 0.690}},
    }};
    double worst_uniform = 0.0;
    for (const auto& t : tables) {
        for (std::size_t i = 0; i < kCostRows.size(); ++i) {
            const SourceParams src(kCostRows[i].p, kCostRows[i].q);
            const std::string tag = "ps=(" + Check::fmt(t.ch.ps0()) + "," + Check::fmt(t.ch.ps1()) + ") " + row_tag(src.p(), src.q());
            v.check.near(tag + " semantics-aware", actuation_error_cost(stationary_semantics(src, t.ch), kCosts),
                         t.semantics[i], kTableTol);
            v.check.near(tag + " change-aware", actuation_error_cost(stationary_change_aware(src, t.ch), kCosts),
                         t.change[i], kTableTol);
            const double u = run_sim(src, t.ch, UniformPolicy(5), kCosts, kSlots, 600 + i).cost_hat;
            worst_uniform = std::max(worst_uniform, std::abs(u - t.uniform[i]));
            v.check.near(tag + " uniform (simulated)", u, t.uniform[i], kUniformTol);
        }
    }
    struct PeTable {
        SourceParams src;
        double semantics, change, uniform;
    };
    const ChannelParams ch(0.5, 0.6);
    for (const auto& t : {PeTable{SourceParams(0.2, 0.4), 0.151, 0.333, 0.374},
                          PeTable{SourceParams(0.6, 0.7), 0.260, 0.317, 0.459}}) {
        const std::string tag = row_tag(t.src.p(), t.src.q());
        v.check.near(tag + " semantics-aware P_E", reconstruction_error_rate(stationary_semantics(t.src, ch)), t.semantics,
                     kTableTol);
        v.check.near(tag + " change-aware P_E", reconstruction_error_rate(stationary_change_aware(t.src, ch)), t.change,
                     kTableTol);
        const double u = run_sim(t.src, ch, UniformPolicy(5), CostWeights(1, 1), kSlots, 700).pe_hat;
        worst_uniform = std::max(worst_uniform, std::abs(u - t.uniform));
        v.check.near(tag + " uniform P_E (simulated)", u, t.uniform, kUniformTol);
    }
    v.summary = std::to_string(v.check.count()) + " cells; uniform by simulation (d=5, 1e7 slots), worst uniform deviation " +
                Check::fmt(worst_uniform);
    return v;
}

// 7
Verdict importance_tables() {
    Verdict v;
    const SourceParams src(0.5, 0.9);
    const ChannelParams ch(0.4, 0.7);
    constexpr std::array<double, 6> grid{0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    constexpr double importance[6][6] = {{0.189, 0.079, 0.043, 0.025, 0.014, 0.010},
                                         {0.283, 0.163, 0.101, 0.063, 0.037, 0.028},
                                         {0.315, 0.205, 0.136, 0.089, 0.055, 0.042},
                                         {0.330, 0.231, 0.161, 0.109, 0.069, 0.053},
                                         {0.340, 0.248, 0.179, 0.124, 0.081, 0.062},
                                         {0.343, 0.256, 0.186, 0.131, 0.086, 0.066}};
    constexpr double pe[6][6] = {{0.480, 0.545, 0.566, 0.577, 0.584, 0.586},
                                 {0.398, 0.443, 0.466, 0.480, 0.490, 0.494},
                                 {0.371, 0.391, 0.403, 0.411, 0.418, 0.420},
                                 {0.358, 0.358, 0.359, 0.360, 0.361, 0.362},
                                 {0.349, 0.337, 0.328, 0.321, 0.314, 0.312},
                                 {0.346, 0.329, 0.315, 0.304, 0.294, 0.291}};
    double cs[6][6];
    double pes[6][6];
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            const auto s = ConsecErrorSpec::make(src, ch, RsPolicy(grid[i], grid[j]));
            cs[i][j] = avg_importance_consec(s);
            pes[i][j] = reconstruction_error_rate(s.stationary());
            const std::string cell = "(" + Check::fmt(grid[i]) + "," + Check::fmt(grid[j]) + ")";
            v.check.near("importance " + cell, cs[i][j], importance[i][j], kTableTol);
            v.check.near("P_E " + cell, pes[i][j], pe[i][j], kTableTol);
        }
    auto scan = [&](double i1, double i2) {
        std::vector<std::pair<double, double>> hits;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                if (cs[i][j] <= i1 && pes[i][j] <= i2) hits.emplace_back(grid[i], grid[j]);
        return hits;
    };
    const std::vector<std::pair<double, double>> want{{1.0, 0.9}, {1.0, 1.0}};
    v.check.that("I1=0.1, I2=0.3 satisfied exactly at pa0=1, pa1 in {0.9, 1}", scan(0.1, 0.3) == want);
    v.check.that("I1=0.1, I2=0.2 infeasible", scan(0.1, 0.2).empty());
    v.check.that("I1=0.1 alone reachable at (0.1, 1)", cs[0][5] <= 0.1);
    v.summary = "72 cells + threshold scan; worst cell deviation " + Check::fmt(v.check.worst());
    return v;
}

// 8
Verdict simulation_convergence() {
    Verdict v;
    st::ParamGen gen(kSeedC8);
    double worst_ratio = 0.0;
    double worst_abs = 0.0;
    double slowest = 0.0;
    std::ostringstream diag;
    for (int k = 0; k < 20; ++k) {
        const SourceParams src(gen.uniform(0.05, 0.95), gen.uniform(0.05, 0.95));
        const ChannelParams ch(gen.uniform(0.2, 1.0), gen.uniform(0.2, 1.0));
        const RsPolicy pol(gen.uniform(0.1, 1.0), gen.uniform(0.1, 1.0));
        const auto law = stationary_rs(src, ch, pol);
        const double pe = reconstruction_error_rate(law);
        const double cost = actuation_error_cost(law, kCosts);
        const std::string tag = "config " + std::to_string(k) + " (" + row_tag(src.p(), src.q()) + ")";

        const auto r6 = run_sim(src, ch, pol, kCosts, 1'000'000, 8000 + static_cast<std::uint64_t>(k));
        const double n6 = static_cast<double>(r6.slots);
        const double se_pe = st::binomial_se(pe, n6);
        const double second = kCosts.c01() * kCosts.c01() * law.pi01() + kCosts.c10() * kCosts.c10() * law.pi10();
        const double se_cost = std::sqrt(std::max(0.0, second - cost * cost) / n6);
        v.check.near(tag + " pe_hat at 1e6", r6.pe_hat, pe, kSeMultiple * se_pe);
        v.check.near(tag + " cost_hat at 1e6", r6.cost_hat, cost, kSeMultiple * se_cost);
        worst_ratio = std::max({worst_ratio, std::abs(r6.pe_hat - pe) / se_pe, std::abs(r6.cost_hat - cost) / se_cost});

        const auto chain = st::enumerate_joint_chain(st::two_state_source(src.p(), src.q()), {ch.ps0(), ch.ps1()},
                                                     st::rs_rule({pol.pa0(), pol.pa1()}));
        const double clt_se = std::sqrt(static_cast<double>(st::markov_clt_variance(chain, {0, 1, 1, 0})) / n6);
        diag << "    config " << k << ": |pe_hat-P_E|/binomial SE = " << Check::fmt(std::abs(r6.pe_hat - pe) / se_pe)
             << ", /Markov SE = " << Check::fmt(std::abs(r6.pe_hat - pe) / clt_se) << '\n';

        const auto t0 = std::chrono::steady_clock::now();
        const auto r7 = run_sim(src, ch, pol, kCosts, 10'000'000, 9000 + static_cast<std::uint64_t>(k));
        slowest = std::max(slowest, seconds_since(t0));
        v.check.near(tag + " pe_hat at 1e7", r7.pe_hat, pe, kSimAbsTol);
        v.check.near(tag + " cost_hat at 1e7", r7.cost_hat, cost, kSimAbsTol);
        worst_abs = std::max({worst_abs, std::abs(r7.pe_hat - pe), std::abs(r7.cost_hat - cost)});
    }
    v.check.that("slowest 1e7-slot run " + Check::fmt(slowest) + " s", slowest < kRuntimeBudget8);
    v.summary = "20 configs; worst |err|/SE at 1e6 = " + Check::fmt(worst_ratio) + ", worst |err| at 1e7 = " +
                Check::fmt(worst_abs) + ", slowest 1e7 run " + Check::fmt(slowest) + " s\n" + diag.str();
    if (!v.summary.empty() && v.summary.back() == '\n') v.summary.pop_back();
    return v;
}

// 9
Verdict metric_identities() {
    Verdict v;
    st::ParamGen gen(kSeedC9);
    for (int k = 0; k < 10'000; ++k) {
        const auto s = ConsecErrorSpec::make(gen.source(), gen.channel(0.01), gen.policy(0.0));
        if (violation_probability(s, 0) != reconstruction_error_rate(s.stationary())) {
            v.check.fail("violation(0) != P_E at tuple " + std::to_string(k));
            break;
        }
    }
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto s = ConsecErrorSpec::make(gen.source(0.05, 0.95), gen.channel(0.1), gen.policy(0.05));
        const auto total = st::truncated_sum([&](std::uint64_t i) -> long double { return consec_error_pmf(s, i); });
        const auto imp_total = st::truncated_sum([&](std::uint64_t i) -> long double { return importance_pmf(s, i); });
        const auto mean = st::truncated_sum([&](std::uint64_t i) -> long double { return i * static_cast<long double>(consec_error_pmf(s, i)); });
        const auto imp_mean = st::truncated_sum([&](std::uint64_t i) -> long double { return i * static_cast<long double>(importance_pmf(s, i)); });
        for (double d : {std::abs(static_cast<double>(total) - 1.0), std::abs(static_cast<double>(imp_total) - 1.0),
                         std::abs(static_cast<double>(mean) - avg_consecutive_error(s)),
                         std::abs(static_cast<double>(imp_mean) - avg_importance_consec(s))})
            worst = std::max(worst, d);
    }
    v.check.that("PMF normalization and mean identities within 1e-10 (worst " + Check::fmt(worst) + ")",
                 worst <= kIdentityTol);

    int eta_breaks = 0, sym_breaks = 0, grid_breaks = 0;
    double worst_gap = -INFINITY;
    for (int k = 0; k < 500; ++k) {
        const auto src = gen.source(0.05, 0.95);
        const auto ch = gen.channel(0.1);
        const auto cw = gen.costs();
        const double eta = gen.uniform(0.05, 1.2);
        const auto r = optimize_constrained(src, ch, cw, eta);
        const auto m = optimize_constrained(src.mirrored(), ch.mirrored(), cw.mirrored(), eta);
        if (std::abs(r.value - m.value) > 1e-10 || std::abs(r.pa0_star - m.pa1_star) > 1e-10 ||
            std::abs(r.pa1_star - m.pa0_star) > 1e-10)
            ++sym_breaks;
        if (k < 100) {
            double prev = INFINITY;
            for (double e = 0.05; e <= 1.5; e += 0.05) {
                const double val = optimize_constrained(src, ch, cw, e).value;
                if (val > prev + 1e-12) ++eta_breaks;
                prev = val;
            }
        }
        const auto g = grid_oracle(src, ch, cw, eta, 0.002);
        worst_gap = std::max(worst_gap, r.value - g.value);
        if (r.value > g.value + 1e-6) ++grid_breaks;
    }
    v.check.that("case symmetry on 500 tuples (" + std::to_string(sym_breaks) + " breaks)", sym_breaks == 0);
    v.check.that("eta-monotonicity on 100 tuples x 30 budgets (" + std::to_string(eta_breaks) + " breaks)", eta_breaks == 0);
    v.check.that("grid dominance at step 0.002 on 500 tuples (" + std::to_string(grid_breaks) + " breaks)", grid_breaks == 0);
    v.summary = "identity worst " + Check::fmt(worst) + "; optimizer minus grid worst " + Check::fmt(worst_gap);
    return v;
}

// Runs the sweep subcommand and returns (pa0, pa1, value) rows with defined values.
std::vector<std::array<double, 3>> sweep(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"semtrack", "sweep"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    if (cli::run(static_cast<int>(argv.size()), argv.data(), out, err) != 0) throw std::runtime_error(err.str());
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    std::vector<std::array<double, 3>> rows;
    while (std::getline(in, line)) {
        const auto cells = cli::parse_csv_line(line);
        if (cells.size() != 3 || cells[2].empty()) continue;
        rows.push_back({std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2])});
    }
    return rows;
}

// 10
Verdict contour_spot_checks() {
    Verdict v;
    const auto low = sweep({"--p", "0.3", "--q", "0.2", "--ps0", "0.2", "--ps1", "0.3", "--grid-step", "0.01"});
    const auto best = *std::min_element(low.begin(), low.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });
    v.check.near("low-ps minimum value", best[2], 0.65, kContourTol);
    v.check.that("low-ps minimum at (1,1), got (" + Check::fmt(best[0]) + "," + Check::fmt(best[1]) + ")",
                 best[0] == 1.0 && best[1] == 1.0);
    for (const auto& r : low) v.check.that("finite nonnegative value", std::isfinite(r[2]) && r[2] >= 0.0);
    const auto high = sweep({"--p", "0.3", "--q", "0.2", "--ps0", "0.7", "--ps1", "0.8", "--grid-step", "0.1"});
    double at = NAN;
    for (const auto& r : high)
        if (std::abs(r[0] - 0.2) < 1e-12 && r[1] == 1.0) at = r[2];
    v.check.near("high-ps value at (0.2,1) vs low-ps value at (1,1)", at, best[2], kContourTol);
    v.summary = "low-ps min " + Check::fmt(best[2]) + " at (" + Check::fmt(best[0]) + "," + Check::fmt(best[1]) +
                "); high-ps at (0.2,1) " + Check::fmt(at);
    return v;
}

// 11
Verdict three_state() {
    Verdict v;
    st::ParamGen gen(kSeedC11);
    double worst_total = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double p = gen.uniform(0.01, 0.45);
        const double q = gen.uniform(0.01, std::min(0.45, 0.99 - p));
        const auto law = stationary_three_state(SourceParams3(p, q),
                                                ChannelParams(gen.uniform(0.1, 1), gen.uniform(0.1, 1), gen.uniform(0.1, 1)),
                                                RsPolicy(gen.uniform(0.05, 1), gen.uniform(0.05, 1), gen.uniform(0.05, 1)));
        worst_total = std::max(worst_total, std::abs(law.total() - 1.0));
    }
    v.check.that("normalization within 1e-12 (worst " + Check::fmt(worst_total) + ")", worst_total <= 1e-12);

    const SourceParams3 src(0.2, 0.3);
    const auto perfect = stationary_three_state(src, ChannelParams(1, 1, 1), RsPolicy(1, 1, 1));
    const auto marginal = st::solve_stationary(st::three_state_source(0.2, 0.3));
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t xh = 0; xh < 3; ++xh)
            v.check.near("perfect sampling pi" + std::to_string(x) + std::to_string(xh), perfect(x, xh),
                         x == xh ? static_cast<double>(marginal[x]) : 0.0, 1e-12);

    const auto cmp = compare_three_state(SourceParams3(0.2, 0.25), ChannelParams(0.8, 0.8, 0.8), RsPolicy(0.5, 0.5, 0.5));
    std::ostringstream report;
    report << "closed-form comparison at p=0.2 q=0.25 pa=0.5 ps=0.8: " << cmp.mismatches.size()
           << " of 9 entries differ by > 1e-8, max |diff| " << Check::fmt(cmp.max_abs_diff) << ", closed-form total "
           << Check::fmt(cmp.closed_form_total) << (cmp.closed_form_has_negative ? ", has negative entries" : "");
    for (const auto& m : cmp.mismatches)
        report << "\n    pi" << m.x << m.xhat << ": numeric " << Check::fmt(m.numeric) << ", closed form "
               << Check::fmt(m.closed_form);
    v.summary = report.str();
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"closed forms match numeric stationary solves", closed_forms_vs_oracle},
        {"RSC cost table, ps=(0.2,0.3)", rsc_low_ps},
        {"RSC cost table, ps=(0.6,0.6)", rsc_high_ps},
        {"unconstrained RS cost tables", unconstrained_tables},
        {"reconstruction-error eta tables", pe_tables},
        {"comparison tables", comparison_tables},
        {"importance-aware and P_E grids", importance_tables},
        {"simulation convergence", simulation_convergence},
        {"metric identities and optimizer properties", metric_identities},
        {"contour spot checks", contour_spot_checks},
        {"three-state stationary law", three_state},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.check.fail(std::string("exception: ") + e.what());
        }
        const bool ok = v.check.ok();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " | "
                  << v.summary << '\n';
        for (const auto& f : v.check.failures()) std::cout << "    failed: " << f << '\n';
        std::cout.flush();
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
