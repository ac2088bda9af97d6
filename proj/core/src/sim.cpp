#include "semtrack/sim.hpp"

#include <array>
#include <random>

#include "semtrack/error.hpp"

namespace semtrack {
namespace {

enum Stream : std::uint32_t { kSourceStream = 0, kPolicyStream = 1, kChannelStream = 2 };

std::mt19937_64 make_stream(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

// 53 high bits mapped to [0, 1).
inline double unit(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

template <class Policy>
bool sample_now(const Policy& pol, const SlotContext& c, double u);

template <>
inline bool sample_now(const RsPolicy& pol, const SlotContext& c, double u) {
    return u < pol.pa(c.x);
}

template <>
inline bool sample_now(const UniformPolicy& pol, const SlotContext& c, double) {
    return c.t % static_cast<std::uint64_t>(pol.d) == 0;
}

template <>
inline bool sample_now(const ChangeAwarePolicy&, const SlotContext& c, double) {
    return c.has_previous && c.x != c.x_prev;
}

template <>
inline bool sample_now(const SemanticsAwarePolicy&, const SlotContext& c, double) {
    if (!c.has_previous) return false;
    const bool synced = c.x_prev == c.xhat_prev;
    return synced ? c.x != c.x_prev : c.x != c.xhat_prev;
}

inline void bump(std::vector<std::uint64_t>& h, std::uint64_t index) {
    if (index >= h.size()) h.resize(index + 1, 0);
    ++h[index];
}

template <std::size_t N, class Policy>
SimReport run(const std::array<std::array<double, N>, N>& source, const std::array<double, N>& ps,
              const Policy& pol, const SimConfig& cfg) {
    auto src_rng = make_stream(cfg.seed, kSourceStream);
    auto pol_rng = make_stream(cfg.seed, kPolicyStream);
    auto ch_rng = make_stream(cfg.seed, kChannelStream);

    // Cumulative rows for inverse-CDF stepping.
    std::array<std::array<double, N>, N> cdf{};
    for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            acc += source[i][j];
            cdf[i][j] = acc;
        }
        cdf[i][N - 1] = 1.0;
    }

    SimReport rep;
    rep.states = static_cast<int>(N);
    rep.joint_counts.assign(N * N, 0);
    const double c01 = cfg.costs.c01();
    const double c10 = cfg.costs.c10();

    int x = 0;
    int xh = 0;
    std::uint64_t ce = 0;  // C_E(t)
    std::uint64_t cs = 0;  // C_S(t)
    std::uint64_t err_run = 0;
    std::uint64_t imp_run = 0;
    std::uint64_t errors = 0;
    std::uint64_t n01 = 0;
    std::uint64_t n10 = 0;

    SlotContext ctx;
    for (std::uint64_t t = 1; t <= cfg.horizon; ++t) {
        const int x_prev = x;
        const int xh_prev = xh;
        if (t > 1) {
            const double u = unit(src_rng);
            const auto& row = cdf[static_cast<std::size_t>(x)];
            int nx = 0;
            while (u >= row[static_cast<std::size_t>(nx)]) ++nx;
            x = nx;
        }
        ctx.t = t;
        ctx.x = x;
        ctx.x_prev = x_prev;
        ctx.xhat_prev = xh_prev;
        ctx.has_previous = t > 1;

        const double u_pol = unit(pol_rng);
        const double u_ch = unit(ch_rng);
        const bool sampled = sample_now(pol, ctx, u_pol);
        if (sampled && u_ch < ps[static_cast<std::size_t>(x)]) xh = x;

        const bool err = x != xh;
        const bool imp = x == 1 && xh == 0;
        ce = err ? ce + 1 : 0;
        cs = imp ? cs + 1 : 0;

        if (t <= cfg.burn_in) continue;

        if (sampled) ++rep.samples;
        ++rep.joint_counts[static_cast<std::size_t>(x) * N + static_cast<std::size_t>(xh)];
        bump(rep.consec_slot_hist, ce);
        bump(rep.importance_slot_hist, cs);
        if (err) {
            ++errors;
            ++err_run;
            if (x == 0 && xh == 1) ++n01;
            if (imp) ++n10;
        } else if (err_run > 0) {
            bump(rep.consec_hist, err_run);
            err_run = 0;
        }
        if (imp) {
            ++imp_run;
        } else if (imp_run > 0) {
            bump(rep.importance_hist, imp_run);
            imp_run = 0;
        }
    }
    if (err_run > 0) bump(rep.consec_hist, err_run);
    if (imp_run > 0) bump(rep.importance_hist, imp_run);

    rep.slots = cfg.horizon - cfg.burn_in;
    const double n = static_cast<double>(rep.slots);
    rep.pe_hat = static_cast<double>(errors) / n;
    rep.cost_hat = (c01 * static_cast<double>(n01) + c10 * static_cast<double>(n10)) / n;
    rep.sampling_rate = static_cast<double>(rep.samples) / n;
    return rep;
}

template <std::size_t N>
SimReport dispatch(const std::array<std::array<double, N>, N>& source, const std::array<double, N>& ps,
                   const SimConfig& cfg) {
    return std::visit([&](const auto& pol) { return run<N>(source, ps, pol, cfg); }, cfg.policy);
}

}  // namespace

void SimConfig::validate() const {
    if (horizon < 1) throw ValidationError("horizon", "must be at least 1");
    if (burn_in >= horizon) throw ValidationError("burn_in", "must be smaller than the horizon");
    const bool three = std::holds_alternative<SourceParams3>(source);
    if (three && !channel.has_third()) throw ValidationError("ps2", "three-state source needs ps2");
    if (const auto* rs = std::get_if<RsPolicy>(&policy); rs && three && !rs->has_third())
        throw ValidationError("pa2", "three-state source needs pa2");
}

bool decide_sample(const PolicyKind& policy, const SlotContext& ctx, double u) {
    return std::visit([&](const auto& pol) { return sample_now(pol, ctx, u); }, policy);
}

SimReport simulate(const SimConfig& cfg) {
    cfg.validate();
    if (const auto* s3 = std::get_if<SourceParams3>(&cfg.source)) {
        return dispatch<3>(s3->transition_matrix(), {cfg.channel.ps0(), cfg.channel.ps1(), cfg.channel.ps2()}, cfg);
    }
    const auto& s = std::get<SourceParams>(cfg.source);
    const std::array<std::array<double, 2>, 2> m{{{1.0 - s.p(), s.p()}, {s.q(), 1.0 - s.q()}}};
    return dispatch<2>(m, {cfg.channel.ps0(), cfg.channel.ps1()}, cfg);
}

double empirical_sampling_cost(const SimReport& report, double delta) {
    if (!(delta >= 0.0)) throw ValidationError("delta", "sampling cost per action must be nonnegative");
    return delta * report.sampling_rate;
}

double SimReport::mean_consecutive_error() const noexcept {
    if (slots == 0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 1; i < consec_slot_hist.size(); ++i) s += static_cast<double>(i) * static_cast<double>(consec_slot_hist[i]);
    return s / static_cast<double>(slots);
}

double SimReport::mean_importance_consec() const noexcept {
    if (slots == 0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 1; i < importance_slot_hist.size(); ++i)
        s += static_cast<double>(i) * static_cast<double>(importance_slot_hist[i]);
    return s / static_cast<double>(slots);
}

double SimReport::joint_frequency(int x, int xhat) const noexcept {
    if (slots == 0) return 0.0;
    const auto n = static_cast<std::size_t>(states);
    return static_cast<double>(joint_counts[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(xhat)]) /
           static_cast<double>(slots);
}

}  // namespace semtrack
