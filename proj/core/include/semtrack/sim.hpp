#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "semtrack/params.hpp"

namespace semtrack {

struct SimConfig {
    std::variant<SourceParams, SourceParams3> source;
    ChannelParams channel;
    PolicyKind policy;
    CostWeights costs{1.0, 1.0};
    std::uint64_t horizon = 10'000'000;
    std::uint64_t seed = 1;
    std::uint64_t burn_in = 10'000;

    // Throws ValidationError on an inconsistent configuration.
    void validate() const;
};

// Empirical counterparts of the analytic metrics over the measured window
// (slots burn_in + 1 .. horizon).
struct SimReport {
    std::uint64_t slots = 0;
    std::uint64_t samples = 0;
    double pe_hat = 0.0;
    double cost_hat = 0.0;
    double sampling_rate = 0.0;
    int states = 2;

    // Index = run length; value = number of maximal runs inside the window.
    std::vector<std::uint64_t> consec_hist;      // runs of X != Xhat
    std::vector<std::uint64_t> importance_hist;  // runs of (X, Xhat) = (1, 0)

    // Index = counter value; value = number of measured slots with it.
    std::vector<std::uint64_t> consec_slot_hist;
    std::vector<std::uint64_t> importance_slot_hist;

    // Slot counts per (X, Xhat), row-major over states x states.
    std::vector<std::uint64_t> joint_counts;

    double mean_consecutive_error() const noexcept;
    double mean_importance_consec() const noexcept;
    double joint_frequency(int x, int xhat) const noexcept;

    bool operator==(const SimReport&) const = default;
};

// What a policy may look at when deciding whether to sample in slot t.
struct SlotContext {
    std::uint64_t t = 1;     // slot index, starting at 1
    int x = 0;               // X(t)
    int x_prev = 0;          // X(t-1), valid when has_previous
    int xhat_prev = 0;       // Xhat(t-1)
    bool has_previous = false;
};

// `u` is a uniform draw in [0, 1) from the policy stream; only RS reads it.
bool decide_sample(const PolicyKind& policy, const SlotContext& ctx, double u);

// Runs the slot-by-slot simulation. Uses three mt19937_64 streams (source,
// policy, channel) seeded from (seed, stream index) via std::seed_seq, and
// draws one number per stream per slot so policies share source and channel
// randomness under a common seed.
SimReport simulate(const SimConfig& cfg);

// delta times the empirical sampling rate.
double empirical_sampling_cost(const SimReport& report, double delta);

}  // namespace semtrack
