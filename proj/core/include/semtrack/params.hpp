#pragma once

#include <array>
#include <cstdint>
#include <variant>

namespace semtrack {

// Two-state source: p = Pr[0 -> 1], q = Pr[1 -> 0], both strictly inside (0, 1).
class SourceParams {
public:
    SourceParams(double p, double q);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }

    // Marginal stationary law of the source alone.
    double marginal0() const noexcept { return q_ / (p_ + q_); }
    double marginal1() const noexcept { return p_ / (p_ + q_); }

    // Relabels states 0 <-> 1.
    SourceParams mirrored() const { return SourceParams(q_, p_); }

private:
    double p_;
    double q_;
};

// Three-state source. From 0: +1 or +2 with p each. From 1: to 0 with q, to 2
// with p. From 2: to 0 or 1 with q each.
class SourceParams3 {
public:
    SourceParams3(double p, double q);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }

    using Matrix = std::array<std::array<double, 3>, 3>;
    Matrix transition_matrix() const noexcept;

private:
    double p_;
    double q_;
};

// Per-state success probability of a transmitted sample. Each in (0, 1].
class ChannelParams {
public:
    ChannelParams(double ps0, double ps1);
    ChannelParams(double ps0, double ps1, double ps2);

    double ps0() const noexcept { return ps_[0]; }
    double ps1() const noexcept { return ps_[1]; }
    double ps2() const noexcept { return ps_[2]; }
    double ps(int state) const noexcept { return ps_[static_cast<std::size_t>(state)]; }
    bool has_third() const noexcept { return states_ == 3; }

    ChannelParams mirrored() const;

private:
    std::array<double, 3> ps_{};
    int states_;
};

// State-aware randomized stationary policy: sample and transmit in state i
// with probability pa_i. Each in [0, 1].
class RsPolicy {
public:
    RsPolicy(double pa0, double pa1);
    RsPolicy(double pa0, double pa1, double pa2);

    double pa0() const noexcept { return pa_[0]; }
    double pa1() const noexcept { return pa_[1]; }
    double pa2() const noexcept { return pa_[2]; }
    double pa(int state) const noexcept { return pa_[static_cast<std::size_t>(state)]; }
    bool has_third() const noexcept { return states_ == 3; }

    RsPolicy mirrored() const;

private:
    std::array<double, 3> pa_{};
    int states_;
};

// Periodic sampling at t = d, 2d, ...
struct UniformPolicy {
    explicit UniformPolicy(std::int64_t period);
    std::int64_t d;
};

// Samples exactly when the source changes state.
struct ChangeAwarePolicy {};

// Samples on a change while synced, and whenever the source differs from the
// receiver's estimate while in error.
struct SemanticsAwarePolicy {};

using PolicyKind = std::variant<RsPolicy, UniformPolicy, ChangeAwarePolicy, SemanticsAwarePolicy>;

// Penalty of acting on a wrong estimate: c01 for (X, Xhat) = (0, 1), c10 for (1, 0).
class CostWeights {
public:
    CostWeights(double c01, double c10);

    double c01() const noexcept { return c01_; }
    double c10() const noexcept { return c10_; }

    CostWeights mirrored() const { return CostWeights(c10_, c01_); }

private:
    double c01_;
    double c10_;
};

// Effective per-slot update probabilities e_i = pa_i * ps_i.
struct EffectiveRates {
    double e0;
    double e1;
};

inline EffectiveRates effective_rates(const ChannelParams& ch, const RsPolicy& pol) noexcept {
    return {pol.pa0() * ch.ps0(), pol.pa1() * ch.ps1()};
}

}  // namespace semtrack
