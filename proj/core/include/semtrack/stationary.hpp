#pragma once

#include <vector>

#include "semtrack/joint_chain.hpp"
#include "semtrack/params.hpp"

namespace semtrack {

// Normalizing aggregate of the RS stationary law:
// p e1 (1 - e0) + e0 (q + (1 - q) e1).
double phi(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol) noexcept;

// Closed-form stationary law under the RS policy. Throws DegenerateModelError
// when both effective update rates are zero.
JointStationary stationary_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol);

// Closed form for the change-aware policy. It has no policy parameters.
JointStationary stationary_change_aware(const SourceParams& src, const ChannelParams& ch);

// Closed form for the semantics-aware policy.
JointStationary stationary_semantics(const SourceParams& src, const ChannelParams& ch);

// Long-run fraction of slots with a sampling action.
double sampling_rate_rs(const SourceParams& src, const RsPolicy& pol) noexcept;
double sampling_rate_change_aware(const SourceParams& src) noexcept;
double sampling_rate_semantics(const SourceParams& src, const ChannelParams& ch);
double sampling_rate_uniform(const UniformPolicy& pol) noexcept;

// Three-state RS stationary law from the numeric solve of the 9-state chain.
JointStationary3 stationary_three_state(const SourceParams3& src, const ChannelParams& ch,
                                        const RsPolicy& pol);

// Published closed-form expressions for the three-state law, evaluated as
// printed. Used only as a cross-check against the numeric solve.
JointStationary3 stationary_three_state_closed_form(const SourceParams3& src, const ChannelParams& ch,
                                                    const RsPolicy& pol);

struct ThreeStateMismatch {
    int x;
    int xhat;
    double numeric;
    double closed_form;
};

struct ThreeStateDiscrepancy {
    JointStationary3 numeric;
    JointStationary3 closed_form;
    double max_abs_diff = 0.0;
    double closed_form_total = 0.0;
    bool closed_form_has_negative = false;
    std::vector<ThreeStateMismatch> mismatches;  // entries differing by more than the tolerance

    bool agrees() const noexcept { return mismatches.empty(); }
};

ThreeStateDiscrepancy compare_three_state(const SourceParams3& src, const ChannelParams& ch,
                                          const RsPolicy& pol, double tolerance = 1e-8);

}  // namespace semtrack
