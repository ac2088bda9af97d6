#pragma once

#include "semtrack/params.hpp"

namespace semtrack {

// Region of (pa0, pa1) where the RS policy has a cost no larger than the
// semantics-aware policy.
class Remark1Thresholds {
public:
    Remark1Thresholds(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw);

    double t1() const noexcept { return t1_; }

    // Threshold on pa0 for a given pa1. Throws DomainError when its
    // denominator vanishes.
    double t2(double pa1) const;

    // max{0,T1} <= pa1 <= 1 and max{0,T2} <= pa0 <= 1, or
    // 0 <= pa1 <= min{0,T1} and 0 <= pa0 <= min{0,T2}.
    bool rs_beats_semantics(double pa0, double pa1) const;

private:
    double p_, q_, ps0_, ps1_, c01_, c10_;
    double t1_;
};

Remark1Thresholds remark1_thresholds(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw);

// Sufficient conditions for P_E and the cost to decrease in p (resp. q).
struct MonotoneCondition {
    double pa_lower_bound = 0.0;   // lower bound on pa1 (for p) or pa0 (for q)
    bool bound_feasible = false;    // bound is finite and lies in [0, 1]
    double rate_threshold = 0.0;    // p (or q) must exceed this
    bool threshold_feasible = false;  // threshold is finite and lies in [0, 1)
    bool holds = false;             // both parts satisfied at the given point
};

struct Remark2Report {
    MonotoneCondition in_p;
    MonotoneCondition in_q;
};

Remark2Report remark2_monotone_regions(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol);

}  // namespace semtrack
