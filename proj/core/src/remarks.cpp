#include "semtrack/remarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semtrack/error.hpp"

namespace semtrack {

Remark1Thresholds::Remark1Thresholds(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw)
    : p_(src.p()), q_(src.q()), ps0_(ch.ps0()), ps1_(ch.ps1()), c01_(cw.c01()), c10_(cw.c10()) {
    const double num = p_ * c10_ + c10_ * ps0_ - p_ * c10_ * ps0_ - q_ * c01_ * (1.0 - ps0_);
    const double den = c10_ * (1.0 - p_) * ps0_ + p_ * c10_ * ps1_ + c01_ * (1.0 - q_) * ps1_ + q_ * c01_ * ps0_;
    if (den == 0.0) throw DomainError("threshold T1 has a zero denominator");
    t1_ = num / den;
}

double Remark1Thresholds::t2(double pa1) const {
    const double num = pa1 * (c01_ * (q_ + (1.0 - q_) * ps1_) - p_ * c10_ * (1.0 - ps1_));
    const double den = pa1 * (c10_ * ps0_ * (1.0 - p_) + p_ * c10_ * ps1_ + c01_ * ps1_ * (1.0 - q_) + q_ * c01_ * ps0_) -
                       p_ * c10_ - c10_ * ps0_ + p_ * c10_ * ps0_ + q_ * c01_ * (1.0 - ps0_);
    if (den == 0.0) throw DomainError("threshold T2 has a zero denominator at this pa1");
    return num / den;
}

bool Remark1Thresholds::rs_beats_semantics(double pa0, double pa1) const {
    // Slack absorbs rounding in the thresholds; a boundary point is a tie.
    constexpr double eps = 1e-12;
    if (pa1 >= std::max(0.0, t1_) - eps && pa1 <= 1.0) {
        const double t = t2(pa1);
        if (pa0 >= std::max(0.0, t) - eps && pa0 <= 1.0) return true;
    }
    if (pa1 >= 0.0 && pa1 <= std::min(0.0, t1_) + eps) {
        const double t = t2(pa1);
        if (pa0 >= 0.0 && pa0 <= std::min(0.0, t) + eps) return true;
    }
    return false;
}

Remark1Thresholds remark1_thresholds(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw) {
    return Remark1Thresholds(src, ch, cw);
}

namespace {

// `rate` is p or q; `pa_bounded` is the sampling probability the bound applies to.
MonotoneCondition monotone(double rate, double bound, bool bound_ok, double threshold, bool threshold_ok,
                           double pa_bounded) {
    MonotoneCondition c;
    c.pa_lower_bound = bound;
    c.bound_feasible = bound_ok && bound >= 0.0 && bound <= 1.0;
    c.rate_threshold = threshold;
    c.threshold_feasible = threshold_ok && threshold >= 0.0 && threshold < 1.0;
    c.holds = c.bound_feasible && c.threshold_feasible && pa_bounded >= bound && pa_bounded <= 1.0 && rate > threshold;
    return c;
}

}  // namespace

Remark2Report remark2_monotone_regions(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol) {
    const double p = src.p();
    const double q = src.q();
    const double e0 = pol.pa0() * ch.ps0();
    const double e1 = pol.pa1() * ch.ps1();
    constexpr double inf = std::numeric_limits<double>::infinity();

    Remark2Report r;
    {
        const double den = ch.ps1() * (1.0 - e0 * (1.0 + q * (1.0 - q)));
        const bool bound_ok = den > 0.0;
        const double bound = bound_ok ? q * q * e0 / den : inf;
        const double tden = e1 * (1.0 - e0);
        const bool thr_ok = tden > 0.0;
        const double thr = thr_ok ? std::sqrt(q * e0 * (q + (1.0 - q) * e1) / tden) : inf;
        r.in_p = monotone(p, bound, bound_ok, thr, thr_ok, pol.pa1());
    }
    {
        const double den = ch.ps0() * (1.0 - e1 * (1.0 + p * (1.0 - p)));
        const bool bound_ok = den > 0.0;
        const double bound = bound_ok ? p * p * e1 / den : inf;
        const double tden = e0 * (1.0 - e1);
        const bool thr_ok = tden > 0.0;
        const double thr = thr_ok ? std::sqrt((p * e0 * e1 + p * p * e1 * (1.0 - e0)) / tden) : inf;
        r.in_q = monotone(q, bound, bound_ok, thr, thr_ok, pol.pa0());
    }
    return r;
}

}  // namespace semtrack
