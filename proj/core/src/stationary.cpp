#include "semtrack/stationary.hpp"

#include "semtrack/error.hpp"

namespace semtrack {

double phi(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol) noexcept {
    const auto [e0, e1] = effective_rates(ch, pol);
    return src.p() * e1 * (1.0 - e0) + e0 * (src.q() + (1.0 - src.q()) * e1);
}

JointStationary stationary_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol) {
    const double p = src.p();
    const double q = src.q();
    const auto [e0, e1] = effective_rates(ch, pol);
    const double f = phi(src, ch, pol);
    if (!(f > 0.0))
        throw DegenerateModelError("RS policy never updates the receiver (pa0*ps0 = pa1*ps1 = 0)");
    const double den = (p + q) * f;
    return {q * e0 * (q + (1.0 - q) * e1) / den,
            p * q * e1 * (1.0 - e0) / den,
            p * q * e0 * (1.0 - e1) / den,
            p * e1 * (p + (1.0 - p) * e0) / den};
}

JointStationary stationary_change_aware(const SourceParams& src, const ChannelParams& ch) {
    const double p = src.p();
    const double q = src.q();
    const double s0 = ch.ps0();
    const double s1 = ch.ps1();
    const double den = (p + q) * (s0 + s1 - s0 * s1);
    if (!(den > 0.0)) throw DegenerateModelError("change-aware policy with ps0 = ps1 = 0");
    return {q * s0 / den, q * s1 * (1.0 - s0) / den, p * s0 * (1.0 - s1) / den, p * s1 / den};
}

JointStationary stationary_semantics(const SourceParams& src, const ChannelParams& ch) {
    const double p = src.p();
    const double q = src.q();
    const double s0 = ch.ps0();
    const double s1 = ch.ps1();
    const double den = (p + q) * (q * s0 + (1.0 - q) * s0 * s1 + p * s1 * (1.0 - s0));
    if (!(den > 0.0)) throw DegenerateModelError("semantics-aware policy with ps0 = ps1 = 0");
    return {q * s0 * (q + (1.0 - q) * s1) / den,
            p * q * s1 * (1.0 - s0) / den,
            p * q * s0 * (1.0 - s1) / den,
            p * s1 * (p + (1.0 - p) * s0) / den};
}

double sampling_rate_rs(const SourceParams& src, const RsPolicy& pol) noexcept {
    return (src.q() * pol.pa0() + src.p() * pol.pa1()) / (src.p() + src.q());
}

double sampling_rate_change_aware(const SourceParams& src) noexcept {
    return 2.0 * src.p() * src.q() / (src.p() + src.q());
}

double sampling_rate_semantics(const SourceParams& src, const ChannelParams& ch) {
    // Synced: sample on a source change. In error: sample unless the source
    // moves onto the stale estimate.
    const auto st = stationary_semantics(src, ch);
    const double p = src.p();
    const double q = src.q();
    return st.pi00() * p + st.pi11() * q + st.pi01() * (1.0 - p) + st.pi10() * (1.0 - q);
}

double sampling_rate_uniform(const UniformPolicy& pol) noexcept {
    return 1.0 / static_cast<double>(pol.d);
}

}  // namespace semtrack
