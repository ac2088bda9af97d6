#include "semtrack/metrics.hpp"

#include <cmath>
#include <string>

#include "semtrack/error.hpp"
#include "semtrack/stationary.hpp"

namespace semtrack {
namespace {

double ipow(double base, std::uint64_t n) {
    return std::pow(base, static_cast<double>(n));
}

// Geometric ratios of the error runs started from (0,0) and from (1,1).
double ratio_from_00(const ConsecErrorSpec& s) { return (1.0 - s.source().q()) * (1.0 - s.e1()); }
double ratio_from_11(const ConsecErrorSpec& s) { return (1.0 - s.source().p()) * (1.0 - s.e0()); }

const ConsecErrorSpec& pick(const ConsecErrorSpec& spec, ImportantError which, std::optional<ConsecErrorSpec>& slot) {
    if (which == ImportantError::SourceOneEstimateZero) return spec;
    slot.emplace(spec.mirrored());
    return *slot;
}

}  // namespace

ConsecErrorSpec ConsecErrorSpec::make(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol) {
    return ConsecErrorSpec(src, ch, pol, stationary_rs(src, ch, pol));
}

ConsecErrorSpec ConsecErrorSpec::mirrored() const {
    return make(src_.mirrored(), ch_.mirrored(), pol_.mirrored());
}

double reconstruction_error_rate(const JointStationary& st) noexcept {
    return st.pi01() + st.pi10();
}

double reconstruction_error_rate_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol) {
    const double p = src.p();
    const double q = src.q();
    const auto [e0, e1] = effective_rates(ch, pol);
    const double f = phi(src, ch, pol);
    if (!(f > 0.0)) throw DegenerateModelError("RS policy never updates the receiver");
    return p * q * (e1 + e0 * (1.0 - 2.0 * e1)) / ((p + q) * f);
}

double actuation_error_cost(const JointStationary& st, const CostWeights& cw) noexcept {
    return cw.c01() * st.pi01() + cw.c10() * st.pi10();
}

double actuation_error_cost_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol,
                               const CostWeights& cw) {
    const double p = src.p();
    const double q = src.q();
    const auto [e0, e1] = effective_rates(ch, pol);
    const double den = p * e1 * (1.0 - e0) + e0 * (q + (1.0 - q) * e1);
    if (!(den > 0.0)) throw DegenerateModelError("RS policy never updates the receiver");
    const double psi = cw.c01() * e1 * (1.0 - e0) + cw.c10() * e0 * (1.0 - e1);
    return p * q * psi / ((p + q) * den);
}

double consec_error_pmf(const ConsecErrorSpec& spec, std::uint64_t i) {
    const auto& st = spec.stationary();
    if (i == 0) return st.pi00() + st.pi11();
    const double p = spec.source().p();
    const double q = spec.source().q();
    return p * ipow(1.0 - q, i - 1) * ipow(1.0 - spec.e1(), i) * st.pi00() +
           q * ipow(1.0 - p, i - 1) * ipow(1.0 - spec.e0(), i) * st.pi11();
}

double consec_transition_prob(const ConsecErrorSpec& spec, std::uint64_t i) {
    const double den = consec_error_pmf(spec, i);
    if (!(den > 0.0))
        throw DomainError("Pr[C_E = " + std::to_string(i) + "] is zero, so the transition from it is undefined");
    return consec_error_pmf(spec, i + 1) / den;
}

double consec_transition_prob_explicit(const ConsecErrorSpec& spec, std::uint64_t i) {
    const auto& st = spec.stationary();
    const double p = spec.source().p();
    const double q = spec.source().q();
    const double u0 = 1.0 - spec.e0();
    const double u1 = 1.0 - spec.e1();
    double num = 0.0;
    double den = 0.0;
    if (i == 0) {
        num = p * u1 * st.pi00() + q * u0 * st.pi11();
        den = st.pi00() + st.pi11();
    } else {
        num = p * ipow(1.0 - q, i) * ipow(u1, i + 1) * st.pi00() + q * ipow(1.0 - p, i) * ipow(u0, i + 1) * st.pi11();
        den = p * ipow(1.0 - q, i - 1) * ipow(u1, i) * st.pi00() + q * ipow(1.0 - p, i - 1) * ipow(u0, i) * st.pi11();
    }
    if (!(den > 0.0))
        throw DomainError("Pr[C_E = " + std::to_string(i) + "] is zero, so the transition from it is undefined");
    return num / den;
}

double avg_consecutive_error(const ConsecErrorSpec& spec) {
    const double r0 = ratio_from_11(spec);
    const double r1 = ratio_from_00(spec);
    if (!(std::abs(r0) < 1.0)) throw ConvergenceError("|(1-p)(1-pa0*ps0)| < 1 does not hold");
    if (!(std::abs(r1) < 1.0)) throw ConvergenceError("|(1-q)(1-pa1*ps1)| < 1 does not hold");
    const auto& st = spec.stationary();
    const double p = spec.source().p();
    const double q = spec.source().q();
    const double e0 = spec.e0();
    const double e1 = spec.e1();
    const double d1 = q + (1.0 - q) * e1;
    const double d0 = p + (1.0 - p) * e0;
    return p * (1.0 - e1) * st.pi00() / (d1 * d1) + q * (1.0 - e0) * st.pi11() / (d0 * d0);
}

double violation_probability(const ConsecErrorSpec& spec, std::uint64_t n) {
    // Sum of the two geometric tails: runs entered from (0,0) sit in (1,0),
    // runs entered from (1,1) sit in (0,1).
    const auto& st = spec.stationary();
    return st.pi10() * ipow(ratio_from_00(spec), n) + st.pi01() * ipow(ratio_from_11(spec), n);
}

double importance_pmf(const ConsecErrorSpec& spec, std::uint64_t i, ImportantError which) {
    std::optional<ConsecErrorSpec> slot;
    const auto& s = pick(spec, which, slot);
    const auto& st = s.stationary();
    if (i == 0) return 1.0 - st.pi10();
    const double p = s.source().p();
    const double q = s.source().q();
    return p * ipow(1.0 - q, i - 1) * ipow(1.0 - s.e1(), i) * st.pi00();
}

double importance_transition(const ConsecErrorSpec& spec, std::uint64_t i, ImportantError which) {
    std::optional<ConsecErrorSpec> slot;
    const auto& s = pick(spec, which, slot);
    const double q = s.source().q();
    if (i >= 1) return (1.0 - q) * (1.0 - s.e1());
    const auto& st = s.stationary();
    return s.source().p() * (1.0 - s.e1()) * st.pi00() / (1.0 - st.pi10());
}

double avg_importance_consec(const ConsecErrorSpec& spec, ImportantError which) {
    if (spec.policy().pa0() == 0.0 || spec.policy().pa1() == 0.0)
        throw DomainError("average importance-aware consecutive error requires pa0 != 0 and pa1 != 0");
    std::optional<ConsecErrorSpec> slot;
    const auto& s = pick(spec, which, slot);
    const double p = s.source().p();
    const double q = s.source().q();
    const double e0 = s.e0();
    const double e1 = s.e1();
    const double f = phi(s.source(), s.channel(), s.policy());
    return p * q * e0 * (1.0 - e1) / ((p + q) * (q + (1.0 - q) * e1) * f);
}

MetricReport evaluate_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol,
                         const CostWeights& cw, const std::vector<std::uint64_t>& violation_n) {
    const auto spec = ConsecErrorSpec::make(src, ch, pol);
    MetricReport r;
    r.pe = reconstruction_error_rate(spec.stationary());
    r.cost = actuation_error_cost(spec.stationary(), cw);
    r.cbar_e = avg_consecutive_error(spec);
    if (pol.pa0() != 0.0 && pol.pa1() != 0.0) r.cbar_s = avg_importance_consec(spec);
    for (auto n : violation_n) r.violation[n] = violation_probability(spec, n);
    return r;
}

}  // namespace semtrack
