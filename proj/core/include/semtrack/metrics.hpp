#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "semtrack/joint_chain.hpp"
#include "semtrack/params.hpp"

namespace semtrack {

// An RS configuration bundled with its stationary law. Built only through
// `make`, so the stationary law always belongs to the parameters.
class ConsecErrorSpec {
public:
    static ConsecErrorSpec make(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol);

    const SourceParams& source() const noexcept { return src_; }
    const ChannelParams& channel() const noexcept { return ch_; }
    const RsPolicy& policy() const noexcept { return pol_; }
    const JointStationary& stationary() const noexcept { return st_; }

    double e0() const noexcept { return pol_.pa0() * ch_.ps0(); }
    double e1() const noexcept { return pol_.pa1() * ch_.ps1(); }

    // Same system with states 0 and 1 relabeled.
    ConsecErrorSpec mirrored() const;

private:
    ConsecErrorSpec(SourceParams src, ChannelParams ch, RsPolicy pol, JointStationary st)
        : src_(src), ch_(ch), pol_(pol), st_(st) {}

    SourceParams src_;
    ChannelParams ch_;
    RsPolicy pol_;
    JointStationary st_;
};

// Fraction of slots with X != Xhat.
double reconstruction_error_rate(const JointStationary& st) noexcept;

// Explicit RS ratio pq[e1 + e0(1 - 2 e1)] / ((p+q) Phi).
double reconstruction_error_rate_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol);

// c01 pi01 + c10 pi10.
double actuation_error_cost(const JointStationary& st, const CostWeights& cw) noexcept;

// Explicit RS ratio pq Psi / ((p+q) Phi).
double actuation_error_cost_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol,
                               const CostWeights& cw);

// Pr[C_E = i], where C_E counts the current run of erroneous slots.
double consec_error_pmf(const ConsecErrorSpec& spec, std::uint64_t i);

// Pr[C_E(t+1) = i+1 | C_E(t) = i] as the ratio of consecutive PMF values.
// Throws DomainError when Pr[C_E = i] = 0.
double consec_transition_prob(const ConsecErrorSpec& spec, std::uint64_t i);

// Same quantity from its explicit expressions for i = 0 and i >= 1.
double consec_transition_prob_explicit(const ConsecErrorSpec& spec, std::uint64_t i);

// Mean of C_E. Throws ConvergenceError if a geometric ratio is not below 1.
double avg_consecutive_error(const ConsecErrorSpec& spec);

// Pr[C_E > n].
double violation_probability(const ConsecErrorSpec& spec, std::uint64_t n);

// Which error the importance-aware counter tracks.
enum class ImportantError {
    SourceOneEstimateZero,  // (X, Xhat) = (1, 0)
    SourceZeroEstimateOne,  // (X, Xhat) = (0, 1), by relabeling the states
};

// Pr[C_S = i], where C_S counts the current run of the tracked error.
double importance_pmf(const ConsecErrorSpec& spec, std::uint64_t i,
                      ImportantError which = ImportantError::SourceOneEstimateZero);

// Pr[C_S(t+1) = i+1 | C_S(t) = i].
double importance_transition(const ConsecErrorSpec& spec, std::uint64_t i,
                             ImportantError which = ImportantError::SourceOneEstimateZero);

// Mean of C_S. Defined only for pa0 != 0 and pa1 != 0; throws DomainError otherwise.
double avg_importance_consec(const ConsecErrorSpec& spec,
                             ImportantError which = ImportantError::SourceOneEstimateZero);

struct MetricReport {
    double pe = 0.0;
    double cost = 0.0;
    double cbar_e = 0.0;
    std::optional<double> cbar_s;  // empty when pa0 or pa1 is zero
    std::map<std::uint64_t, double> violation;
};

MetricReport evaluate_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol,
                         const CostWeights& cw, const std::vector<std::uint64_t>& violation_n = {});

}  // namespace semtrack
