#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "semtrack/params.hpp"

namespace semtrack {

// Stationary law over (X, Xhat) pairs for an N-state source.
template <std::size_t N>
struct JointDistribution {
    std::array<std::array<double, N>, N> pi{};

    double operator()(std::size_t x, std::size_t xhat) const noexcept { return pi[x][xhat]; }

    double total() const noexcept {
        double s = 0.0;
        for (const auto& row : pi)
            for (double v : row) s += v;
        return s;
    }

    double error_mass() const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (i != j) s += pi[i][j];
        return s;
    }
};

// Two-state joint law with named accessors for the four entries.
struct JointStationary : JointDistribution<2> {
    JointStationary() = default;
    JointStationary(double p00, double p01, double p10, double p11) {
        pi = {{{p00, p01}, {p10, p11}}};
    }

    double pi00() const noexcept { return pi[0][0]; }
    double pi01() const noexcept { return pi[0][1]; }
    double pi10() const noexcept { return pi[1][0]; }
    double pi11() const noexcept { return pi[1][1]; }

    // Relabels states 0 <-> 1 in both coordinates.
    JointStationary mirrored() const { return {pi11(), pi10(), pi01(), pi00()}; }
};

using JointStationary3 = JointDistribution<3>;

struct JointState {
    int x;
    int xhat;
    bool operator==(const JointState&) const = default;
};

// Row-stochastic transition matrix over an ordered list of joint states.
class JointChain {
public:
    JointChain(std::vector<JointState> states, std::vector<double> row_major);

    std::size_t size() const noexcept { return states_.size(); }
    const std::vector<JointState>& states() const noexcept { return states_; }
    double at(std::size_t from, std::size_t to) const noexcept { return m_[from * size() + to]; }
    double at(JointState from, JointState to) const;
    std::size_t index_of(JointState s) const;

    // Free-form description used when a solve fails.
    std::string label;

private:
    std::vector<JointState> states_;
    std::vector<double> m_;
};

// States ordered (0,0), (0,1), (1,0), (1,1).
JointChain build_joint_chain_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol);
JointChain build_joint_chain_change_aware(const SourceParams& src, const ChannelParams& ch);
JointChain build_joint_chain_semantics(const SourceParams& src, const ChannelParams& ch);

// Nine states ordered (x, xhat) row-major.
JointChain build_joint_chain_rs3(const SourceParams3& src, const ChannelParams& ch, const RsPolicy& pol);

// Direct linear solve of pi P = pi with one balance row replaced by sum(pi) = 1.
std::vector<double> stationary_vector(const JointChain& chain);

JointStationary stationary_numeric(const JointChain& chain);
JointStationary3 stationary_numeric3(const JointChain& chain);

}  // namespace semtrack
