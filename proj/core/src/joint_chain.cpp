#include "semtrack/joint_chain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "semtrack/error.hpp"

namespace semtrack {
namespace {

constexpr double kRowTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-12;

std::vector<JointState> square_states(int n) {
    std::vector<JointState> out;
    for (int x = 0; x < n; ++x)
        for (int xh = 0; xh < n; ++xh) out.push_back({x, xh});
    return out;
}

// Builds an n*n-state chain from source dynamics and a sampling rule.
// `sample_prob(x, xhat, next_x)` is the probability that the new source state
// is sampled and transmitted; success then depends on the new state.
template <std::size_t N>
JointChain build_from_rule(const std::array<std::array<double, N>, N>& source,
                           const std::array<double, N>& ps,
                           const std::function<double(int, int, int)>& sample_prob) {
    const int n = static_cast<int>(N);
    const auto states = square_states(n);
    const std::size_t m = states.size();
    std::vector<double> mat(m * m, 0.0);
    auto idx = [n](int x, int xh) { return static_cast<std::size_t>(x * n + xh); };
    for (int x = 0; x < n; ++x) {
        for (int xh = 0; xh < n; ++xh) {
            const std::size_t from = idx(x, xh);
            for (int nx = 0; nx < n; ++nx) {
                const double move = source[x][nx];
                const double upd = sample_prob(x, xh, nx) * ps[nx];
                mat[from * m + idx(nx, nx)] += move * upd;
                mat[from * m + idx(nx, xh)] += move * (1.0 - upd);
            }
        }
    }
    return JointChain(states, std::move(mat));
}

std::array<std::array<double, 2>, 2> source_matrix(const SourceParams& src) {
    return {{{1.0 - src.p(), src.p()}, {src.q(), 1.0 - src.q()}}};
}

std::string describe(const SourceParams& src, const ChannelParams& ch) {
    std::ostringstream os;
    os << "p=" << src.p() << " q=" << src.q() << " ps0=" << ch.ps0() << " ps1=" << ch.ps1();
    return os.str();
}

}  // namespace

JointChain::JointChain(std::vector<JointState> states, std::vector<double> row_major)
    : states_(std::move(states)), m_(std::move(row_major)) {
    const std::size_t n = states_.size();
    if (m_.size() != n * n) throw ValidationError("matrix", "size does not match the state list");
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m_[i * n + j];
            if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("matrix", "entry outside [0, 1]");
            s += v;
        }
        if (std::abs(s - 1.0) > kRowTolerance) throw ValidationError("matrix", "row does not sum to 1");
    }
}

std::size_t JointChain::index_of(JointState s) const {
    const auto it = std::find(states_.begin(), states_.end(), s);
    if (it == states_.end()) throw ValidationError("state", "not part of this chain");
    return static_cast<std::size_t>(it - states_.begin());
}

double JointChain::at(JointState from, JointState to) const {
    return at(index_of(from), index_of(to));
}

JointChain build_joint_chain_rs(const SourceParams& src, const ChannelParams& ch, const RsPolicy& pol) {
    const double p = src.p();
    const double q = src.q();
    const double pa0 = pol.pa0();
    const double pa1 = pol.pa1();
    const double ps0 = ch.ps0();
    const double ps1 = ch.ps1();

    // A failed update leaves the estimate where it was.
    const double p0 = p * pa1 * (1.0 - ps1) + p * (1.0 - pa1);          // (0,0) -> (1,0)
    const double p1 = (1.0 - p) * pa0 * (1.0 - ps0) + (1.0 - p) * (1.0 - pa0);  // (0,1) -> (0,1)
    const double p2 = (1.0 - q) * pa1 * (1.0 - ps1) + (1.0 - q) * (1.0 - pa1);  // (1,0) -> (1,0)
    const double p3 = q * pa0 * (1.0 - ps0) + q * (1.0 - pa0);          // (1,1) -> (0,1)

    // Rows: (0,0), (0,1), (1,0), (1,1).
    std::vector<double> m = {
        1.0 - p,                  0.0,                    p0,  p * pa1 * ps1,
        (1.0 - p) * pa0 * ps0,    p1,                     0.0, p,
        q,                        0.0,                    p2,  (1.0 - q) * pa1 * ps1,
        q * pa0 * ps0,            p3,                     0.0, 1.0 - q,
    };
    JointChain chain(square_states(2), std::move(m));
    std::ostringstream os;
    os << "RS " << describe(src, ch) << " pa0=" << pa0 << " pa1=" << pa1;
    chain.label = os.str();
    return chain;
}

JointChain build_joint_chain_change_aware(const SourceParams& src, const ChannelParams& ch) {
    auto chain = build_from_rule<2>(source_matrix(src), {ch.ps0(), ch.ps1()},
                                    [](int x, int, int nx) { return nx != x ? 1.0 : 0.0; });
    chain.label = "change-aware " + describe(src, ch);
    return chain;
}

JointChain build_joint_chain_semantics(const SourceParams& src, const ChannelParams& ch) {
    auto chain = build_from_rule<2>(source_matrix(src), {ch.ps0(), ch.ps1()}, [](int x, int xh, int nx) {
        const bool synced = x == xh;
        return (synced ? nx != x : nx != xh) ? 1.0 : 0.0;
    });
    chain.label = "semantics-aware " + describe(src, ch);
    return chain;
}

JointChain build_joint_chain_rs3(const SourceParams3& src, const ChannelParams& ch, const RsPolicy& pol) {
    if (!ch.has_third()) throw ValidationError("ps2", "three-state chain needs ps2");
    if (!pol.has_third()) throw ValidationError("pa2", "three-state chain needs pa2");
    auto chain = build_from_rule<3>(src.transition_matrix(), {ch.ps0(), ch.ps1(), ch.ps2()},
                                    [&pol](int, int, int nx) { return pol.pa(nx); });
    std::ostringstream os;
    os << "RS3 p=" << src.p() << " q=" << src.q() << " ps=(" << ch.ps0() << "," << ch.ps1() << "," << ch.ps2()
       << ") pa=(" << pol.pa0() << "," << pol.pa1() << "," << pol.pa2() << ")";
    chain.label = os.str();
    return chain;
}

std::vector<double> stationary_vector(const JointChain& chain) {
    const auto n = static_cast<Eigen::Index>(chain.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = chain.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) - (i == j ? 1.0 : 0.0);
    a.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible())
        throw ReducibleChainError("joint chain has no unique stationary distribution (" + chain.label + ")");
    Eigen::VectorXd pi = lu.solve(b);

    double residual = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += pi(i) * chain.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        residual = std::max(residual, std::abs(s - pi(j)));
    }
    if (!(residual < kResidualTolerance))
        throw ReducibleChainError("stationary solve is ill-conditioned (" + chain.label + ")");

    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::max(0.0, pi(i));
    return out;
}

JointStationary stationary_numeric(const JointChain& chain) {
    if (chain.size() != 4) throw ValidationError("chain", "expected a 4-state joint chain");
    const auto v = stationary_vector(chain);
    JointStationary st;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto s = chain.states()[k];
        st.pi[static_cast<std::size_t>(s.x)][static_cast<std::size_t>(s.xhat)] = v[k];
    }
    return st;
}

JointStationary3 stationary_numeric3(const JointChain& chain) {
    if (chain.size() != 9) throw ValidationError("chain", "expected a 9-state joint chain");
    const auto v = stationary_vector(chain);
    JointStationary3 st;
    for (std::size_t k = 0; k < 9; ++k) {
        const auto s = chain.states()[k];
        st.pi[static_cast<std::size_t>(s.x)][static_cast<std::size_t>(s.xhat)] = v[k];
    }
    return st;
}

}  // namespace semtrack
