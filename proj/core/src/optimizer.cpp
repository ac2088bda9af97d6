#include "semtrack/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "semtrack/error.hpp"

namespace semtrack {
namespace {

constexpr double kTieTolerance = 1e-12;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Objective without exceptions; NaN when the policy never updates the receiver.
double cost_or_nan(double p, double q, double s0, double s1, double c01, double c10, double pa0, double pa1) {
    const double e0 = pa0 * s0;
    const double e1 = pa1 * s1;
    const double f = p * e1 * (1.0 - e0) + e0 * (q + (1.0 - q) * e1);
    if (!(f > 0.0)) return std::nan("");
    const double psi = c01 * e1 * (1.0 - e0) + c10 * e0 * (1.0 - e1);
    return p * q * psi / ((p + q) * f);
}

struct Roots {
    std::optional<double> delta;
    std::vector<double> all;
};

// Zeros of the derivative numerator a x^2 + b x + c.
Roots critical_points(const QuadraticRatio& r) {
    const double a = r.deriv_a();
    const double b = r.deriv_b();
    const double c = r.deriv_c();
    Roots out;
    if (a != 0.0) {
        const double d = b * b - 4.0 * a * c;
        out.delta = d;
        if (d >= 0.0) {
            const double sq = std::sqrt(d);
            out.all.push_back((-b + sq) / (2.0 * a));
            out.all.push_back((-b - sq) / (2.0 * a));
        }
    } else if (b != 0.0) {
        out.all.push_back(-c / b);
    }
    return out;
}

struct CaseSetup {
    bool first;          // true: free variable is pa0; false: pa1
    double lo, hi;
    QuadraticRatio ratio;
};

class Solver {
public:
    Solver(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double eta)
        : src_(src), ch_(ch), cw_(cw), eta_(eta), p_(src.p()), q_(src.q()), budget_(eta * (src.p() + src.q())) {}

    OptimizeResult solve() {
        const bool case1 = p_ * cw_.c10() >= q_ * cw_.c01();
        return case1 ? solve_case(true) : solve_case(false);
    }

private:
    Candidate make(double pa0, double pa1, OptimizeCase label) const {
        pa0 = clamp01(pa0);
        pa1 = clamp01(pa1);
        return {pa0, pa1, objective(src_, ch_, cw_, pa0, pa1), label};
    }

    // Point on the budget line for a given value of the free probability.
    Candidate on_line(bool first, double x, OptimizeCase label) const {
        if (first) return make(x, (budget_ - q_ * x) / p_, label);
        return make((budget_ - p_ * x) / q_, x, label);
    }

    OptimizeResult solve_case(bool first) {
        const auto interior = first ? OptimizeCase::Case1Interior : OptimizeCase::Case2Interior;
        const auto boundary = first ? OptimizeCase::Case1Boundary : OptimizeCase::Case2Boundary;
        const auto corner_label = first ? OptimizeCase::Case1Corner : OptimizeCase::Case2Corner;

        OptimizeResult res;
        auto& diag = res.diagnostics;
        const Candidate corner = first ? make(0.0, std::min(1.0, budget_ / p_), corner_label)
                                       : make(std::min(1.0, budget_ / q_), 0.0, corner_label);

        if (first) {
            const double num = p_ * cw_.c10() - q_ * cw_.c01();
            const double den = p_ * cw_.c10() + (1.0 - q_) * cw_.c01();
            if (ch_.ps1() < num / den) {
                // No pa1 in [0, 1] makes the cost decrease in pa0.
                auto c = corner;
                c.label = OptimizeCase::Case1Remark3;
                diag.candidates.push_back(c);
                return finish(res, c);
            }
        }

        // Free probability: pa0 in case 1, pa1 in case 2.
        const double own = first ? q_ : p_;
        const double other = first ? p_ : q_;
        diag.interval_lo = std::max(0.0, (budget_ - other) / own);
        diag.interval_hi = std::min(1.0, budget_ / own);
        diag.interval_empty = diag.interval_lo > diag.interval_hi;

        std::vector<Candidate> curve;
        if (diag.interval_empty) {
            // Budget exceeds what the square can spend: both probabilities at 1.
            curve.push_back(make(1.0, 1.0, boundary));
        } else {
            const auto ratio = first ? case1_ratio(src_, ch_, cw_, eta_) : case2_ratio(src_, ch_, cw_, eta_);
            const auto roots = critical_points(ratio);
            diag.delta = roots.delta;
            curve.push_back(on_line(first, diag.interval_lo, boundary));
            curve.push_back(on_line(first, diag.interval_hi, boundary));
            if (roots.delta && *roots.delta < 0.0) {
                // Derivative keeps the sign of its leading coefficient.
                const double x = ratio.deriv_a() > 0.0 ? diag.interval_lo : diag.interval_hi;
                diag.critical_points.push_back(x);
            }
            for (double x : roots.all) {
                if (x >= diag.interval_lo && x <= diag.interval_hi) {
                    diag.critical_points.push_back(x);
                    curve.push_back(on_line(first, x, interior));
                }
            }
        }

        Candidate best = curve.front();
        for (const auto& c : curve) {
            diag.candidates.push_back(c);
            if (better_candidate(c, best)) best = c;
        }

        const auto th = monotonicity_conditions(src_, ch_, cw_);
        diag.condition_holds = first ? best.pa1 >= th.cond1 : best.pa0 >= th.cond2;
        diag.candidates.push_back(corner);
        if (better_candidate(corner, best)) best = corner;
        return finish(res, best);
    }

    OptimizeResult finish(OptimizeResult& res, const Candidate& best) const {
        res.pa0_star = best.pa0;
        res.pa1_star = best.pa1;
        res.value = best.value;
        res.case_taken = best.label;
        return res;
    }

    const SourceParams& src_;
    const ChannelParams& ch_;
    const CostWeights& cw_;
    double eta_;
    double p_, q_, budget_;
};

void check_eta(double eta) {
    if (!std::isfinite(eta) || eta < 0.0) {
        std::ostringstream os;
        os << "sampling budget must be a finite nonnegative number, got " << eta;
        throw ValidationError("eta", os.str());
    }
    if (eta == 0.0)
        throw DegenerateModelError("infeasible tracking: eta = 0 forces pa0 = pa1 = 0 and the receiver never updates");
}

}  // namespace

std::string_view to_string(OptimizeCase c) noexcept {
    switch (c) {
        case OptimizeCase::Case1Interior: return "case1-interior";
        case OptimizeCase::Case1Boundary: return "case1-boundary";
        case OptimizeCase::Case1Remark3: return "case1-remark3";
        case OptimizeCase::Case1Corner: return "case1-corner";
        case OptimizeCase::Case2Interior: return "case2-interior";
        case OptimizeCase::Case2Boundary: return "case2-boundary";
        case OptimizeCase::Case2Corner: return "case2-corner";
        case OptimizeCase::GridSearch: return "grid-search";
    }
    return "unknown";
}

bool better_candidate(const Candidate& a, const Candidate& b) noexcept {
    if (std::isnan(a.value)) return false;
    if (std::isnan(b.value)) return true;
    const double tol = kTieTolerance * std::max(1.0, std::max(std::abs(a.value), std::abs(b.value)));
    if (a.value < b.value - tol) return true;
    if (a.value > b.value + tol) return false;
    const double sa = a.pa0 + a.pa1;
    const double sb = b.pa0 + b.pa1;
    if (sa != sb) return sa < sb;
    return a.pa0 < b.pa0;
}

double objective(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double pa0, double pa1) {
    const double v = cost_or_nan(src.p(), src.q(), ch.ps0(), ch.ps1(), cw.c01(), cw.c10(), pa0, pa1);
    if (std::isnan(v)) throw DegenerateModelError("objective undefined: pa0*ps0 = pa1*ps1 = 0");
    return v;
}

QuadraticRatio case1_ratio(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double eta) {
    using L = long double;
    const L p = src.p(), q = src.q(), s0 = ch.ps0(), s1 = ch.ps1(), c01 = cw.c01(), c10 = cw.c10(), e = eta;
    QuadraticRatio r;
    r.a1 = static_cast<double>(p * q * q * s0 * s1 * (c01 + c10));
    r.a2 = static_cast<double>(p * q *
                               (c10 * p * s0 * (1 - e * s1) - q * c01 * s1 - q * e * c10 * s0 * s1 -
                                e * (p + q) * c01 * s0 * s1));
    r.a3 = static_cast<double>(p * q * (p + q) * e * c01 * s1);
    r.b1 = static_cast<double>((p + q) * (p * q * s0 * s1 - q * (1 - q) * s0 * s1));
    r.b2 = static_cast<double>((p + q) * (p * q * s0 - p * q * s1 - e * p * (p + q) * s0 * s1 +
                                          e * (1 - q) * (p + q) * s0 * s1));
    r.b3 = static_cast<double>(e * p * s1 * (p + q) * (p + q));
    return r;
}

QuadraticRatio case2_ratio(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double eta) {
    using L = long double;
    const L p = src.p(), q = src.q(), s0 = ch.ps0(), s1 = ch.ps1(), c01 = cw.c01(), c10 = cw.c10(), e = eta;
    QuadraticRatio r;
    r.a1 = static_cast<double>(-p * p * q * s0 * s1 * (c01 + c10));
    r.a2 = static_cast<double>(p * q *
                               (c01 * e * p * s0 * s1 + c01 * e * q * s0 * s1 - c01 * q * s1 +
                                c10 * e * p * s0 * s1 + c10 * e * q * s0 * s1 + c10 * p * s0));
    r.a3 = static_cast<double>(-c10 * e * p * q * s0 * (p + q));
    r.b1 = static_cast<double>(-p * s0 * s1 * (p + q) * (p + q - 1));
    r.b2 = static_cast<double>((p + q) * (e * p * p * s0 * s1 + 2 * e * p * q * s0 * s1 - e * p * s0 * s1 +
                                          e * q * q * s0 * s1 - e * q * s0 * s1 + p * q * s0 - p * q * s1));
    r.b3 = static_cast<double>(-e * q * s0 * (p + q) * (p + q));
    return r;
}

MonotonicityThresholds monotonicity_conditions(const SourceParams& src, const ChannelParams& ch,
                                               const CostWeights& cw) {
    const double p = src.p();
    const double q = src.q();
    const double c01 = cw.c01();
    const double c10 = cw.c10();
    return {(p * c10 - q * c01) / (ch.ps1() * (p * c10 + (1.0 - q) * c01)),
            (q * c01 - p * c10) / (ch.ps0() * (q * c01 + (1.0 - p) * c10))};
}

OptimizeResult optimize_constrained(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw,
                                    double eta) {
    check_eta(eta);
    return Solver(src, ch, cw, eta).solve();
}

OptimizeResult optimize_unconstrained(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw) {
    const double slack = (src.p() + src.q()) / std::min(src.p(), src.q());
    return optimize_constrained(src, ch, cw, slack);
}

OptimizeResult minimize_pe_constrained(const SourceParams& src, const ChannelParams& ch, double eta) {
    return optimize_constrained(src, ch, CostWeights(1.0, 1.0), eta);
}

OptimizeResult grid_oracle(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double eta,
                           double step) {
    if (!(step > 0.0 && step <= 0.1)) throw ValidationError("grid_step", "must lie in (0, 0.1]");
    if (!std::isfinite(eta) || eta < 0.0) throw ValidationError("eta", "must be a finite nonnegative number");

    const double p = src.p();
    const double q = src.q();
    const double s0 = ch.ps0();
    const double s1 = ch.ps1();
    const double budget = eta * (p + q);
    const double slack = 1e-12 * std::max(1.0, budget);

    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9));
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(std::min(1.0, static_cast<double>(i) * step));

    OptimizeResult res;
    res.case_taken = OptimizeCase::GridSearch;
    Candidate best{0.0, 0.0, std::nan(""), OptimizeCase::GridSearch};
    auto consider = [&](double a0, double a1) {
        if (q * a0 + p * a1 > budget + slack) return;
        const Candidate c{a0, a1, cost_or_nan(p, q, s0, s1, cw.c01(), cw.c10(), a0, a1), OptimizeCase::GridSearch};
        if (better_candidate(c, best)) best = c;
    };
    for (double a0 : grid)
        for (double a1 : grid) consider(a0, a1);
    for (double g : grid) {
        const double a1 = (budget - q * g) / p;
        if (a1 >= 0.0 && a1 <= 1.0) consider(g, a1);
        const double a0 = (budget - p * g) / q;
        if (a0 >= 0.0 && a0 <= 1.0) consider(a0, g);
    }
    if (std::isnan(best.value)) throw DegenerateModelError("no feasible grid point updates the receiver");
    res.pa0_star = best.pa0;
    res.pa1_star = best.pa1;
    res.value = best.value;
    return res;
}

}  // namespace semtrack
