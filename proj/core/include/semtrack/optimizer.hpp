#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "semtrack/params.hpp"

namespace semtrack {

// Cost-minimizing RS policy under the sampling budget q pa0 + p pa1 <= eta (p + q).
//
// Case 1 (p c10 >= q c01): the cost falls with pa1 for every pa0, so the
// optimum sits on the budget line or on pa1 = 1. Substituting pa1 = (eta (p+q) - q pa0) / p turns
// the cost into a ratio of quadratics F/G in pa0. Case 2 mirrors this in pa1.

struct QuadraticRatio {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;  // numerator a1 x^2 + a2 x + a3
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;  // denominator b1 x^2 + b2 x + b3

    double numerator(double x) const noexcept { return (a1 * x + a2) * x + a3; }
    double denominator(double x) const noexcept { return (b1 * x + b2) * x + b3; }
    double operator()(double x) const noexcept { return numerator(x) / denominator(x); }

    // Coefficients of the derivative's numerator, a x^2 + b x + c.
    double deriv_a() const noexcept { return a1 * b2 - a2 * b1; }
    double deriv_b() const noexcept { return 2.0 * (a1 * b3 - a3 * b1); }
    double deriv_c() const noexcept { return a2 * b3 - a3 * b2; }
};

// Case 1 ratio in pa0 and case 2 ratio in pa1.
QuadraticRatio case1_ratio(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double eta);
QuadraticRatio case2_ratio(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double eta);

enum class OptimizeCase {
    Case1Interior,
    Case1Boundary,
    Case1Remark3,
    Case1Corner,
    Case2Interior,
    Case2Boundary,
    Case2Corner,
    GridSearch,
};

std::string_view to_string(OptimizeCase c) noexcept;

struct Candidate {
    double pa0;
    double pa1;
    double value;
    OptimizeCase label;
};

struct OptimizeDiagnostics {
    double interval_lo = 0.0;  // feasible range of the free probability
    double interval_hi = 0.0;
    bool interval_empty = false;
    std::optional<double> delta;         // discriminant of the critical-point quadratic
    std::vector<double> critical_points;  // roots inside the interval
    bool condition_holds = false;         // monotonicity condition at the curve optimum
    std::vector<Candidate> candidates;
};

struct OptimizeResult {
    double pa0_star = 0.0;
    double pa1_star = 0.0;
    double value = 0.0;
    OptimizeCase case_taken = OptimizeCase::Case1Boundary;
    OptimizeDiagnostics diagnostics;
};

// pq Psi / ((p+q) Phi), the cost written through its numerator and denominator.
double objective(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double pa0, double pa1);

struct MonotonicityThresholds {
    double cond1;  // cost decreases in pa0 whenever pa1 >= cond1
    double cond2;  // cost decreases in pa1 whenever pa0 >= cond2
};

MonotonicityThresholds monotonicity_conditions(const SourceParams& src, const ChannelParams& ch,
                                               const CostWeights& cw);

// Throws ValidationError for eta < 0 and DegenerateModelError for eta = 0.
OptimizeResult optimize_constrained(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw,
                                    double eta);

// Budget never binds.
OptimizeResult optimize_unconstrained(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw);

// Minimizes P_E, i.e. unit costs.
OptimizeResult minimize_pe_constrained(const SourceParams& src, const ChannelParams& ch, double eta);

// Exhaustive scan of a step grid plus the budget line at the same resolution.
OptimizeResult grid_oracle(const SourceParams& src, const ChannelParams& ch, const CostWeights& cw, double eta,
                           double step);

// True when a is preferred over b: lower value, then lower pa0 + pa1, then lower pa0.
bool better_candidate(const Candidate& a, const Candidate& b) noexcept;

}  // namespace semtrack
