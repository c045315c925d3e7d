#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pwquad {

using RealFn = std::function<double(double)>;

/// Closed interval [a, b] with a < b, both endpoints finite.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_);

    double length() const { return b - a; }
    bool contains(double x) const { return a <= x && x <= b; }
    bool strictly_contains(double x) const { return a < x && x < b; }
};

/// A function with one breakpoint x*: the left branch applies for x < x*,
/// the right branch for x >= x* (the breakpoint belongs to the right piece).
/// Both branches must be evaluable on the whole interval of use; the
/// correction machinery evaluates the left branch past the breakpoint.
///
/// left_derivs[k-1] / right_derivs[k-1] hold the k-th derivative of each
/// branch (k = 1..l_max) when analytic derivatives are available.
struct PiecewiseFunction {
    RealFn left;
    RealFn right;
    double breakpoint = 0.0;
    std::vector<RealFn> left_derivs;
    std::vector<RealFn> right_derivs;
    int max_smoothness = 0;  // continuous-derivative count assumed of each branch

    double operator()(double x) const { return x < breakpoint ? left(x) : right(x); }
};

/// Evaluate a piecewise function: left branch strictly left of the
/// breakpoint, right branch at and right of it.
inline double eval_piecewise(const PiecewiseFunction& f, double x) { return f(x); }

/// Breakpoint location together with the jump vector [f^(k)] = f+^(k)(x*) -
/// f-^(k)(x*) for k = 0..l. The location may be exact or estimated.
struct JumpData {
    double breakpoint = 0.0;
    std::vector<double> jumps;  // entry k holds [f^(k)]

    JumpData() = default;
    JumpData(double breakpoint_, std::vector<double> jumps_);

    int order() const { return static_cast<int>(jumps.size()) - 1; }
    bool all_zero() const;
};

/// Jump vector from analytic branch derivatives: jumps[k] = f+^(k)(x*) - f-^(k)(x*).
/// Requires derivative evaluators up to order l (none needed for l = 0).
JumpData jumps_from_analytic(const PiecewiseFunction& f, int l);

/// Uniform samples over an interval: n subintervals, n + 1 values.
/// Nodes are a + i*h and are computed on demand, never stored.
struct GridSamples {
    Interval interval;
    int n;
    std::vector<double> values;

    GridSamples(Interval iv, int n_, std::vector<double> values_);

    double spacing() const { return (interval.b - interval.a) / n; }
    double node(int i) const { return interval.a + i * spacing(); }

    static GridSamples sample(const PiecewiseFunction& f, Interval iv, int n);
    static GridSamples sample(const RealFn& f, Interval iv, int n);
};

/// Reference-interval quadrature rule: nodes in [-1, 1], positive weights,
/// and the highest polynomial degree integrated exactly.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness_degree = 0;

    int size() const { return static_cast<int>(nodes.size()); }
};

struct RefinementLevel {
    long n = 0;
    double error = 0.0;
    std::optional<double> order;  // absent on the first level and when undefined
};

/// Per-level (n, error, order) triples from a grid-refinement study.
struct RefinementReport {
    std::vector<RefinementLevel> levels;
    std::string rule_name;
    std::string function_name;
};

}  // namespace pwquad
