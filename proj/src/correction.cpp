#include "pwquad/correction.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pwquad {

double jump_taylor_eval(const JumpData& j, double x) {
    const int l = j.order();
    const double t = x - j.breakpoint;
    // Horner over coefficients jumps[k]/k!
    double fact = 1.0;
    std::vector<double> c(l + 1);
    for (int k = 0; k <= l; ++k) {
        if (k > 0) fact *= k;
        c[k] = j.jumps[k] / fact;
    }
    double r = 0.0;
    for (int k = l; k >= 0; --k) r = r * t + c[k];
    return r;
}

double correction_tail_integral(const JumpData& j, double b) {
    if (b < j.breakpoint)
        throw std::invalid_argument("correction_tail_integral: b must be >= breakpoint");
    const double d = b - j.breakpoint;
    double acc = 0.0;
    double fact = 1.0;  // (k+1)!
    double power = 1.0; // (b-x*)^(k+1)
    for (int k = 0; k <= j.order(); ++k) {
        fact *= (k + 1);
        power *= d;
        acc += j.jumps[k] / fact * power;
    }
    return acc;
}

RealFn build_regularized(const PiecewiseFunction& f, const JumpData& j) {
    return [f, j](double x) {
        if (x < j.breakpoint) return f.left(x);
        return f.right(x) - jump_taylor_eval(j, x);
    };
}

CorrectionContext::CorrectionContext(JumpData j, Interval iv)
    : jumps(std::move(j)), interval(iv), tail(0.0) {
    if (!interval.strictly_contains(jumps.breakpoint))
        throw std::invalid_argument("CorrectionContext: breakpoint must lie inside the interval");
    tail = correction_tail_integral(jumps, interval.b);
}

double corrected_integrate_analytic(const PiecewiseFunction& f, const JumpData& j, Interval iv,
                                    const RuleSpec& method, long n) {
    const CorrectionContext ctx(j, iv);
    const RealFn reg = build_regularized(f, j);
    double base;
    if (method.is_gauss()) {
        base = gauss_legendre_composite(reg, iv, n, gauss_legendre_rule(method.gl_points));
    } else {
        base = apply_grid_rule(method, GridSamples::sample(reg, iv, static_cast<int>(n)));
    }
    if (j.all_zero()) return base;  // exact reduction to the classical rule
    return base + ctx.tail;
}

namespace {

std::vector<double> regularize_values(const GridSamples& s, const JumpData& j) {
    std::vector<double> v = s.values;
    for (int i = 0; i <= s.n; ++i) {
        if (s.node(i) >= j.breakpoint) v[i] -= jump_taylor_eval(j, s.node(i));
    }
    return v;
}

}  // namespace

CorrectedGridResult corrected_integrate_grid(const GridSamples& s, const JumpData& j) {
    if (!s.interval.strictly_contains(j.breakpoint))
        throw std::invalid_argument("corrected_integrate_grid: breakpoint outside the interval");
    const GridSamples reg(s.interval, s.n, regularize_values(s, j));
    const double tail = j.all_zero() ? 0.0 : correction_tail_integral(j, s.interval.b);
    CorrectedGridResult out;
    out.trapezoid = trapezoid_composite(reg);
    if (!j.all_zero()) out.trapezoid += tail;
    if (s.n % 2 == 0) {
        double v = simpson13_composite(reg);
        out.simpson13 = j.all_zero() ? v : v + tail;
    }
    if (s.n % 3 == 0) {
        double v = simpson38_composite(reg);
        out.simpson38 = j.all_zero() ? v : v + tail;
    }
    return out;
}

double corrected_grid_rule(const RuleSpec& spec, const GridSamples& s, const JumpData& j) {
    if (!s.interval.strictly_contains(j.breakpoint))
        throw std::invalid_argument("corrected_grid_rule: breakpoint outside the interval");
    const GridSamples reg(s.interval, s.n, regularize_values(s, j));
    const double base = apply_grid_rule(spec, reg);
    if (j.all_zero()) return base;
    return base + correction_tail_integral(j, s.interval.b);
}

double theorem1_error_bound(double sup_left, double sup_right, int l, double xstar, double b) {
    if (l < 0) throw std::invalid_argument("theorem1_error_bound: negative order");
    if (sup_left < 0 || sup_right < 0)
        throw std::invalid_argument("theorem1_error_bound: sup norms must be nonnegative");
    double fact = 1.0;
    for (int k = 2; k <= l + 1; ++k) fact *= k;
    return (sup_left + sup_right) / fact * std::pow(b - xstar, l + 2);
}

}  // namespace pwquad
