#include "pwquad/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pwquad {

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("Interval: endpoints must be finite");
    if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
}

JumpData::JumpData(double breakpoint_, std::vector<double> jumps_)
    : breakpoint(breakpoint_), jumps(std::move(jumps_)) {
    if (jumps.empty()) throw std::invalid_argument("JumpData: empty jump vector");
    for (double v : jumps)
        if (!std::isfinite(v)) throw std::invalid_argument("JumpData: jumps must be finite");
}

bool JumpData::all_zero() const {
    for (double v : jumps)
        if (v != 0.0) return false;
    return true;
}

JumpData jumps_from_analytic(const PiecewiseFunction& f, int l) {
    if (l < 0) throw std::invalid_argument("jumps_from_analytic: negative order");
    if (static_cast<int>(f.left_derivs.size()) < l || static_cast<int>(f.right_derivs.size()) < l)
        throw std::invalid_argument("jumps_from_analytic: derivative evaluators up to order " +
                                    std::to_string(l) + " required");
    const double xs = f.breakpoint;
    std::vector<double> jumps(l + 1);
    jumps[0] = f.right(xs) - f.left(xs);
    for (int k = 1; k <= l; ++k) jumps[k] = f.right_derivs[k - 1](xs) - f.left_derivs[k - 1](xs);
    return JumpData(xs, std::move(jumps));
}

GridSamples::GridSamples(Interval iv, int n_, std::vector<double> values_)
    : interval(iv), n(n_), values(std::move(values_)) {
    if (n < 1) throw std::invalid_argument("GridSamples: need at least one subinterval");
    if (static_cast<int>(values.size()) != n + 1)
        throw std::invalid_argument("GridSamples: expected " + std::to_string(n + 1) +
                                    " values, got " + std::to_string(values.size()));
}

GridSamples GridSamples::sample(const PiecewiseFunction& f, Interval iv, int n) {
    return sample([&f](double x) { return f(x); }, iv, n);
}

GridSamples GridSamples::sample(const RealFn& f, Interval iv, int n) {
    if (n < 1) throw std::invalid_argument("GridSamples: need at least one subinterval");
    const double h = (iv.b - iv.a) / n;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = f(iv.a + i * h);
    return GridSamples(iv, n, std::move(v));
}

}  // namespace pwquad
