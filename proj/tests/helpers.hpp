#pragma once

#include <cmath>

#include "pwquad/types.hpp"

namespace pwquad::testing {

// step: 0 left of the breakpoint, 1 at and right of it
inline PiecewiseFunction step_function(double breakpoint) {
    PiecewiseFunction f;
    f.left = [](double) { return 0.0; };
    f.right = [](double) { return 1.0; };
    f.breakpoint = breakpoint;
    for (int k = 0; k < 4; ++k) {
        f.left_derivs.push_back([](double) { return 0.0; });
        f.right_derivs.push_back([](double) { return 0.0; });
    }
    f.max_smoothness = 5;
    return f;
}

inline GridSamples sample_fn(double (*f)(double), Interval iv, int n) {
    return GridSamples::sample(RealFn(f), iv, n);
}

}  // namespace pwquad::testing
