#pragma once

#include <optional>

#include "pwquad/rules.hpp"
#include "pwquad/types.hpp"

namespace pwquad {

/// Taylor polynomial of the branch difference built from the jump vector,
/// T(x) = sum_k jumps[k]/k! (x - x*)^k, evaluated by Horner's scheme.
double jump_taylor_eval(const JumpData& j, double x);

/// Closed-form integral of the jump Taylor polynomial over [x*, b]:
/// sum_k jumps[k]/(k+1)! (b - x*)^(k+1). Requires b >= x*.
double correction_tail_integral(const JumpData& j, double b);

/// The regularized function: left branch for x < j.breakpoint, right branch
/// minus the jump Taylor polynomial at and right of it. Branching follows
/// j.breakpoint, so a perturbed location produces the correspondingly
/// perturbed regularization. With exact jumps of order l the result has l
/// continuous derivatives.
RealFn build_regularized(const PiecewiseFunction& f, const JumpData& j);

/// Jump data plus the interval it corrects over, with the tail integral
/// cached at construction.
struct CorrectionContext {
    JumpData jumps;
    Interval interval;
    double tail;

    CorrectionContext(JumpData j, Interval iv);
};

/// Integrate a piecewise function with a known jump vector: apply the chosen
/// composite rule to the regularized function over iv, then add the tail
/// integral. Grid rules sample n subintervals; gl:<m> uses n cells.
/// With an all-zero jump vector this reproduces the classical rule exactly.
double corrected_integrate_analytic(const PiecewiseFunction& f, const JumpData& j, Interval iv,
                                    const RuleSpec& method, long n);

/// Corrected composite rules on sampled data: subtract the jump Taylor
/// polynomial at every node >= j.breakpoint, apply each grid rule, add the
/// tail. Rules whose divisibility constraint n fails to satisfy are absent.
struct CorrectedGridResult {
    double trapezoid = 0.0;
    std::optional<double> simpson13;
    std::optional<double> simpson38;
};

CorrectedGridResult corrected_integrate_grid(const GridSamples& s, const JumpData& j);

/// Single-rule variant of corrected_integrate_grid; throws when n does not
/// satisfy the rule's divisibility constraint or the rule is gl:<m>.
double corrected_grid_rule(const RuleSpec& spec, const GridSamples& s, const JumpData& j);

/// Truncation-error bound for the jump-corrected split of the integral:
/// (sup_left + sup_right)/(l+1)! * (b - xstar)^(l+2), where the sups bound
/// the (l+1)-th branch derivatives over the whole interval.
double theorem1_error_bound(double sup_left, double sup_right, int l, double xstar, double b);

}  // namespace pwquad
