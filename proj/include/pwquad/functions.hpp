#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwquad/polynomial.hpp"
#include "pwquad/types.hpp"

namespace pwquad {

/// A registered test function: the piecewise definition, its natural domain,
/// and per-branch antiderivatives when a closed form exists (branches
/// without one are integrated adaptively by the oracle).
struct NamedFunction {
    std::string name;
    Interval domain;
    PiecewiseFunction fn;
    std::optional<RealFn> left_antideriv;
    std::optional<RealFn> right_antideriv;
};

/// Look up a built-in function ("exp1", "exp2", "exp4", "poly2".."poly5",
/// "sinpi"); throws std::invalid_argument for unknown names.
const NamedFunction& builtin_function(std::string_view name);

std::vector<std::string> builtin_names();

/// Left/right pieces of the built-in piecewise polynomials keyed by the
/// Gauss point count they pair with (2..5; degrees 3, 5, 7, 9).
struct PolynomialPair {
    Polynomial left;
    Polynomial right;
};

const PolynomialPair& piecewise_polynomial_table(int n_points);

/// Build a PiecewiseFunction (with analytic derivatives) from two
/// polynomial pieces and a breakpoint.
PiecewiseFunction make_piecewise_polynomial(const Polynomial& left, const Polynomial& right,
                                            double breakpoint);

/// A piecewise polynomial loaded from a JSON specification file:
/// { "left": [c0, c1, ...], "right": [d0, d1, ...], "breakpoint": x,
///   "interval": [a, b] }   (interval optional, default [-1, 1];
/// coefficients constant-first).
struct LoadedPiecewise {
    PiecewiseFunction fn;
    Interval domain;
    Polynomial left;
    Polynomial right;

    double exact_integral(double lo, double hi) const;
};

/// Parse a piecewise-polynomial file; throws std::invalid_argument with a
/// line/field diagnostic on malformed input.
LoadedPiecewise load_piecewise_file(const std::string& path);

}  // namespace pwquad
