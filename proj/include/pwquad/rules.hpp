#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "pwquad/types.hpp"

namespace pwquad {

/// Composite trapezoid rule over uniform samples: h*(v0/2 + v1 + ... + vn/2).
double trapezoid_composite(const GridSamples& s);

/// Composite Simpson 1/3 rule. Requires an even number of subintervals.
double simpson13_composite(const GridSamples& s);

/// Composite Simpson 3/8 rule. Requires n divisible by 3.
double simpson38_composite(const GridSamples& s);

/// (P_n(x), P_n'(x)) by the three-term recurrence, with the derivative
/// carried through the recurrence so the endpoints x = +-1 are safe.
std::pair<double, double> legendre_poly_and_deriv(int n, double x);

/// n-point Gauss-Legendre rule on [-1, 1], 1 <= n <= 64. Nodes are Legendre
/// roots found by Newton iteration from the Chebyshev guesses
/// cos(pi*(i - 1/4)/(n + 1/2)); weights are 2/((1 - x^2) P_n'(x)^2).
/// The node set is symmetrized about 0 so mirrored pairs match exactly.
QuadratureRule gauss_legendre_rule(int n);

/// Map the reference rule onto [a, b] and apply it to f.
double gauss_legendre_integrate(const RealFn& f, Interval iv, const QuadratureRule& rule);

/// Apply the rule on each cell of a uniform partition of iv and sum.
double gauss_legendre_composite(const RealFn& f, Interval iv, long cells, const QuadratureRule& rule);

/// Descriptor for the integration methods understood across the library
/// and the CLI: "trap", "simpson13", "simpson38", "gl:<m>".
struct RuleSpec {
    enum class Kind { Trapezoid, Simpson13, Simpson38, GaussLegendre };

    Kind kind = Kind::Trapezoid;
    int gl_points = 0;  // only for GaussLegendre

    static RuleSpec trapezoid() { return {Kind::Trapezoid, 0}; }
    static RuleSpec simpson13() { return {Kind::Simpson13, 0}; }
    static RuleSpec simpson38() { return {Kind::Simpson38, 0}; }
    static RuleSpec gauss_legendre(int m) { return {Kind::GaussLegendre, m}; }

    /// Parse a method name; throws std::invalid_argument on unknown input.
    static RuleSpec parse(std::string_view text);

    std::string name() const;

    /// Highest polynomial degree integrated exactly: 1, 3, 3, or 2m-1.
    int exactness_degree() const;

    /// Smallest n >= requested satisfying the rule's divisibility constraint.
    long valid_n(long requested) const;

    bool is_gauss() const { return kind == Kind::GaussLegendre; }
};

/// Apply the classical grid rule described by spec to uniform samples.
/// Only valid for the Newton-Cotes kinds; Gauss integration goes through
/// gauss_legendre_composite on a callable.
double apply_grid_rule(const RuleSpec& spec, const GridSamples& s);

}  // namespace pwquad
