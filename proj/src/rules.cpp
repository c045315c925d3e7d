#include "pwquad/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pwquad {

double trapezoid_composite(const GridSamples& s) {
    const auto& v = s.values;
    double acc = 0.0;
    for (int i = 1; i < s.n; ++i) acc += v[i];
    return s.spacing() * (0.5 * v[0] + acc + 0.5 * v[s.n]);
}

double simpson13_composite(const GridSamples& s) {
    if (s.n % 2 != 0 || s.n < 2)
        throw std::invalid_argument("simpson13_composite: n must be even, got " +
                                    std::to_string(s.n));
    const auto& v = s.values;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < s.n; i += 2) odd += v[i];
    for (int i = 2; i < s.n; i += 2) even += v[i];
    return s.spacing() / 3.0 * (v[0] + v[s.n] + 4.0 * odd + 2.0 * even);
}

double simpson38_composite(const GridSamples& s) {
    if (s.n % 3 != 0 || s.n < 3)
        throw std::invalid_argument("simpson38_composite: n must be divisible by 3, got " +
                                    std::to_string(s.n));
    const auto& v = s.values;
    double acc = v[0] + v[s.n];
    for (int i = 1; i < s.n; ++i) acc += (i % 3 == 0 ? 2.0 : 3.0) * v[i];
    return 3.0 * s.spacing() / 8.0 * acc;
}

std::pair<double, double> legendre_poly_and_deriv(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre_poly_and_deriv: negative degree");
    if (n == 0) return {1.0, 0.0};
    double pkm1 = 1.0, dkm1 = 0.0;
    double pk = x, dk = 1.0;
    for (int k = 1; k < n; ++k) {
        const double pk1 = ((2 * k + 1) * x * pk - k * pkm1) / (k + 1);
        const double dk1 = ((2 * k + 1) * (pk + x * dk) - k * dkm1) / (k + 1);
        pkm1 = pk;
        dkm1 = dk;
        pk = pk1;
        dk = dk1;
    }
    return {pk, dk};
}

QuadratureRule gauss_legendre_rule(int n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("gauss_legendre_rule: n must be in [1, 64], got " +
                                    std::to_string(n));
    std::vector<double> nodes(n);
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const auto [p, d] = legendre_poly_and_deriv(n, x);
            const double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw std::runtime_error("gauss_legendre_rule: Newton did not converge");
        nodes[i - 1] = x;
    }
    std::sort(nodes.begin(), nodes.end());
    // enforce exact symmetry about 0
    for (int i = 0; i < n / 2; ++i) {
        const double s = 0.5 * (nodes[i] - nodes[n - 1 - i]);
        nodes[i] = s;
        nodes[n - 1 - i] = -s;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;

    QuadratureRule rule;
    rule.nodes = nodes;
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto [p, d] = legendre_poly_and_deriv(n, nodes[i]);
        (void)p;
        rule.weights[i] = 2.0 / ((1.0 - nodes[i] * nodes[i]) * d * d);
    }
    rule.exactness_degree = 2 * n - 1;
    return rule;
}

double gauss_legendre_integrate(const RealFn& f, Interval iv, const QuadratureRule& rule) {
    const double mid = 0.5 * (iv.a + iv.b);
    const double half = 0.5 * (iv.b - iv.a);
    double acc = 0.0;
    for (int k = 0; k < rule.size(); ++k) acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return half * acc;
}

double gauss_legendre_composite(const RealFn& f, Interval iv, long cells,
                                const QuadratureRule& rule) {
    if (cells < 1) throw std::invalid_argument("gauss_legendre_composite: cells must be >= 1");
    const double h = (iv.b - iv.a) / static_cast<double>(cells);
    double acc = 0.0;
    for (long j = 0; j < cells; ++j) {
        const double lo = iv.a + j * h;
        acc += gauss_legendre_integrate(f, Interval(lo, lo + h), rule);
    }
    return acc;
}

RuleSpec RuleSpec::parse(std::string_view text) {
    if (text == "trap" || text == "trapezoid") return trapezoid();
    if (text == "simpson13") return simpson13();
    if (text == "simpson38") return simpson38();
    if (text.rfind("gl:", 0) == 0) {
        int m = 0;
        try {
            m = std::stoi(std::string(text.substr(3)));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown method '" + std::string(text) + "'");
        }
        if (m < 1 || m > 64)
            throw std::invalid_argument("gl:<m> requires 1 <= m <= 64, got " + std::string(text));
        return gauss_legendre(m);
    }
    throw std::invalid_argument("unknown method '" + std::string(text) +
                                "' (expected trap|simpson13|simpson38|gl:<m>)");
}

std::string RuleSpec::name() const {
    switch (kind) {
        case Kind::Trapezoid: return "trap";
        case Kind::Simpson13: return "simpson13";
        case Kind::Simpson38: return "simpson38";
        case Kind::GaussLegendre: return "gl:" + std::to_string(gl_points);
    }
    return "?";
}

int RuleSpec::exactness_degree() const {
    switch (kind) {
        case Kind::Trapezoid: return 1;
        case Kind::Simpson13: return 3;
        case Kind::Simpson38: return 3;
        case Kind::GaussLegendre: return 2 * gl_points - 1;
    }
    return 0;
}

long RuleSpec::valid_n(long requested) const {
    if (requested < 1) throw std::invalid_argument("valid_n: n must be positive");
    switch (kind) {
        case Kind::Trapezoid:
        case Kind::GaussLegendre: return requested;
        case Kind::Simpson13: return requested % 2 == 0 ? requested : requested + 1;
        case Kind::Simpson38: return requested % 3 == 0 ? requested : requested + (3 - requested % 3);
    }
    return requested;
}

double apply_grid_rule(const RuleSpec& spec, const GridSamples& s) {
    switch (spec.kind) {
        case RuleSpec::Kind::Trapezoid: return trapezoid_composite(s);
        case RuleSpec::Kind::Simpson13: return simpson13_composite(s);
        case RuleSpec::Kind::Simpson38: return simpson38_composite(s);
        case RuleSpec::Kind::GaussLegendre: break;
    }
    throw std::invalid_argument("apply_grid_rule: not a grid rule: " + spec.name());
}

}  // namespace pwquad
