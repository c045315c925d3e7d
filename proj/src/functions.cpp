#include "pwquad/functions.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace pwquad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDerivOrders = 12;

// d^k/dx^k cos(w*(x - s)) = w^k cos(w*(x - s) + k*pi/2); same shape for sin.
RealFn shifted_cos_deriv(double w, double shift, int k) {
    return [w, shift, k](double x) {
        return std::pow(w, k) * std::cos(w * (x - shift) + k * kPi / 2.0);
    };
}

RealFn shifted_sin_deriv(double w, double shift, int k) {
    return [w, shift, k](double x) {
        return std::pow(w, k) * std::sin(w * (x - shift) + k * kPi / 2.0);
    };
}

// Derivatives of e^{x^2}: the k-th is q_k(x) e^{x^2} with q_0 = 1 and
// q_{k+1} = q_k' + 2x q_k.
std::vector<Polynomial> gaussian_exp_polys() {
    std::vector<Polynomial> qs;
    qs.emplace_back(std::vector<double>{1.0});
    for (int k = 0; k < kDerivOrders; ++k) {
        const Polynomial& q = qs.back();
        Polynomial dq = q.derivative();
        std::vector<double> next(q.coeffs().size() + 1, 0.0);
        for (std::size_t d = 0; d < q.coeffs().size(); ++d) next[d + 1] += 2.0 * q.coeffs()[d];
        for (std::size_t d = 0; d < dq.coeffs().size(); ++d) next[d] += dq.coeffs()[d];
        qs.emplace_back(std::move(next));
    }
    return qs;
}

NamedFunction make_exp1() {
    const double xs = kPi / 9.0;
    PiecewiseFunction f;
    f.left = [](double x) { return std::cos(kPi * x) + 10.0; };
    f.right = [](double x) { return std::sin(kPi * x); };
    f.breakpoint = xs;
    for (int k = 1; k <= kDerivOrders; ++k) {
        f.left_derivs.push_back(shifted_cos_deriv(kPi, 0.0, k));
        f.right_derivs.push_back(shifted_sin_deriv(kPi, 0.0, k));
    }
    f.max_smoothness = kDerivOrders + 1;
    NamedFunction nf{"exp1", Interval(0.0, 1.0), std::move(f),
                     RealFn([](double x) { return std::sin(kPi * x) / kPi + 10.0 * x; }),
                     RealFn([](double x) { return -std::cos(kPi * x) / kPi; })};
    return nf;
}

NamedFunction make_exp2() {
    const double xs = kPi / 9.0;
    PiecewiseFunction f;
    f.left = [xs](double x) { return std::cos(kPi * (x - xs)); };
    f.right = [xs](double x) { return 1.0 + std::sin(kPi * (x - xs)); };
    f.breakpoint = xs;
    for (int k = 1; k <= kDerivOrders; ++k) {
        f.left_derivs.push_back(shifted_cos_deriv(kPi, xs, k));
        f.right_derivs.push_back(shifted_sin_deriv(kPi, xs, k));
    }
    f.max_smoothness = kDerivOrders + 1;
    NamedFunction nf{"exp2", Interval(0.0, 1.0), std::move(f),
                     RealFn([xs](double x) { return std::sin(kPi * (x - xs)) / kPi; }),
                     RealFn([xs](double x) { return x - std::cos(kPi * (x - xs)) / kPi; })};
    return nf;
}

NamedFunction make_exp4() {
    PiecewiseFunction f;
    f.left = [](double x) { return std::exp(x * x); };
    f.right = [](double x) { return std::sin(x); };
    f.breakpoint = 0.1;
    const auto qs = std::make_shared<std::vector<Polynomial>>(gaussian_exp_polys());
    for (int k = 1; k <= kDerivOrders; ++k) {
        f.left_derivs.push_back(
            [qs, k](double x) { return (*qs)[k](x) * std::exp(x * x); });
        f.right_derivs.push_back(shifted_sin_deriv(1.0, 0.0, k));
    }
    f.max_smoothness = kDerivOrders + 1;
    NamedFunction nf{"exp4", Interval(-2.0, 1.0), std::move(f), std::nullopt,
                     RealFn([](double x) { return -std::cos(x); })};
    return nf;
}

NamedFunction make_sinpi() {
    PiecewiseFunction f;
    f.left = [](double x) { return std::sin(kPi * x); };
    f.right = [](double x) { return std::sin(kPi * x); };
    f.breakpoint = 0.5;
    for (int k = 1; k <= kDerivOrders; ++k) {
        f.left_derivs.push_back(shifted_sin_deriv(kPi, 0.0, k));
        f.right_derivs.push_back(shifted_sin_deriv(kPi, 0.0, k));
    }
    f.max_smoothness = kDerivOrders + 1;
    NamedFunction nf{"sinpi", Interval(0.0, 1.0), std::move(f),
                     RealFn([](double x) { return -std::cos(kPi * x) / kPi; }),
                     RealFn([](double x) { return -std::cos(kPi * x) / kPi; })};
    return nf;
}

NamedFunction make_poly(int n_points) {
    const PolynomialPair& pair = piecewise_polynomial_table(n_points);
    PiecewiseFunction f = make_piecewise_polynomial(pair.left, pair.right, 0.0);
    const Polynomial left = pair.left;
    const Polynomial right = pair.right;
    NamedFunction nf{"poly" + std::to_string(n_points), Interval(-1.0, 1.0), std::move(f),
                     RealFn([left](double x) { return left.integral(0.0, x); }),
                     RealFn([right](double x) { return right.integral(0.0, x); })};
    return nf;
}

const std::map<std::string, NamedFunction, std::less<>>& registry() {
    static const std::map<std::string, NamedFunction, std::less<>> reg = [] {
        std::map<std::string, NamedFunction, std::less<>> r;
        r.emplace("exp1", make_exp1());
        r.emplace("exp2", make_exp2());
        r.emplace("exp4", make_exp4());
        r.emplace("sinpi", make_sinpi());
        for (int n = 2; n <= 5; ++n) r.emplace("poly" + std::to_string(n), make_poly(n));
        return r;
    }();
    return reg;
}

}  // namespace

const NamedFunction& builtin_function(std::string_view name) {
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end())
        throw std::invalid_argument("unknown built-in function '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

const PolynomialPair& piecewise_polynomial_table(int n_points) {
    static const std::map<int, PolynomialPair> table = {
        {2, {Polynomial({1, -3, 2, 1}), Polynomial({-2, 1, -2, 2})}},
        {3, {Polynomial({1, 1, -1, 1, -3, 1}), Polynomial({3, -2, -1, 2, -1, 2})}},
        {4, {Polynomial({1, 1, -1, 1, -3, 1, 1, -1}), Polynomial({3, -2, -1, 2, -1, 2, -1, 2})}},
        {5,
         {Polynomial({1, 1, -1, 1, -3, 1, 1, -1, -2, 1}),
          Polynomial({3, -2, -1, 2, -1, 2, -1, 2, -1, 3})}},
    };
    auto it = table.find(n_points);
    if (it == table.end())
        throw std::invalid_argument("piecewise_polynomial_table: n_points must be 2..5");
    return it->second;
}

PiecewiseFunction make_piecewise_polynomial(const Polynomial& left, const Polynomial& right,
                                            double breakpoint) {
    PiecewiseFunction f;
    f.left = [left](double x) { return left(x); };
    f.right = [right](double x) { return right(x); };
    f.breakpoint = breakpoint;
    Polynomial dl = left, dr = right;
    for (int k = 1; k <= kDerivOrders; ++k) {
        dl = dl.derivative();
        dr = dr.derivative();
        f.left_derivs.push_back([dl](double x) { return dl(x); });
        f.right_derivs.push_back([dr](double x) { return dr(x); });
    }
    f.max_smoothness = kDerivOrders + 1;
    return f;
}

double LoadedPiecewise::exact_integral(double lo, double hi) const {
    const double bp = fn.breakpoint;
    if (hi <= bp) return left.integral(lo, hi);
    if (lo >= bp) return right.integral(lo, hi);
    return left.integral(lo, bp) + right.integral(bp, hi);
}

namespace {

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

std::vector<double> number_array(const nlohmann::json& j, const std::string& path,
                                 const std::string& field) {
    if (!j.contains(field))
        throw std::invalid_argument(path + ": missing field '" + field + "'");
    const auto& arr = j.at(field);
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument(path + ": field '" + field +
                                    "' must be a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& e : arr) {
        if (!e.is_number())
            throw std::invalid_argument(path + ": field '" + field +
                                        "' must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

LoadedPiecewise load_piecewise_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": parse error at line " +
                                    std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument(path + ": top level must be an object");

    const std::vector<double> left = number_array(j, path, "left");
    const std::vector<double> right = number_array(j, path, "right");
    if (!j.contains("breakpoint") || !j.at("breakpoint").is_number())
        throw std::invalid_argument(path + ": missing or non-numeric field 'breakpoint'");
    const double bp = j.at("breakpoint").get<double>();

    double a = -1.0, b = 1.0;
    if (j.contains("interval")) {
        const auto& iv = j.at("interval");
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
            throw std::invalid_argument(path + ": field 'interval' must be [a, b]");
        a = iv[0].get<double>();
        b = iv[1].get<double>();
        if (!(a < b)) throw std::invalid_argument(path + ": field 'interval' requires a < b");
    }
    if (!(a < bp && bp < b))
        throw std::invalid_argument(path + ": field 'breakpoint' must lie strictly inside [" +
                                    std::to_string(a) + ", " + std::to_string(b) + "]");

    Polynomial pl(left), pr(right);
    PiecewiseFunction f = make_piecewise_polynomial(pl, pr, bp);
    return LoadedPiecewise{std::move(f), Interval(a, b), std::move(pl), std::move(pr)};
}

}  // namespace pwquad
