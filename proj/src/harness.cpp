#include "pwquad/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "pwquad/correction.hpp"
#include "pwquad/detect.hpp"
#include "pwquad/functions.hpp"

namespace pwquad {

std::optional<double> convergence_order(double e_prev, double e_next, long n_prev, long n_next) {
    if (n_next <= n_prev) throw std::invalid_argument("convergence_order: requires n_next > n_prev");
    if (!(e_prev > 0.0) || !(e_next > 0.0)) return std::nullopt;
    return std::log(e_prev / e_next) / std::log(static_cast<double>(n_next) / n_prev);
}

namespace {

JumpData jumps_for_study(const StudyConfig& cfg, const NamedFunction& nf, const GridSamples& s,
                         int l) {
    if (cfg.jump_source == JumpSource::Analytic) return jumps_from_analytic(nf.fn, l);
    const int stencil = cfg.stencil > 0 ? cfg.stencil : l + 2;
    const DetectionResult det = locate_discontinuity(s, cfg.detect_deriv_order);
    return estimate_jumps(s, det.x_estimate, l, stencil);
}

}  // namespace

RefinementReport refinement_study(const StudyConfig& cfg) {
    const NamedFunction& nf = builtin_function(cfg.function_name);
    for (std::size_t i = 1; i < cfg.levels.size(); ++i)
        if (cfg.levels[i] <= cfg.levels[i - 1])
            throw std::invalid_argument("refinement_study: levels must be strictly increasing");

    const int l = cfg.correction_order >= 0 ? cfg.correction_order : cfg.rule.exactness_degree();
    const double exact = exact_integral_oracle(cfg.function_name, nf.domain);
    const RealFn eval = [&nf](double x) { return nf.fn(x); };

    RefinementReport report;
    report.function_name = cfg.function_name;
    report.rule_name = cfg.rule.name() + (cfg.corrected ? "+corrected" : "");

    long prev_n = 0;
    for (long requested : cfg.levels) {
        const long n = cfg.rule.valid_n(requested);
        if (n == prev_n) continue;  // rounding collapsed two levels

        double approx = 0.0;
        if (cfg.rule.is_gauss()) {
            if (cfg.corrected) {
                JumpData j = cfg.jump_source == JumpSource::Analytic
                                 ? jumps_from_analytic(nf.fn, l)
                                 : jumps_for_study(cfg, nf,
                                                   GridSamples::sample(nf.fn, nf.domain,
                                                                       static_cast<int>(n)),
                                                   l);
                approx = corrected_integrate_analytic(nf.fn, j, nf.domain, cfg.rule, n);
            } else {
                approx = gauss_legendre_composite(eval, nf.domain, n,
                                                  gauss_legendre_rule(cfg.rule.gl_points));
            }
        } else {
            const GridSamples s = GridSamples::sample(nf.fn, nf.domain, static_cast<int>(n));
            if (cfg.corrected) {
                const JumpData j = jumps_for_study(cfg, nf, s, l);
                approx = corrected_grid_rule(cfg.rule, s, j);
            } else {
                approx = apply_grid_rule(cfg.rule, s);
            }
        }

        RefinementLevel level;
        level.n = n;
        level.error = std::abs(exact - approx);
        if (!report.levels.empty()) {
            const RefinementLevel& p = report.levels.back();
            level.order = convergence_order(p.error, level.error, p.n, level.n);
        }
        report.levels.push_back(level);
        prev_n = n;
    }
    return report;
}

MonteCarloResult random_breakpoint_study(int n_points, int trials, std::uint64_t seed) {
    if (n_points < 2 || n_points > 5)
        throw std::invalid_argument("random_breakpoint_study: n_points must be in {2,3,4,5}");
    if (trials < 1) throw std::invalid_argument("random_breakpoint_study: trials must be >= 1");

    const PolynomialPair& pair = piecewise_polynomial_table(n_points);
    const QuadratureRule rule = gauss_legendre_rule(n_points);
    const RuleSpec spec = RuleSpec::gauss_legendre(n_points);
    const int l = 2 * n_points - 1;
    const Interval iv(-1.0, 1.0);

    MonteCarloResult result;
    result.trials.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        const double u = stream_uniform(seed, static_cast<std::uint64_t>(t));
        // keep x* away from the endpoints to avoid degenerate subintervals
        const double xstar = -1.0 + 1e-6 + (2.0 - 2e-6) * u;

        const double exact = pair.left.integral(-1.0, xstar) + pair.right.integral(xstar, 1.0);
        const PiecewiseFunction f = make_piecewise_polynomial(pair.left, pair.right, xstar);
        const double classical =
            gauss_legendre_integrate([&f](double x) { return f(x); }, iv, rule);
        const JumpData j = jumps_from_analytic(f, l);
        const double corrected = corrected_integrate_analytic(f, j, iv, spec, 1);

        TrialRecord rec;
        rec.trial = t;
        rec.x_star = xstar;
        rec.err_classical = std::abs(exact - classical);
        rec.err_corrected = std::abs(exact - corrected);
        result.max_classical = std::max(result.max_classical, rec.err_classical);
        result.max_corrected = std::max(result.max_corrected, rec.err_corrected);
        result.trials.push_back(rec);
    }
    return result;
}

std::vector<PerturbationPoint> location_perturbation_study(std::string_view f_name,
                                                           std::span<const double> betas, int l) {
    const NamedFunction& nf = builtin_function(f_name);
    const double exact = exact_integral_oracle(f_name, nf.domain);
    const int m = (l + 2) / 2;  // exactness 2m-1 >= l
    const RuleSpec spec = RuleSpec::gauss_legendre(m);

    std::vector<PerturbationPoint> out;
    out.reserve(betas.size());
    for (double beta : betas) {
        PerturbationPoint p;
        p.beta = beta;
        const double shifted = nf.fn.breakpoint + beta;
        if (nf.domain.strictly_contains(shifted)) {
            PiecewiseFunction f = nf.fn;
            f.breakpoint = shifted;
            const JumpData j = jumps_from_analytic(f, l);
            const double approx = corrected_integrate_analytic(f, j, nf.domain, spec, 1);
            p.error = std::abs(exact - approx);
        }
        out.push_back(p);
    }
    return out;
}

double adaptive_gauss_integral(const RealFn& f, Interval iv) {
    static const QuadratureRule rule = gauss_legendre_rule(20);
    double prev = gauss_legendre_composite(f, iv, 1, rule);
    for (int k = 1; k <= 24; ++k) {
        const double cur = gauss_legendre_composite(f, iv, 1L << k, rule);
        if (std::abs(cur - prev) <= 1e-14) return cur;
        prev = cur;
    }
    throw OracleError("adaptive_gauss_integral: no convergence after 24 refinement doublings");
}

double exact_integral_oracle(std::string_view f_name, Interval iv) {
    const NamedFunction& nf = builtin_function(f_name);
    if (iv.a < nf.domain.a || iv.b > nf.domain.b)
        throw std::invalid_argument("exact_integral_oracle: interval outside the function domain");

    const auto piece = [&](const RealFn& branch, const std::optional<RealFn>& antideriv, double lo,
                           double hi) {
        if (lo >= hi) return 0.0;
        if (antideriv) return (*antideriv)(hi) - (*antideriv)(lo);
        return adaptive_gauss_integral(branch, Interval(lo, hi));
    };

    const double bp = nf.fn.breakpoint;
    double total = 0.0;
    total += piece(nf.fn.left, nf.left_antideriv, iv.a, std::min(iv.b, bp));
    total += piece(nf.fn.right, nf.right_antideriv, std::max(iv.a, bp), iv.b);
    return total;
}

std::optional<double> fitted_order(const RefinementReport& report, double error_floor) {
    std::vector<double> lx, ly;
    for (const RefinementLevel& lvl : report.levels) {
        if (lvl.error > error_floor) {
            lx.push_back(std::log(static_cast<double>(lvl.n)));
            ly.push_back(std::log(lvl.error));
        }
    }
    const std::size_t m = lx.size();
    if (m < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return -(m * sxy - sx * sy) / denom;
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double stream_uniform(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t w = splitmix64(splitmix64(seed) + index);
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

std::string format_g16(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 16);
    return std::string(buf, res.ptr);
}

void write_refinement_csv(std::ostream& os, const RefinementReport& report) {
    os << "level_n,error,order\n";
    for (const RefinementLevel& lvl : report.levels) {
        os << lvl.n << ',' << format_g16(lvl.error) << ',';
        if (lvl.order) os << format_g16(*lvl.order);
        os << '\n';
    }
}

void write_trials_csv(std::ostream& os, const MonteCarloResult& result) {
    os << "trial,x_star,err_classical,err_corrected\n";
    for (const TrialRecord& rec : result.trials) {
        os << rec.trial << ',' << format_g16(rec.x_star) << ',' << format_g16(rec.err_classical)
           << ',' << format_g16(rec.err_corrected) << '\n';
    }
    os << "max,," << format_g16(result.max_classical) << ',' << format_g16(result.max_corrected)
       << '\n';
}

void write_table_csv(std::ostream& os, const RefinementReport& classical,
                     const RefinementReport& corrected) {
    if (classical.levels.size() != corrected.levels.size())
        throw std::invalid_argument("write_table_csv: reports have different level counts");
    os << "level_n,error_classical,order_classical,error_corrected,order_corrected\n";
    for (std::size_t i = 0; i < classical.levels.size(); ++i) {
        const RefinementLevel& c = classical.levels[i];
        const RefinementLevel& k = corrected.levels[i];
        os << c.n << ',' << format_g16(c.error) << ',';
        if (c.order) os << format_g16(*c.order);
        os << ',' << format_g16(k.error) << ',';
        if (k.order) os << format_g16(*k.order);
        os << '\n';
    }
}

}  // namespace pwquad
