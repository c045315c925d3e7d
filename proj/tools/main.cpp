#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pwquad/correction.hpp"
#include "pwquad/detect.hpp"
#include "pwquad/functions.hpp"
#include "pwquad/harness.hpp"
#include "pwquad/rules.hpp"

namespace {

using namespace pwquad;

std::vector<double> parse_jump_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("--jumps: '" + item + "' is not a number");
        }
        if (pos != item.size())
            throw std::invalid_argument("--jumps: '" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("--jumps: empty jump vector");
    return out;
}

std::vector<long> parse_level_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        throw std::invalid_argument("--levels: expected <i0>..<i1>, got '" + text + "'");
    int i0 = 0, i1 = 0;
    try {
        i0 = std::stoi(text.substr(0, sep));
        i1 = std::stoi(text.substr(sep + 2));
    } catch (const std::exception&) {
        throw std::invalid_argument("--levels: expected <i0>..<i1>, got '" + text + "'");
    }
    if (i0 < 1 || i1 < i0 || i1 > 24)
        throw std::invalid_argument("--levels: exponents must satisfy 1 <= i0 <= i1 <= 24");
    std::vector<long> ns;
    for (int i = i0; i <= i1; ++i) ns.push_back(1L << i);
    return ns;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    return out;
}

struct ResolvedFunction {
    PiecewiseFunction fn;
    Interval domain;
    std::string name;
};

ResolvedFunction resolve_function(const std::string& builtin, const std::string& file) {
    if (!builtin.empty() && !file.empty())
        throw std::invalid_argument("use either --builtin or --file, not both");
    if (!builtin.empty()) {
        const NamedFunction& nf = builtin_function(builtin);
        return {nf.fn, nf.domain, nf.name};
    }
    if (!file.empty()) {
        LoadedPiecewise lp = load_piecewise_file(file);
        return {std::move(lp.fn), lp.domain, file};
    }
    throw std::invalid_argument("one of --builtin or --file is required");
}

int cmd_rule(int gauss_n) {
    const QuadratureRule rule = gauss_legendre_rule(gauss_n);
    std::cout << "node,weight\n";
    for (int i = 0; i < rule.size(); ++i)
        std::cout << format_g16(rule.nodes[i]) << ',' << format_g16(rule.weights[i]) << '\n';
    return 0;
}

int cmd_integrate(const std::string& builtin, const std::string& file, const std::string& method,
                  long n, const std::string& jumps_mode, std::optional<double> xstar,
                  int deriv_order) {
    const ResolvedFunction rf = resolve_function(builtin, file);
    const RuleSpec spec = RuleSpec::parse(method);
    if (n < 1 || n > (1L << 26))
        throw std::invalid_argument("--n must be between 1 and 2^26");
    const long n_used = spec.valid_n(n);
    if (n_used != n)
        std::cerr << "note: n rounded up to " << n_used << " for " << spec.name() << "\n";

    double result = 0.0;
    if (jumps_mode.empty()) {
        if (spec.is_gauss()) {
            result = gauss_legendre_composite([&rf](double x) { return rf.fn(x); }, rf.domain,
                                              n_used, gauss_legendre_rule(spec.gl_points));
        } else {
            result = apply_grid_rule(
                spec, GridSamples::sample(rf.fn, rf.domain, static_cast<int>(n_used)));
        }
    } else if (jumps_mode == "analytic") {
        const JumpData j = jumps_from_analytic(rf.fn, spec.exactness_degree());
        result = corrected_integrate_analytic(rf.fn, j, rf.domain, spec, n_used);
    } else if (jumps_mode == "auto") {
        const GridSamples s = GridSamples::sample(rf.fn, rf.domain, static_cast<int>(n_used));
        const DetectionResult det = locate_discontinuity(s, deriv_order);
        const int l = spec.exactness_degree();
        const JumpData j = estimate_jumps(s, det.x_estimate, l, l + 2);
        std::cerr << "note: discontinuity estimated at " << format_g16(det.x_estimate)
                  << " (confidence " << format_g16(det.confidence) << ")\n";
        if (spec.is_gauss())
            result = corrected_integrate_analytic(rf.fn, j, rf.domain, spec, n_used);
        else
            result = corrected_grid_rule(spec, s, j);
    } else {
        if (!xstar) throw std::invalid_argument("--jumps <v0,v1,...> requires --xstar");
        if (!rf.domain.strictly_contains(*xstar))
            throw std::invalid_argument("--xstar must lie strictly inside the interval");
        const JumpData j(*xstar, parse_jump_vector(jumps_mode));
        result = corrected_integrate_analytic(rf.fn, j, rf.domain, spec, n_used);
    }
    std::cout << format_g16(result) << '\n';
    return 0;
}

int cmd_refine(const std::string& builtin, const std::string& method, const std::string& levels,
               bool corrected, const std::string& out_path) {
    StudyConfig cfg;
    cfg.function_name = builtin;
    cfg.rule = RuleSpec::parse(method);
    cfg.levels = parse_level_range(levels);
    cfg.corrected = corrected;
    const RefinementReport report = refinement_study(cfg);
    auto out = open_output(out_path);
    write_refinement_csv(out, report);
    std::cout << "wrote " << out_path << " (" << report.levels.size() << " levels, "
              << report.rule_name << " on " << report.function_name << ")\n";
    return 0;
}

StudyConfig experiment_config(const std::string& fname, RuleSpec rule, bool corrected,
                              std::vector<long> levels) {
    StudyConfig cfg;
    cfg.function_name = fname;
    cfg.rule = rule;
    cfg.levels = std::move(levels);
    cfg.corrected = corrected;
    return cfg;
}

std::vector<long> powers_of_two(int i0, int i1) {
    std::vector<long> ns;
    for (int i = i0; i <= i1; ++i) ns.push_back(1L << i);
    return ns;
}

int cmd_experiment(int which, std::optional<int> points, int trials, std::uint64_t seed,
                   const std::string& prefix) {
    switch (which) {
        case 1: {
            const struct {
                RuleSpec rule;
                const char* table;
            } runs[] = {{RuleSpec::trapezoid(), "conv"},
                        {RuleSpec::simpson13(), "s_1_3"},
                        {RuleSpec::simpson38(), "s3_8"}};
            for (const auto& run : runs) {
                auto classical =
                    refinement_study(experiment_config("exp1", run.rule, false, powers_of_two(4, 13)));
                auto corrected =
                    refinement_study(experiment_config("exp1", run.rule, true, powers_of_two(4, 13)));
                const std::string path = prefix + "_" + run.table + ".csv";
                auto out = open_output(path);
                write_table_csv(out, classical, corrected);
                std::cout << "wrote " << path << " (final corrected error "
                          << format_g16(corrected.levels.back().error) << ")\n";
            }
            return 0;
        }
        case 2: {
            auto classical = refinement_study(
                experiment_config("exp2", RuleSpec::simpson13(), false, powers_of_two(4, 13)));
            StudyConfig cfg =
                experiment_config("exp2", RuleSpec::simpson13(), true, powers_of_two(4, 13));
            cfg.jump_source = JumpSource::Estimated;
            cfg.correction_order = 3;
            cfg.stencil = 5;
            cfg.detect_deriv_order = 1;
            auto corrected = refinement_study(cfg);
            const std::string path = prefix + "_s_1_3_corner.csv";
            auto out = open_output(path);
            write_table_csv(out, classical, corrected);
            std::cout << "wrote " << path << " (final corrected error "
                      << format_g16(corrected.levels.back().error) << ")\n";
            return 0;
        }
        case 3: {
            std::vector<int> ns = points ? std::vector<int>{*points} : std::vector<int>{2, 3, 4, 5};
            const std::string summary_path = prefix + "_tab_exp1.csv";
            auto summary = open_output(summary_path);
            summary << "n,max_classical,max_corrected\n";
            for (int n : ns) {
                const MonteCarloResult mc = random_breakpoint_study(n, trials, seed);
                const std::string path = prefix + "_exp3_trials_n" + std::to_string(n) + ".csv";
                auto out = open_output(path);
                write_trials_csv(out, mc);
                summary << n << ',' << format_g16(mc.max_classical) << ','
                        << format_g16(mc.max_corrected) << '\n';
                std::cout << "wrote " << path << " (max classical "
                          << format_g16(mc.max_classical) << ", max corrected "
                          << format_g16(mc.max_corrected) << ")\n";
            }
            std::cout << "wrote " << summary_path << '\n';
            return 0;
        }
        case 4: {
            std::vector<int> ms = points ? std::vector<int>{*points} : std::vector<int>{2, 3, 4, 5};
            const std::string path = prefix + "_tabla_exp4.csv";
            auto out = open_output(path);
            out << "points,level_n,error_classical,order_classical,error_corrected,order_corrected\n";
            for (int m : ms) {
                const RuleSpec rule = RuleSpec::gauss_legendre(m);
                auto classical =
                    refinement_study(experiment_config("exp4", rule, false, powers_of_two(3, 9)));
                auto corrected =
                    refinement_study(experiment_config("exp4", rule, true, powers_of_two(3, 9)));
                for (std::size_t i = 0; i < classical.levels.size(); ++i) {
                    const auto& c = classical.levels[i];
                    const auto& k = corrected.levels[i];
                    out << m << ',' << c.n << ',' << format_g16(c.error) << ',';
                    if (c.order) out << format_g16(*c.order);
                    out << ',' << format_g16(k.error) << ',';
                    if (k.order) out << format_g16(*k.order);
                    out << '\n';
                }
                std::cout << "gl:" << m << " final corrected error "
                          << format_g16(corrected.levels.back().error) << '\n';
            }
            std::cout << "wrote " << path << '\n';
            return 0;
        }
        default: throw std::invalid_argument("experiment number must be 1..4");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadrature rules with jump corrections for piecewise-smooth integrands"};
    app.require_subcommand(1);

    // rule
    auto* rule_cmd = app.add_subcommand("rule", "print quadrature nodes and weights");
    int gauss_n = 0;
    rule_cmd->add_option("--gauss", gauss_n, "Gauss-Legendre point count")->required();

    // integrate
    auto* int_cmd = app.add_subcommand("integrate", "integrate a piecewise function");
    std::string i_builtin, i_file, i_method, i_jumps;
    long i_n = 0;
    double i_xstar = 0;
    int i_deriv_order = 0;
    int_cmd->add_option("--builtin", i_builtin, "built-in function name");
    int_cmd->add_option("--file", i_file, "piecewise-polynomial JSON file");
    int_cmd->add_option("--method", i_method, "trap|simpson13|simpson38|gl:<m>")->required();
    int_cmd->add_option("--n", i_n, "subintervals (grid rules) or cells (gl)")->required();
    int_cmd->add_option("--jumps", i_jumps, "auto | analytic | <v0,v1,...>");
    auto* xstar_opt = int_cmd->add_option("--xstar", i_xstar, "breakpoint for an explicit jump vector");
    int_cmd->add_option("--deriv-order", i_deriv_order,
                        "detector divided-difference order minus one (auto mode)");

    // refine
    auto* ref_cmd = app.add_subcommand("refine", "grid-refinement study, CSV output");
    std::string r_builtin, r_method, r_levels, r_out;
    bool r_corrected = false;
    ref_cmd->add_option("--builtin", r_builtin, "built-in function name")->required();
    ref_cmd->add_option("--method", r_method, "trap|simpson13|simpson38|gl:<m>")->required();
    ref_cmd->add_option("--levels", r_levels, "exponent range i0..i1, n = 2^i")->required();
    ref_cmd->add_flag("--corrected", r_corrected, "apply the jump correction (analytic jumps)");
    ref_cmd->add_option("--out", r_out, "output CSV path")->required();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run one of the four built-in experiments");
    int e_which = 0, e_trials = 1000;
    std::uint64_t e_seed = 0;
    std::optional<int> e_points;
    int e_points_raw = 0;
    std::string e_prefix;
    exp_cmd->add_option("which", e_which, "experiment number 1..4")->required();
    auto* points_opt = exp_cmd->add_option("--points", e_points_raw, "restrict to one Gauss point count");
    exp_cmd->add_option("--trials", e_trials, "Monte Carlo trials (experiment 3)");
    exp_cmd->add_option("--seed", e_seed, "random seed (experiment 3)");
    exp_cmd->add_option("--out", e_prefix, "output CSV prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rule_cmd->parsed()) return cmd_rule(gauss_n);
        if (int_cmd->parsed()) {
            std::optional<double> xs;
            if (xstar_opt->count() > 0) xs = i_xstar;
            return cmd_integrate(i_builtin, i_file, i_method, i_n, i_jumps, xs, i_deriv_order);
        }
        if (ref_cmd->parsed())
            return cmd_refine(r_builtin, r_method, r_levels, r_corrected, r_out);
        if (exp_cmd->parsed()) {
            if (points_opt->count() > 0) e_points = e_points_raw;
            return cmd_experiment(e_which, e_points, e_trials, e_seed, e_prefix);
        }
    } catch (const NoDiscontinuityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const OracleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
