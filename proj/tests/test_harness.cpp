#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "pwquad/correction.hpp"
#include "pwquad/functions.hpp"
#include "pwquad/harness.hpp"

using namespace pwquad;

namespace {
constexpr double kExact1 = 4.2375006339054656;   // integral of exp1 over [0, 1]
constexpr double kExact2 = 1.3977762795179405;   // integral of exp2 over [0, 1]
constexpr double kExact4 = 17.007663960636039;   // integral of exp4 over [-2, 1]
constexpr double kExact4Left = 16.552962101226153;  // left branch of exp4 up to 0.1
}  // namespace

TEST_CASE("convergence_order") {
    CHECK(*convergence_order(4.0, 1.0, 8, 16) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(*convergence_order(16.0, 1.0, 8, 16) == doctest::Approx(4.0).epsilon(1e-15));
    // a consecutive error pair from a fourth-order refinement ladder
    CHECK(*convergence_order(2.41635e-08, 1.50811e-09, 64, 128) ==
          doctest::Approx(4.002).epsilon(2e-4));
    CHECK(!convergence_order(0.0, 1e-9, 8, 16).has_value());
    CHECK(!convergence_order(1e-9, 0.0, 8, 16).has_value());
    CHECK_THROWS_AS(convergence_order(1.0, 1.0, 16, 8), std::invalid_argument);
}

TEST_CASE("exact_integral_oracle against frozen references") {
    CHECK(exact_integral_oracle("exp1", Interval(0, 1)) ==
          doctest::Approx(kExact1).epsilon(1e-15));
    CHECK(exact_integral_oracle("exp2", Interval(0, 1)) ==
          doctest::Approx(kExact2).epsilon(1e-15));
    // exp4's left branch has no closed form; the oracle integrates it adaptively
    CHECK(exact_integral_oracle("exp4", Interval(-2, 1)) ==
          doctest::Approx(kExact4).epsilon(5e-15));
    CHECK(exact_integral_oracle("exp4", Interval(-2, 0.1)) ==
          doctest::Approx(kExact4Left).epsilon(5e-15));
    // piecewise polynomial at x* = 0: 35/12 - 5/3 = 5/4
    CHECK(exact_integral_oracle("poly2", Interval(-1, 1)) ==
          doctest::Approx(1.25).epsilon(1e-15));
    CHECK(exact_integral_oracle("sinpi", Interval(0, 1)) ==
          doctest::Approx(0.6366197723675813).epsilon(1e-15));
    CHECK_THROWS_AS(exact_integral_oracle("unknown", Interval(0, 1)), std::invalid_argument);
}

TEST_CASE("refinement_study: corrected fourth-order ladder on the jump function") {
    StudyConfig cfg;
    cfg.function_name = "exp1";
    cfg.rule = RuleSpec::simpson38();
    cfg.levels = {16, 32, 64, 128, 256, 512};
    cfg.corrected = true;
    const RefinementReport report = refinement_study(cfg);
    REQUIRE(report.levels.size() == 6);
    CHECK(report.levels[0].n == 18);  // 16 rounded up to a multiple of 3
    CHECK(report.rule_name == "simpson38+corrected");
    const auto order = fitted_order(report, 100 * 2.220446049250313e-16 * kExact1);
    REQUIRE(order.has_value());
    CHECK(*order == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("refinement_study: corrected composite Gauss ladder") {
    StudyConfig cfg;
    cfg.function_name = "exp4";
    cfg.rule = RuleSpec::gauss_legendre(3);
    cfg.levels = {8, 16, 32, 64, 128};
    cfg.corrected = true;
    const RefinementReport report = refinement_study(cfg);
    const auto order = fitted_order(report, 100 * 2.220446049250313e-16 * kExact4);
    REQUIRE(order.has_value());
    CHECK(*order == doctest::Approx(6.0).epsilon(0.05));
}

TEST_CASE("refinement_study validates its configuration") {
    StudyConfig cfg;
    cfg.function_name = "exp1";
    cfg.rule = RuleSpec::trapezoid();
    cfg.levels = {16, 16};
    CHECK_THROWS_AS(refinement_study(cfg), std::invalid_argument);
    cfg.levels = {16, 32};
    cfg.function_name = "not_registered";
    CHECK_THROWS_AS(refinement_study(cfg), std::invalid_argument);
}

TEST_CASE("random_breakpoint_study reproduces the exactness contrast") {
    const MonteCarloResult mc2 = random_breakpoint_study(2, 1000, 7);
    CHECK(mc2.max_corrected <= 1e-13);
    CHECK(mc2.max_classical >= 0.1);
    REQUIRE(mc2.trials.size() == 1000);

    const MonteCarloResult mc5 = random_breakpoint_study(5, 1000, 7);
    CHECK(mc5.max_corrected <= 1e-10);
    for (const TrialRecord& rec : mc5.trials) CHECK(rec.err_corrected <= 1e-10);

    CHECK_THROWS_AS(random_breakpoint_study(6, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(random_breakpoint_study(2, 0, 0), std::invalid_argument);
}

TEST_CASE("random_breakpoint_study is deterministic in the seed") {
    const MonteCarloResult a = random_breakpoint_study(3, 200, 42);
    const MonteCarloResult b = random_breakpoint_study(3, 200, 42);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].x_star == b.trials[i].x_star);
        CHECK(a.trials[i].err_classical == b.trials[i].err_classical);
        CHECK(a.trials[i].err_corrected == b.trials[i].err_corrected);
    }
    const MonteCarloResult c = random_breakpoint_study(3, 200, 43);
    CHECK(c.trials[0].x_star != a.trials[0].x_star);
}

TEST_CASE("location_perturbation_study") {
    const std::vector<double> betas = {0.0, 1e-10, 1e-8, 1e-6, 1e-4};
    const auto points = location_perturbation_study("poly2", betas, 3);
    REQUIRE(points.size() == betas.size());

    // beta = 0 reproduces the unperturbed corrected error
    const NamedFunction& nf = builtin_function("poly2");
    const double exact = exact_integral_oracle("poly2", nf.domain);
    const double unperturbed = std::abs(
        exact - corrected_integrate_analytic(nf.fn, jumps_from_analytic(nf.fn, 3), nf.domain,
                                             RuleSpec::gauss_legendre(2), 1));
    CHECK(*points[0].error == unperturbed);

    // errors grow at most linearly: log-log slope near 1 and error <= c*beta
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        REQUIRE(points[i].error.has_value());
        const double lx = std::log(points[i].beta), ly = std::log(*points[i].error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
        CHECK(*points[i].error <= 20.0 * points[i].beta);
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.15));

    // a shift that leaves the interval is skipped
    const std::vector<double> big = {5.0};
    const auto skipped = location_perturbation_study("poly2", big, 3);
    CHECK(!skipped[0].error.has_value());
}

TEST_CASE("adaptive_gauss_integral") {
    CHECK(adaptive_gauss_integral([](double x) { return std::exp(x * x); }, Interval(-2, 0.1)) ==
          doctest::Approx(kExact4Left).epsilon(5e-15));
    CHECK(adaptive_gauss_integral([](double x) { return x * x; }, Interval(0, 1)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("stream_uniform is stable and well-distributed") {
    CHECK(stream_uniform(7, 0) == stream_uniform(7, 0));
    CHECK(stream_uniform(7, 0) != stream_uniform(7, 1));
    CHECK(stream_uniform(7, 0) != stream_uniform(8, 0));
    double mean = 0.0;
    for (int i = 0; i < 4096; ++i) {
        const double u = stream_uniform(99, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        mean += u;
    }
    mean /= 4096;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("format_g16 and CSV serialization") {
    CHECK(format_g16(0.5) == "0.5");
    CHECK(format_g16(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_g16(7.993605777301127e-15) == "7.993605777301127e-15");

    RefinementReport report;
    report.rule_name = "trap";
    report.function_name = "exp1";
    report.levels.push_back({16, 0.125, std::nullopt});
    report.levels.push_back({32, 0.03125, 2.0});
    std::ostringstream os;
    write_refinement_csv(os, report);
    CHECK(os.str() == "level_n,error,order\n16,0.125,\n32,0.03125,2\n");

    MonteCarloResult mc;
    mc.max_classical = 2.0;
    mc.max_corrected = 1e-15;
    mc.trials.push_back({0, 0.25, 2.0, 1e-15});
    std::ostringstream os2;
    write_trials_csv(os2, mc);
    CHECK(os2.str() ==
          "trial,x_star,err_classical,err_corrected\n0,0.25,2,1e-15\nmax,,2,1e-15\n");
}

TEST_CASE("refinement reports serialize identically across repeated runs") {
    StudyConfig cfg;
    cfg.function_name = "exp2";
    cfg.rule = RuleSpec::simpson13();
    cfg.levels = {16, 32, 64};
    cfg.corrected = true;
    cfg.jump_source = JumpSource::Estimated;
    cfg.correction_order = 3;
    cfg.stencil = 5;
    cfg.detect_deriv_order = 1;
    std::ostringstream a, b;
    write_refinement_csv(a, refinement_study(cfg));
    write_refinement_csv(b, refinement_study(cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str().find("16,") != std::string::npos);
}
