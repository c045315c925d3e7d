#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "pwquad/detect.hpp"
#include "pwquad/functions.hpp"
#include "pwquad/harness.hpp"

using namespace pwquad;
using pwquad::testing::step_function;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("locate_discontinuity: step with the breakpoint on a node") {
    const GridSamples s = GridSamples::sample(step_function(0.5), Interval(0, 1), 8);
    const DetectionResult det = locate_discontinuity(s, 0);
    CHECK(det.cell_index == 3);  // the jump happens across [x_3, x_4]
    CHECK(det.x_estimate >= s.node(3));
    CHECK(det.x_estimate <= s.node(4));
    CHECK(det.x_estimate == 0.5);
    CHECK(det.confidence >= 3.0);
}

TEST_CASE("locate_discontinuity: corner function") {
    const NamedFunction& nf = builtin_function("exp2");
    const int n = 1 << 7;
    const GridSamples s = GridSamples::sample(nf.fn, nf.domain, n);
    const DetectionResult det = locate_discontinuity(s, 1);
    CHECK(std::abs(det.x_estimate - kPi / 9) <= s.spacing());
    CHECK(det.x_estimate >= s.node(det.cell_index));
    CHECK(det.x_estimate <= s.node(det.cell_index + 1));
}

TEST_CASE("locate_discontinuity: smooth data is rejected") {
    const GridSamples s =
        GridSamples::sample(RealFn([](double x) { return std::sin(kPi * x); }), Interval(0, 1), 64);
    CHECK_THROWS_AS(locate_discontinuity(s, 0), NoDiscontinuityError);
}

TEST_CASE("locate_discontinuity: precondition on the sample count") {
    const GridSamples s = GridSamples::sample(step_function(0.5), Interval(0, 1), 5);
    CHECK_THROWS_AS(locate_discontinuity(s, 0), std::invalid_argument);
}

TEST_CASE("detection consistency across the refinement ladder") {
    const struct {
        const char* name;
        int deriv_order;
    } cases[] = {{"exp1", 0}, {"exp2", 1}, {"exp4", 0}};
    for (const auto& c : cases) {
        const NamedFunction& nf = builtin_function(c.name);
        for (int i = 4; i <= 13; ++i) {
            const GridSamples s = GridSamples::sample(nf.fn, nf.domain, 1 << i);
            const DetectionResult det = locate_discontinuity(s, c.deriv_order);
            CHECK(std::abs(det.x_estimate - nf.fn.breakpoint) <= s.spacing());
        }
    }
}

TEST_CASE("estimate_jumps: piecewise-constant data") {
    const GridSamples s = GridSamples::sample(step_function(0.5), Interval(0, 1), 8);
    const JumpData j = estimate_jumps(s, 0.5, 0, 2);
    REQUIRE(j.jumps.size() == 1);
    CHECK(std::abs(j.jumps[0] - 1.0) < 1e-14);
}

TEST_CASE("estimate_jumps: piecewise-linear data") {
    PiecewiseFunction f;
    f.left = [](double x) { return 2 * x; };
    f.right = [](double x) { return 2 * x + 3; };
    f.breakpoint = 0.5;
    const GridSamples s = GridSamples::sample(f, Interval(0, 1), 12);
    const JumpData j = estimate_jumps(s, 0.5, 1, 3);
    REQUIRE(j.jumps.size() == 2);
    CHECK(std::abs(j.jumps[0] - 3.0) < 1e-12);
    CHECK(std::abs(j.jumps[1] - 0.0) < 1e-12);
}

TEST_CASE("estimate_jumps: corner function, stencil 5") {
    const NamedFunction& nf = builtin_function("exp2");
    const int n = 1 << 8;
    const GridSamples s = GridSamples::sample(nf.fn, nf.domain, n);
    const JumpData j = estimate_jumps(s, nf.fn.breakpoint, 3, 5);
    const double h = s.spacing();
    const double expected[] = {0.0, kPi, kPi * kPi, -kPi * kPi * kPi};
    for (int k = 0; k <= 3; ++k) {
        const double tol = 2000.0 * std::pow(h, 5 - k);  // one-sided accuracy O(h^(5-k))
        CHECK(std::abs(j.jumps[k] - expected[k]) < tol);
    }
}

TEST_CASE("estimate_jumps: argument validation") {
    const GridSamples s = GridSamples::sample(step_function(0.5), Interval(0, 1), 8);
    CHECK_THROWS_AS(estimate_jumps(s, 0.5, 2, 2), std::invalid_argument);   // stencil < l+1
    CHECK_THROWS_AS(estimate_jumps(s, 0.1, 0, 3), std::invalid_argument);   // too few left nodes
    CHECK_THROWS_AS(estimate_jumps(s, 0.95, 0, 3), std::invalid_argument);  // too few right nodes
}

TEST_CASE("estimate_jumps reproduces piecewise polynomials exactly") {
    std::uint64_t stream = 0;
    for (int rep = 0; rep < 8; ++rep) {
        const int deg = 1 + static_cast<int>(splitmix64(rep) % 4);
        std::vector<double> cl(deg + 1), cr(deg + 1);
        for (int k = 0; k <= deg; ++k) {
            cl[k] = -5.0 + 10.0 * stream_uniform(31, stream++);
            cr[k] = -5.0 + 10.0 * stream_uniform(31, stream++);
        }
        const Polynomial pl(cl), pr(cr);
        const double xstar = 0.4 + 0.2 * stream_uniform(32, rep);
        const PiecewiseFunction f = make_piecewise_polynomial(pl, pr, xstar);
        // moderate h: one-sided interpolation on clustered nodes loses
        // roughly h^(-deg) in conditioning
        const GridSamples s = GridSamples::sample(f, Interval(0, 1), 12);

        const int stencil = deg + 1;
        const int l = deg;
        const JumpData est = estimate_jumps(s, xstar, l, stencil);
        const JumpData exact = jumps_from_analytic(f, l);
        for (int k = 0; k <= l; ++k) CHECK(std::abs(est.jumps[k] - exact.jumps[k]) < 1e-10);
    }
}

TEST_CASE("jump estimates converge at one-sided interpolation rates") {
    // halving h should shrink |jumps[k] - exact| by about 2^(stencil-k);
    // require the mean factor to beat 2^(stencil-k-0.5)
    const NamedFunction& nf = builtin_function("exp2");
    const int stencil = 5;
    const int l = 3;
    const double expected[] = {0.0, kPi, kPi * kPi, -kPi * kPi * kPi};

    std::vector<std::array<double, 4>> errs;
    for (int i = 5; i <= 9; ++i) {
        const GridSamples s = GridSamples::sample(nf.fn, nf.domain, 1 << i);
        const JumpData j = estimate_jumps(s, nf.fn.breakpoint, l, stencil);
        std::array<double, 4> e{};
        for (int k = 0; k <= l; ++k) e[k] = std::abs(j.jumps[k] - expected[k]);
        errs.push_back(e);
    }
    for (int k = 0; k <= l; ++k) {
        double log_sum = 0.0;
        int count = 0;
        for (std::size_t i = 1; i < errs.size(); ++i) {
            if (errs[i][k] == 0.0 || errs[i - 1][k] == 0.0) continue;  // hit roundoff
            log_sum += std::log2(errs[i - 1][k] / errs[i][k]);
            ++count;
        }
        REQUIRE(count >= 2);
        const double mean_factor_log = log_sum / count;
        CHECK(mean_factor_log >= stencil - k - 0.5);
    }
}
