#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwquad/rules.hpp"
#include "pwquad/types.hpp"

namespace pwquad {

/// Raised when the adaptive reference integrator fails to converge.
class OracleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class JumpSource { Analytic, Estimated };

/// Configuration of one grid-refinement study.
struct StudyConfig {
    std::string function_name;
    RuleSpec rule;
    std::vector<long> levels;  // strictly increasing n values (pre-rounding)
    bool corrected = false;
    JumpSource jump_source = JumpSource::Analytic;
    std::uint64_t seed = 0;
    int correction_order = -1;  // -1: use the rule's exactness degree
    int stencil = -1;           // -1: correction order + 2 (estimated jumps)
    int detect_deriv_order = 0; // divided-difference order minus one
};

/// Empirical order from two consecutive refinement levels:
/// ln(e_prev/e_next) / ln(n_next/n_prev). Positive when the error decays.
/// Absent when either error is zero (or negative).
std::optional<double> convergence_order(double e_prev, double e_next, long n_prev, long n_next);

/// Run a refinement ladder: per level, build the grid (n rounded up to the
/// rule's divisibility constraint), integrate classically or corrected,
/// record |exact - approx| and per-level orders.
RefinementReport refinement_study(const StudyConfig& cfg);

struct TrialRecord {
    int trial = 0;
    double x_star = 0;
    double err_classical = 0;
    double err_corrected = 0;
};

struct MonteCarloResult {
    double max_classical = 0;
    double max_corrected = 0;
    std::vector<TrialRecord> trials;
};

/// Random-breakpoint exactness study: per trial draw x* uniformly inside
/// (-1, 1), integrate the degree-(2m-1) piecewise polynomial paired with the
/// m-point Gauss-Legendre rule with and without correction (exact analytic
/// jumps), and record absolute errors against the symbolic integral.
/// Trials are seeded independently from (seed, trial index).
MonteCarloResult random_breakpoint_study(int n_points, int trials, std::uint64_t seed);

struct PerturbationPoint {
    double beta = 0;
    std::optional<double> error;  // absent when x* + beta left the interval
};

/// Sensitivity of the corrected integral to a shifted breakpoint estimate:
/// for each beta, re-expand the jumps analytically at x* + beta and rerun
/// the corrected integration (single-cell Gauss rule of exactness >= l).
std::vector<PerturbationPoint> location_perturbation_study(std::string_view f_name,
                                                           std::span<const double> betas, int l);

/// Reference integral of a registered function over iv: closed-form branch
/// antiderivatives where available, otherwise adaptive Gauss refinement.
double exact_integral_oracle(std::string_view f_name, Interval iv);

/// Composite 20-point Gauss-Legendre with cell doubling until two successive
/// refinements agree within 1e-14; throws OracleError after 24 doublings.
double adaptive_gauss_integral(const RealFn& f, Interval iv);

/// Least-squares slope of ln(error) against ln(n) over the levels whose
/// error exceeds error_floor; absent when fewer than two levels qualify.
std::optional<double> fitted_order(const RefinementReport& report, double error_floor);

// --- deterministic RNG -----------------------------------------------------
// splitmix64 is the single generator used for every randomized study; trial
// streams derive from (seed, trial index) so parallel and serial runs agree.

std::uint64_t splitmix64(std::uint64_t z);

/// Uniform double in [0, 1) from the (seed, index) stream, via the top 53
/// bits of the mixed word. Identical on every platform.
double stream_uniform(std::uint64_t seed, std::uint64_t index);

// --- CSV -------------------------------------------------------------------

/// Format with 16 significant digits, locale-independent.
std::string format_g16(double v);

/// Columns: level_n,error,order (order blank on the first row).
void write_refinement_csv(std::ostream& os, const RefinementReport& report);

/// Columns: trial,x_star,err_classical,err_corrected; one trailing row
/// "max" carrying both maxima.
void write_trials_csv(std::ostream& os, const MonteCarloResult& result);

/// Side-by-side classical/corrected ladder:
/// level_n,error_classical,order_classical,error_corrected,order_corrected.
void write_table_csv(std::ostream& os, const RefinementReport& classical,
                     const RefinementReport& corrected);

}  // namespace pwquad
