#pragma once

#include <stdexcept>

#include "pwquad/types.hpp"

namespace pwquad {

/// Raised when sampled data shows no divided-difference spike strong enough
/// to call a discontinuity (confidence below threshold).
class NoDiscontinuityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DetectionResult {
    int cell_index = 0;     // flagged cell [x_cell, x_cell+1]
    double x_estimate = 0;  // lies in the closed flagged cell
    double confidence = 1;  // max / median divided-difference magnitude, >= 1
};

/// Locate an isolated discontinuity from uniform samples.
///
/// deriv_order selects what to look for: 0 flags a jump in the function
/// itself via first divided differences, 1 flags a corner via second
/// differences, and so on. The cell with the strongest (deriv_order+1)-th
/// divided difference is flagged; the sub-cell position is then refined by
/// intersecting one-sided interpolants built clear of the flagged zone.
/// When their difference has no root in the zone (a genuine function jump),
/// the right endpoint of the flagged cell is returned, which keeps every
/// node on the correct side of the estimate.
///
/// Requires n >= 2*(deriv_order + 3). Throws NoDiscontinuityError when the
/// spike-to-median ratio is below 3 (smooth data).
DetectionResult locate_discontinuity(const GridSamples& s, int deriv_order);

/// Estimate the jump vector at x_estimate from one-sided Newton interpolants
/// of degree stencil-1 through the nearest stencil nodes on each side. Nodes
/// exactly at x_estimate count as right-side. jumps[k] = p+^(k) - p-^(k) at
/// x_estimate, k = 0..l; requires stencil >= l + 1 and stencil nodes
/// strictly available on each side.
JumpData estimate_jumps(const GridSamples& s, double x_estimate, int l, int stencil);

}  // namespace pwquad
