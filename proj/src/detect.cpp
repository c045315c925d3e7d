#include "pwquad/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwquad {

namespace {

constexpr double kConfidenceThreshold = 3.0;
constexpr double kScaleRatioThreshold = 2.0;
constexpr double kScoreCap = 1e300;

// Newton divided-difference coefficients for the points (x[i], v[i]).
std::vector<double> newton_coefficients(const std::vector<double>& x,
                                        const std::vector<double>& v) {
    std::vector<double> c = v;
    const int n = static_cast<int>(v.size());
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
    return c;
}

// Expand a Newton-form interpolant into monomial coefficients in t = x - center.
std::vector<double> newton_to_monomial(const std::vector<double>& xn, const std::vector<double>& c,
                                       double center) {
    std::vector<double> tn(xn.size());
    for (std::size_t i = 0; i < xn.size(); ++i) tn[i] = xn[i] - center;
    std::vector<double> poly{c.back()};
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t d = 0; d < poly.size(); ++d) {
            next[d + 1] += poly[d];
            next[d] -= poly[d] * tn[k];
        }
        next[0] += c[k];
        poly = std::move(next);
    }
    return poly;  // constant-first, in powers of (x - center)
}

double eval_monomial(const std::vector<double>& coef, double t) {
    double r = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) r = r * t + coef[i];
    return r;
}

// Divided differences of order m over each window of m+1 consecutive nodes
// with the given index stride.
std::vector<double> strided_divided_differences(const GridSamples& s, int m, int stride) {
    const int count = s.n / stride - m + 1;
    std::vector<double> out(std::max(count, 0));
    std::vector<double> xs(m + 1), vs(m + 1);
    for (int i = 0; i < count; ++i) {
        for (int k = 0; k <= m; ++k) {
            xs[k] = s.node((i + k) * stride);
            vs[k] = s.values[(i + k) * stride];
        }
        out[i] = newton_coefficients(xs, vs).back();
    }
    return out;
}

struct OneSided {
    std::vector<double> coef;  // monomial coefficients in t = x - center
};

OneSided fit_one_sided(const GridSamples& s, int first, int last, double center) {
    std::vector<double> xs, vs;
    for (int i = first; i <= last; ++i) {
        xs.push_back(s.node(i));
        vs.push_back(s.values[i]);
    }
    return {newton_to_monomial(xs, newton_coefficients(xs, vs), center)};
}

}  // namespace

DetectionResult locate_discontinuity(const GridSamples& s, int deriv_order) {
    if (deriv_order < 0) throw std::invalid_argument("locate_discontinuity: negative deriv_order");
    const int m = deriv_order + 2;   // differences one order above the targeted jump
    const int sd = deriv_order + 4;  // one-sided refinement stencil size
    if (s.n < 2 * sd)
        throw std::invalid_argument("locate_discontinuity: need n >= " + std::to_string(2 * sd) +
                                    ", got " + std::to_string(s.n));

    // A genuine jump in the deriv_order-th derivative makes order-m divided
    // differences grow by 2^(m - deriv_order) when the spacing halves, while
    // smooth data (however steep) keeps them nearly unchanged. Score every
    // window by its fine/coarse magnitude ratio and localize at the maximum;
    // the spike-to-local-median ratio provides the confidence measure.
    const std::vector<double> fine = strided_divided_differences(s, m, 1);
    const std::vector<double> coarse = strided_divided_differences(s, m, 2);
    const int nf = static_cast<int>(fine.size());
    const int nc = static_cast<int>(coarse.size());

    std::vector<double> mags(nf);
    for (int i = 0; i < nf; ++i) mags[i] = std::abs(fine[i]);

    const int window = std::max(8, 3 * m + 2);
    std::vector<double> spike(nf, 0.0), ratio(nf, 0.0);
    std::vector<double> local;
    for (int i = 0; i < nf; ++i) {
        if (mags[i] == 0.0) continue;
        local.clear();
        for (int j = std::max(0, i - window); j <= std::min(nf - 1, i + window); ++j)
            if (std::abs(j - i) > m) local.push_back(mags[j]);
        double lmed = 0.0;
        if (!local.empty()) {
            std::nth_element(local.begin(), local.begin() + local.size() / 2, local.end());
            lmed = local[local.size() / 2];
        }
        spike[i] = std::min(mags[i] / std::max(lmed, 1e-300), kScoreCap);

        double coarse_mag = 0.0;  // strongest coarse window overlapping [i, i+m]
        for (int ic = std::max(0, (i - 2 * m) / 2 - 1); ic < nc; ++ic) {
            if (2 * ic > i + m) break;
            if (2 * ic + 2 * m < i) continue;
            coarse_mag = std::max(coarse_mag, std::abs(coarse[ic]));
        }
        const double denom = std::max({coarse_mag, 0.1 * lmed, 1e-300});
        ratio[i] = std::min(mags[i] / denom, kScoreCap);
    }

    const int istar = static_cast<int>(std::max_element(ratio.begin(), ratio.end()) - ratio.begin());
    const double confidence = std::max(spike[istar], 1.0);
    if (confidence < kConfidenceThreshold)
        throw NoDiscontinuityError("no clear discontinuity (confidence " +
                                   std::to_string(confidence) + " < 3)");
    if (ratio[istar] < kScaleRatioThreshold)
        throw NoDiscontinuityError(
            "no clear discontinuity (divided differences scale like smooth data, ratio " +
            std::to_string(ratio[istar]) + " < 2)");

    // The true breakpoint lies in (x_istar, x_{istar+m}]. Fit one-sided
    // interpolants entirely outside that window and look for a root of
    // their difference inside it.
    const int left_last = istar;
    const int left_first = std::max(0, istar - sd + 1);
    const int right_first = istar + m;
    const int right_last = std::min(s.n, istar + m + sd - 1);
    const double center = s.node(istar);
    const OneSided pl = fit_one_sided(s, left_first, left_last, center);
    const OneSided pr = fit_one_sided(s, right_first, right_last, center);
    const auto diff = [&](double t) { return eval_monomial(pr.coef, t) - eval_monomial(pl.coef, t); };

    const double ta = s.node(istar) - center;
    const double tb = s.node(istar + m) - center;
    const int scan = 16 * (m + 1);
    double root = 0.0;
    bool found = false;
    double prev_t = ta, prev_g = diff(ta);
    for (int k = 1; k <= scan && !found; ++k) {
        const double t = ta + (tb - ta) * k / scan;
        const double g = diff(t);
        if (prev_g == 0.0) {
            root = prev_t;
            found = true;
        } else if (prev_g * g < 0.0) {
            double lo = prev_t, hi = t;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (diff(lo) * diff(mid) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            root = 0.5 * (lo + hi);
            found = true;
        }
        prev_t = t;
        prev_g = g;
    }

    DetectionResult res;
    res.confidence = confidence;
    if (found) {
        double xe = std::clamp(center + root, s.node(istar), s.node(istar + m));
        int cell = static_cast<int>((xe - s.interval.a) / s.spacing());
        cell = std::clamp(cell, 0, s.n - 1);
        if (xe < s.node(cell) && cell > 0) --cell;
        if (xe > s.node(cell + 1) && cell < s.n - 1) ++cell;
        res.cell_index = cell;
        res.x_estimate = xe;
        return res;
    }

    // Pure function jump: the one-sided difference has no root nearby. Pick
    // the cell all of whose covering windows are contaminated (the weakest
    // covering magnitude is largest), then return its right endpoint: every
    // node at or past the estimate is then a genuine right-side sample.
    int best_j = istar;
    double best_score = -1.0;
    for (int j = istar; j < std::min(istar + m, nf); ++j) {
        double score = mags[j];
        for (int i = std::max(0, j - m + 1); i <= std::min(j, nf - 1); ++i)
            score = std::min(score, mags[i]);
        if (score > best_score) {
            best_score = score;
            best_j = j;
        }
    }
    res.cell_index = best_j;
    res.x_estimate = s.node(best_j + 1);
    return res;
}

JumpData estimate_jumps(const GridSamples& s, double x_estimate, int l, int stencil) {
    if (l < 0) throw std::invalid_argument("estimate_jumps: negative order");
    if (stencil < l + 1)
        throw std::invalid_argument("estimate_jumps: stencil must be >= l + 1");

    // nodes strictly left of the estimate vs at/right of it
    int first_right = 0;
    while (first_right <= s.n && s.node(first_right) < x_estimate) ++first_right;
    const int n_left = first_right;
    const int n_right = s.n + 1 - first_right;
    if (n_left < stencil || n_right < stencil)
        throw std::invalid_argument("estimate_jumps: need " + std::to_string(stencil) +
                                    " nodes on each side of the estimate (have " +
                                    std::to_string(n_left) + " left, " +
                                    std::to_string(n_right) + " right)");

    const OneSided pl = fit_one_sided(s, first_right - stencil, first_right - 1, x_estimate);
    const OneSided pr = fit_one_sided(s, first_right, first_right + stencil - 1, x_estimate);

    std::vector<double> jumps(l + 1);
    double fact = 1.0;
    for (int k = 0; k <= l; ++k) {
        if (k > 0) fact *= k;
        const double cl = k < static_cast<int>(pl.coef.size()) ? pl.coef[k] : 0.0;
        const double cr = k < static_cast<int>(pr.coef.size()) ? pr.coef[k] : 0.0;
        jumps[k] = fact * (cr - cl);
    }
    return JumpData(x_estimate, std::move(jumps));
}

}  // namespace pwquad
