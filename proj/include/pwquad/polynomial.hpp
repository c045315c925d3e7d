#pragma once

#include <cstddef>
#include <vector>

namespace pwquad {

/// Dense polynomial with coefficients stored constant-first.
class Polynomial {
  public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double operator()(double x) const {
        double r = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
        return r;
    }

    Polynomial derivative() const;

    /// k-th derivative evaluated at x (k = 0 gives the value itself).
    double derivative_at(double x, int k) const;

    /// Exact integral over [lo, hi] by the power rule.
    double integral(double lo, double hi) const;

  private:
    std::vector<double> coeffs_;
};

}  // namespace pwquad
