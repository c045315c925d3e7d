#include "pwquad/polynomial.hpp"

#include <stdexcept>
#include <utility>

namespace pwquad {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("Polynomial: empty coefficient list");
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() == 1) return Polynomial({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

double Polynomial::derivative_at(double x, int k) const {
    if (k < 0) throw std::invalid_argument("Polynomial: negative derivative order");
    Polynomial p = *this;
    for (int i = 0; i < k; ++i) p = p.derivative();
    return p(x);
}

double Polynomial::integral(double lo, double hi) const {
    auto antideriv = [this](double x) {
        double r = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            r = r * x + coeffs_[i] / static_cast<double>(i + 1);
        return r * x;
    };
    return antideriv(hi) - antideriv(lo);
}

}  // namespace pwquad
