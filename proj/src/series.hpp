#ifndef BERGMAN_SERIES_HPP
#define BERGMAN_SERIES_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "weights.hpp"

namespace bergman {

using Complex = std::complex<double>;

// Truncated Taylor coefficients of an analytic function on the disk.
class PowerSeries {
 public:
  PowerSeries() : coeffs_(1, Complex{0.0}) {}
  explicit PowerSeries(std::vector<Complex> coeffs);
  static PowerSeries monomial(int k, Complex c = {1.0, 0.0});

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const {
    return k >= 0 && k <= degree() ? coeffs_[static_cast<size_t>(k)]
                                   : Complex{0.0};
  }

  // Horner evaluation of the truncated sum. Throws for |z| >= 1.
  Complex eval(Complex z) const;
  // True when the truncation error bound (max|c_k|)·|z|^{N+1}/(1-|z|) fits
  // the budget; eval past rho_max is allowed but should be flagged upstream.
  bool within_budget(Complex z, double budget = 1e-12) const;

  PowerSeries derivative() const;
  PowerSeries derivative(int order) const;
  PowerSeries dilate(double r) const;  // f(rz): coefficients c_k r^k
  PowerSeries multiplied(std::span<const double> multipliers) const;

  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(const PowerSeries& o) const;
  PowerSeries operator*(Complex c) const;

 private:
  std::vector<Complex> coeffs_;
};

// ⟨f, g⟩_ω = Σ_k f_k conj(g_k) ω_k  (monomial orthogonality under a radial
// weight). The table must cover max(deg f, deg g).
Complex inner_product_radial(const PowerSeries& f, const PowerSeries& g,
                             const MomentTable& moments);

// Series literals: poly:[c0,c1,...] | logfn@N | geom@N.
PowerSeries parse_series(const std::string& text);

double rho_max_default();

}  // namespace bergman

#endif
